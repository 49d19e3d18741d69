"""Canonical text grammar for field elements, polynomials and tower elements.

The grammar is the usual infix one::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary | unary)*     juxtaposition multiplies
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') exponent)?
    atom   := integer | identifier | '(' expr ')'

Expressions are evaluated directly with Python operators on the values bound
to the identifiers, so the same parser serves every ring in the package.
"""

import logging
import re

from misctypes import ParseError

log = logging.getLogger(__name__)

TOKEN_RE = re.compile(r'\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)'
                      r'|(\*\*|[-+*/^()]))')


def tokenize(text):
    """Split text into (kind, value) tokens."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f'Unexpected character at {pos}: {text!r}')
        number, ident, op = m.groups()
        if number is not None:
            tokens.append(('num', int(number)))
        elif ident is not None:
            tokens.append(('id', ident))
        else:
            tokens.append(('op', '^' if op == '**' else op))
        pos = m.end()
    return tokens


class _Parser():
    """Recursive descent evaluator."""
    def __init__(self, text, symbols, number):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.symbols = symbols
        self.number = number

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ('op', op):
            raise ParseError(f'Expected {op!r} in {self.text!r}')

    def parse(self):
        if not self.tokens:
            raise ParseError('Empty expression')
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f'Trailing input in {self.text!r}')
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (('op', '+'), ('op', '-')):
            _, op = self.take()
            rhs = self.term()
            value = value + rhs if op == '+' else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            kind, tok = self.peek()
            if (kind, tok) in (('op', '*'), ('op', '/')):
                self.take()
                rhs = self.unary()
                value = value * rhs if tok == '*' else value / rhs
            elif kind in ('num', 'id') or (kind, tok) == ('op', '('):
                value = value * self.unary()
            else:
                return value

    def unary(self):
        kind, tok = self.peek()
        if (kind, tok) == ('op', '-'):
            self.take()
            return -self.unary()
        if (kind, tok) == ('op', '+'):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ('op', '^'):
            self.take()
            return base ** self.exponent()
        return base

    def exponent(self):
        sign = 1
        kind, tok = self.take()
        if (kind, tok) == ('op', '('):
            value = self.exponent()
            self.expect(')')
            return value
        if (kind, tok) == ('op', '-'):
            sign = -1
            kind, tok = self.take()
        if kind != 'num':
            raise ParseError(f'Exponent must be an integer in {self.text!r}')
        return sign * tok

    def atom(self):
        kind, tok = self.take()
        if kind == 'num':
            return self.number(tok)
        if kind == 'id':
            try:
                return self.symbols[tok]
            except KeyError:
                raise ParseError(f'Unknown symbol {tok!r} in {self.text!r}')
        if (kind, tok) == ('op', '('):
            value = self.expr()
            self.expect(')')
            return value
        raise ParseError(f'Unexpected token {tok!r} in {self.text!r}')


def evaluate(text, symbols, number):
    """Evaluate text with identifiers bound by symbols and integer literals
    converted by number.
    """
    if not isinstance(text, str):
        raise ParseError(f'Expected text, got {type(text).__name__}')
    try:
        return _Parser(text, symbols, number).parse()
    except ZeroDivisionError as e:
        raise ParseError(f'Division by zero in {text!r}') from e


def join_terms(terms):
    """Join signed term strings into a canonical sum."""
    if not terms:
        return '0'
    s = terms[0]
    for t in terms[1:]:
        s += t if t.startswith('-') else '+' + t
    return s


def monomial(coeff, name, exp):
    """Format coeff*name^exp, with coeff already a string ('' for unit)."""
    if exp == 0:
        return coeff or '1'
    var = name if exp == 1 else f'{name}^{exp}'
    if not coeff:
        return var
    return f'{coeff}*{var}'
