from fractions import Fraction

import pytest

from misctypes import ParseError
from textform import evaluate, join_terms, monomial, tokenize

SYMBOLS = dict(a=Fraction(2), b=Fraction(3))


def ev(text):
    return evaluate(text, SYMBOLS, Fraction)


@pytest.mark.parametrize('text,value', [
    ('1 + 2*3', 7),
    ('a b', 6),
    ('2(a + 1)', 6),
    ('-a^2', -4),
    ('a**2 - b', 1),
    ('a^(-1)', Fraction(1, 2)),
    ('(a+b)/5', 1),
    ])
def test_evaluate(text, value):
    assert ev(text) == value


@pytest.mark.parametrize('text', ['', '1 +', 'a ^ b', 'c', '(1', '1 $ 2',
                                  '2^3^1', '1/0'])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        ev(text)


def test_evaluate_needs_text():
    with pytest.raises(ParseError):
        evaluate(3, SYMBOLS, Fraction)


def test_tokenize():
    assert tokenize('x**2') == [('id', 'x'), ('op', '^'), ('num', 2)]


def test_formatting():
    assert join_terms([]) == '0'
    assert join_terms(['x^2', '-x', '1']) == 'x^2-x+1'
    assert monomial('', 'x', 0) == '1'
    assert monomial('3', 'x', 1) == '3*x'
    assert monomial('', 'e1', 2) == 'e1^2'
