"""Miscellaneous utility functionality."""

import argparse
import logging
import os
import sys
from pathlib import Path

import appdirs
import tabulate

log = logging.getLogger(__name__)

LOGLEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']


class AppDirsPathlib(appdirs.AppDirs):
    """Convenience wrapper for AppDirs that returns Path objects."""
    def __getattribute__(self, name):
        r = super().__getattribute__(name)
        if name.endswith('_dir'):
            return Path(r)
        return r


class ArgumentParser(argparse.ArgumentParser):
    """Parser with a shorter add method and one argument per file line."""
    def add(self, *args, **kwargs):
        return self.add_argument(*args, **kwargs)

    def convert_arg_line_to_args(self, arg_line):
        line = arg_line.strip()
        if not line or line.startswith('#'):
            return []
        return line.split()


def get_progname():
    """Program name without path or extension."""
    return Path(sys.argv[0]).stem or 'monogen'


def get_basic_parser(**kwargs):
    """Parser with verbosity and logging arguments."""
    kwargs.setdefault('fromfile_prefix_chars', '@')
    parser = ArgumentParser(**kwargs)
    parser.add('-v', '--verbose', action='count', default=0,
               help='increase verbosity')
    parser.add('--logfile', help='log file')
    parser.add('--loglevel', default=os.environ.get('MONOGEN_LOGLEVEL',
                                                    'WARNING'),
               help=f'log level ({", ".join(LOGLEVELS)} or a number)')
    return parser


def get_loglevel(name):
    """Numeric log level from a name or number string."""
    if isinstance(name, int) or str(name).isdigit():
        return int(name)
    name = str(name).upper()
    if name not in LOGLEVELS:
        raise ValueError(f'Invalid log level: {name}')
    return getattr(logging, name)


class Messager():
    """Message mediation."""
    def __init__(self, name='root', verbosity=0, sep=' ', end='\n',
                 file=None, flush=False):
        self.name = name
        self.verbosity = verbosity
        self.sep = sep
        self.end = end
        self.file = file
        self.flush = flush

    def msg(self, *args, **kwargs):
        """Print message."""
        if any(x not in self.__dict__ for x in kwargs):
            raise ValueError(f'Invalid keyword argument in {kwargs}')
        d = dict(self.__dict__, **kwargs)
        value = d['sep'].join(str(x) for x in args)
        print(value, end=d['end'], file=d['file'] or sys.stdout,
              flush=d['flush'])

    def verbose(self, *args, **kwargs):
        """Print message only when verbose."""
        if self.verbosity:
            self.msg(*args, **kwargs)


def fmt_strings(iterable, sep=', '):
    """Format an iterable of objects as strings."""
    return sep.join(str(x) for x in iterable)


def fmt_table(rows, headers=()):
    """Tabulate."""
    return tabulate.tabulate(rows, headers=headers, tablefmt='plain')


def checkmark(value):
    return '✓ ' if value else '✗ '
