"""Misc types."""

import dataclasses
import logging
from enum import Enum, unique
from functools import total_ordering

log = logging.getLogger(__name__)


class MonogenError(Exception):
    """Base class of all errors raised by this package."""


class ContextMismatch(MonogenError, ValueError):
    """Operands belong to different field contexts."""


class ParseError(MonogenError, ValueError):
    """Text form could not be parsed."""


class TowerError(MonogenError, ValueError):
    """Malformed tower or Galois map."""


class InseparableError(TowerError):
    """Element or polynomial is not separable."""


class NotIntegralError(MonogenError, ValueError):
    """Minimal polynomial has non-integral coefficients."""


class UnsupportedAmbient(MonogenError, ValueError):
    """Operation not available for this ambient field."""


class BudgetExceeded(MonogenError, RuntimeError):
    """Enumeration would exceed its budget."""


class HypothesisError(MonogenError, ValueError):
    """Inputs do not satisfy the hypothesis of the requested analysis."""


class ConfigError(MonogenError, ValueError):
    """Bad scenario or command line configuration."""


@total_ordering
@unique
class Status(Enum):
    """Outcome of a single check."""
    passed = 'passed'
    failed = 'failed'
    probe = 'probe'
    assumed = 'assumed'

    def __lt__(self, other):
        """Comparison is useful for sorting in reports."""
        lst = list(self.__class__)
        return lst.index(self) < lst.index(other)

    def mark(self):
        """Single character marker for tables."""
        return {'passed': '✓', 'failed': '✗', 'probe': '?',
                'assumed': '~'}[self.value]

    def as_json(self):
        """Represent as JSON (one-way conversion)."""
        return self.value


@unique
class Certificate(Enum):
    """How irreducibility of a defining polynomial is known."""
    specialization = 'specialization'
    exhaustive = 'exhaustive'
    assumed = 'assumed'

    def as_json(self):
        return self.value


@total_ordering
@unique
class PatternKind(Enum):
    """Kinds of fitted Frobenius patterns, in fitting priority."""
    F1 = 'F1'
    F2 = 'F2'
    F = 'F'
    A = 'A'
    finite = 'finite'

    def __lt__(self, other):
        lst = list(self.__class__)
        return lst.index(self) < lst.index(other)

    def as_json(self):
        return self.value


@dataclasses.dataclass(frozen=True)
class Check:
    """A named check with its status and witness."""
    name: str
    status: Status
    witness: dict = dataclasses.field(default_factory=dict)
    note: str = ''

    def __post_init__(self):
        assert isinstance(self.status, Status), self.status
        assert self.status != Status.failed or self.witness, self.name

    def __str__(self):
        return f'{self.status.mark()} {self.name}'

    @property
    def asserted(self):
        return self.status in (Status.passed, Status.failed)

    def _asdict(self):
        return dict(name=self.name, status=self.status,
                    witness=self.witness, note=self.note)
