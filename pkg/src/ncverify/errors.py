"""Exception hierarchy shared by all ncverify modules."""

from __future__ import annotations


class NCVerifyError(Exception):
    """Base class for every error raised by ncverify."""


class InvalidLetterError(NCVerifyError, ValueError):
    pass


class RankMismatchError(NCVerifyError, ValueError):
    pass


class CapExceededError(NCVerifyError, ValueError):
    """An enumeration or matrix would exceed a configured desk-scale cap."""


class UnsupportedExponentError(NCVerifyError, ValueError):
    pass


class ConsistencyError(NCVerifyError, ArithmeticError):
    """An internal numerical invariant (e.g. a real-valued trace) was violated."""


class NotUnimodularError(NCVerifyError, ValueError):
    pass


class UndefinedMultiplierError(NCVerifyError, KeyError):
    pass


class TruncationError(NCVerifyError, ValueError):
    """A truncated Fock computation would not be exact at the requested cutoff."""


class DomainError(NCVerifyError, ValueError):
    """A parameter lies outside the mathematical domain of an operation."""


class NotHermitianError(NCVerifyError, ValueError):
    pass


class NonConvergenceError(NCVerifyError, ArithmeticError):
    pass


class ConfigError(NCVerifyError, ValueError):
    pass
