"""Exception types shared across the package."""


class KkpolarError(Exception):
    """Base class for errors raised by kkpolar."""


class PreconditionError(KkpolarError):
    """A documented precondition of an operation was violated.

    The CLI maps this to exit status 2.
    """


class NumericalDegeneracyError(KkpolarError):
    """A numerically impossible state was detected (lost positive
    definiteness, wrong root count, ...)."""


class CodeFormatError(KkpolarError):
    """A spherical-code file failed validation (bad JSON, non-unit rows,
    duplicates, empty set)."""
