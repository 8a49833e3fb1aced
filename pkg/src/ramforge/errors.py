"""Exception types shared across the package.

The CLI maps each class to a stable exit code; see `ramforge.cli`.
"""


class RamforgeError(Exception):
    """Base class for all package errors."""


class ParameterError(RamforgeError, ValueError):
    """An argument violates a stated precondition (bad prime, congruence, ...)."""


class ParseError(RamforgeError, ValueError):
    """A textual artifact (series, multiset, certificate) failed to parse."""


class InsufficientPrecisionError(RamforgeError):
    """A result's valuation cannot be certified at the working precision."""


class UnrealizableMultisetError(RamforgeError, ValueError):
    """An upper break multiset whose lower breaks are not positive integers."""


class MaterializationLimitError(RamforgeError):
    """A group operation required enumerating more elements than allowed."""


class VerificationMismatchError(RamforgeError):
    """Re-execution of a certificate diverged from its text."""

    def __init__(self, location: str, expected: str = "", found: str = ""):
        self.location = location
        self.expected = expected
        self.found = found
        msg = f"verification mismatch at {location}"
        if expected or found:
            msg += f": expected {expected!r}, found {found!r}"
        super().__init__(msg)


class InternalCheckError(RamforgeError):
    """Two independent computations of the same quantity disagreed.

    Raised when a cross-check that should be an identity fails; always a bug
    (or a falsified assumption), never a user error.
    """
