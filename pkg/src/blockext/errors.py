"""Exception types shared across the package.

Plain ``ValueError`` is used for ordinary bad arguments (length mismatches,
out-of-range elements).  The classes below mark conditions a caller may want
to branch on; the command-line front end maps each to a distinct exit code.
"""


class UnsupportedRateError(ValueError):
    """Min-entropy rate at or below 1/2; no plan exists for such sources."""


class CapacityError(ValueError):
    """A derived or requested field width exceeds the implementation cap."""


class DivergenceError(ValueError):
    """An infinite-run error bound was requested but the series diverges."""


class TruncatedSourceError(RuntimeError):
    """A file-backed source holds fewer bits than the request requires."""


class UncertifiableError(ValueError):
    """No min-entropy certificate can be computed for this source kind."""


class InfeasibleError(ValueError):
    """A brute-force check was requested beyond its enumerable size limit."""


class VerificationError(AssertionError):
    """A verification suite observed a violated bound."""
