"""Exception types shared across the package."""


class BmvtError(Exception):
    """Base class for all package errors."""


class EmptyTableError(BmvtError, ValueError):
    """A table of length zero was requested."""


class UnsupportedFunctionError(BmvtError, ValueError):
    """Unknown standard-function name."""


class NotInvertibleError(BmvtError, ValueError):
    """Convolution inverse requested for a table with f(1) = 0."""


class BadIntervalError(BmvtError, ValueError):
    """Interval endpoints violate lo < hi."""


class InsufficientTableError(BmvtError, ValueError):
    """A computation needs more tabulated values than are available."""


class BadModulusError(BmvtError, ValueError):
    """Character modulus must be a positive integer."""


class PrincipalCharacterError(BmvtError, ValueError):
    """Operation defined only for non-principal characters."""


class BadCutsError(BmvtError, ValueError):
    """Weight cut points violate 1 <= V1 < V2."""


class OutOfRegimeError(BmvtError, ValueError):
    """Parameter recipe requested outside its Q-range."""


class WrongBranchError(BmvtError, ValueError):
    """Large-Q evaluation requested with Q^2 <= x (or vice versa)."""


class FitError(BmvtError, ValueError):
    """Exponent fit impossible on the given grid."""


class CacheError(BmvtError, RuntimeError):
    """Table cache file is unusable."""
