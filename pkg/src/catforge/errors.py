"""Exception and warning types shared across the package."""


class CatforgeError(Exception):
    """Base class for all package-specific errors."""


class TruncationError(CatforgeError):
    """Fock-space truncation too small for the requested construction."""


class DimensionMismatch(CatforgeError):
    """Operands live in Fock spaces of different dimension."""


class DegenerateState(CatforgeError):
    """Requested state is identically zero (e.g. odd cat with alpha = 0)."""


class SingularParameter(CatforgeError):
    """A formula diverges at the requested parameter value."""


class ZeroProbability(CatforgeError):
    """Conditioning on an event whose probability is numerically zero."""


class NumericalSingularity(CatforgeError):
    """A matrix inversion is too ill-conditioned to trust."""


class GridMismatch(CatforgeError):
    """Phase-space grids do not share the same axes."""


class InvalidParam(CatforgeError):
    """Parameter outside its physical domain."""


class OverflowGuard(CatforgeError):
    """Computation refused because intermediate terms would lose precision."""


class BoundaryLeakWarning(UserWarning):
    """A phase-space grid carries non-negligible weight on its boundary."""


class QuadratureWarning(UserWarning):
    """A numerical quadrature may not have converged."""


class NumericsWarning(UserWarning):
    """A computed value was adjusted (e.g. clipped) on numerical grounds."""
