"""Exception types raised by the fmi package."""


class FmiError(ValueError):
    """Base class for all domain errors raised by this package."""


class ShapeError(FmiError):
    """Matrix shapes do not fit the requested operation."""


class BoundaryError(FmiError):
    """Evaluation requested on the symmetry boundary (unit circle or real axis)."""


class PoleError(FmiError):
    """Evaluation point coincides with an atom or an interpolation node."""


class SingularPointError(FmiError):
    """Point is excluded from the domain of a transformed inequality."""


class QuadratureError(FmiError):
    """Moment data admit no Gauss quadrature (leading Hankel block not positive definite)."""
