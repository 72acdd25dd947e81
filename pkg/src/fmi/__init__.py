"""Fundamental matrix inequalities for Nevanlinna-Pick interpolation and the Hamburger moment problem."""
from .errors import BoundaryError, FmiError, PoleError, QuadratureError, ShapeError, SingularPointError
from .hamburger_fmi import (
    ExtractionReport,
    MomentData,
    extract_moments,
    h_fmi,
    h_identity,
    h_tfmi,
    h_transform,
    hankel_realization,
    representing_measure,
)
from .measures import (
    CircleMeasure,
    DiskExtension,
    DiskHerglotz,
    HalfPlaneNevanlinna,
    LineMeasure,
    moment,
    moments,
    stieltjes_weight,
)
from .np_fmi import NpData, np_fmi, np_identity, np_realization, np_tfmi, np_transform
from .numerics import PsdReport, check_psd
from .realization import FmiMatrix, Realization
from .reports import CheckReport

__version__ = "0.1.0"

__all__ = [
    "BoundaryError",
    "CheckReport",
    "CircleMeasure",
    "DiskExtension",
    "DiskHerglotz",
    "ExtractionReport",
    "FmiError",
    "FmiMatrix",
    "HalfPlaneNevanlinna",
    "LineMeasure",
    "MomentData",
    "NpData",
    "PoleError",
    "PsdReport",
    "QuadratureError",
    "Realization",
    "ShapeError",
    "SingularPointError",
    "check_psd",
    "extract_moments",
    "h_fmi",
    "h_identity",
    "h_tfmi",
    "h_transform",
    "hankel_realization",
    "moment",
    "moments",
    "np_fmi",
    "np_identity",
    "np_realization",
    "np_tfmi",
    "np_transform",
    "representing_measure",
    "stieltjes_weight",
]
