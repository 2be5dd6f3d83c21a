"""Multi-dimensional DFTs computed as a single 1-D DFT on a skewed grid."""

from flatspectra.engine import (
    FilterSpec,
    FlatField,
    SkewedSpectrum,
    apply_filter,
    forward,
    inverse,
    transpose_probe,
    verify_identity,
)
from flatspectra.skew import Shape, skew_coords

__all__ = [
    "FilterSpec",
    "FlatField",
    "Shape",
    "SkewedSpectrum",
    "apply_filter",
    "forward",
    "inverse",
    "skew_coords",
    "transpose_probe",
    "verify_identity",
]
