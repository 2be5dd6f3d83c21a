"""Multi-dimensional spectra from a single long 1-D transform.

A field of any dimensionality is stored as one row-major line ``f(z)``.
Its ordinary length-``Q`` DFT, read through the reversed index scheme of
:mod:`flatspectra.skew`, is the M-D spectrum sampled on a slightly skewed
grid.  In 2-D::

    F_1d[M*u + v] == F_2d(u + v/M, v)

and the plain 1-D inverse brings the spatial samples back.  Filtering is
done directly on the skewed samples, with the mask evaluated at each
sample's true fractional position.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass, field as dataclass_field
from typing import Callable, Optional

import numpy as np

from flatspectra import core
from flatspectra.errors import DomainError, FilterConfigError, VerificationCapError
from flatspectra.skew import Shape, SkewCoords, skew_coords, skew_grid

DIRECT_SUM_WARN_SIZE = 4096
VERIFY_WARN_SIZE = 4096
DEFAULT_VERIFY_CAP = 65536
VERIFY_CAP_ENV = "FLATSPECTRA_VERIFY_CAP"


def _coerce_samples(samples, size: int) -> np.ndarray:
    arr = np.array(samples, dtype=np.complex128).reshape(-1)
    if arr.size != size:
        raise DomainError(f"expected {size} samples, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("samples must be finite")
    return arr


@dataclass(frozen=True, eq=False)
class FlatField:
    """Spatial samples ``f(z)`` stored row-major over ``shape``."""

    shape: Shape
    samples: np.ndarray

    def __post_init__(self):
        shape = self.shape if isinstance(self.shape, Shape) else Shape(self.shape)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "samples", _coerce_samples(self.samples, shape.size))

    @classmethod
    def from_array(cls, array) -> "FlatField":
        """Wrap a numpy array indexed slowest-axis-first (``[y, x]`` in 2-D)."""
        array = np.asarray(array)
        if array.ndim == 0:
            array = array.reshape(1)
        return cls(Shape(array.shape[::-1]), array.ravel())

    def to_array(self) -> np.ndarray:
        return self.samples.reshape(self.shape.numpy_shape)


@dataclass(frozen=True, eq=False)
class SkewedSpectrum:
    """Spectrum samples ``F(w)`` in reversed-index order over ``shape``."""

    shape: Shape
    samples: np.ndarray

    def __post_init__(self):
        shape = self.shape if isinstance(self.shape, Shape) else Shape(self.shape)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "samples", _coerce_samples(self.samples, shape.size))

    def coords(self, w: int) -> SkewCoords:
        return skew_coords(w, self.shape)

    def grid(self) -> np.ndarray:
        """Fractional coordinates of all samples, ``(Q, m)``."""
        return skew_grid(self.shape)

    def to_uv(self) -> np.ndarray:
        """2-D only: samples arranged as ``[v, u]`` (spatial orientation)."""
        if self.shape.ndim != 2:
            raise DomainError("to_uv() needs a 2-D spectrum")
        n_cols, m_rows = self.shape.dims
        # sample M*u + v lives at row u, column v of the reshaped line
        return self.samples.reshape(n_cols, m_rows).T


def _exact_sum(values: np.ndarray) -> complex:
    return complex(math.fsum(values.real), math.fsum(values.imag))


def forward(field: FlatField) -> SkewedSpectrum:
    """Single 1-D DFT of the flattened field.

    Uses the radix-2 FFT when ``Q`` is a power of two, the direct sum
    otherwise.  Sample 0 is set to the correctly rounded total, so the DC
    value does not depend on storage order.
    """
    q = field.shape.size
    if core.is_power_of_two(q):
        spectrum = core.fft_1d(field.samples)
    else:
        if q > DIRECT_SUM_WARN_SIZE:
            warnings.warn(
                f"Q={q} is not a power of two; using the O(Q^2) direct sum",
                RuntimeWarning,
                stacklevel=2,
            )
        spectrum = core.dft_1d(field.samples)
    spectrum[0] = _exact_sum(field.samples)
    return SkewedSpectrum(field.shape, spectrum)


def inverse(spectrum: SkewedSpectrum) -> FlatField:
    """Single inverse 1-D DFT back to row-major spatial samples."""
    q = spectrum.shape.size
    if core.is_power_of_two(q):
        samples = core.ifft_1d(spectrum.samples)
    else:
        if q > DIRECT_SUM_WARN_SIZE:
            warnings.warn(
                f"Q={q} is not a power of two; using the O(Q^2) direct sum",
                RuntimeWarning,
                stacklevel=2,
            )
        samples = core.idft_1d(spectrum.samples)
    return FlatField(spectrum.shape, samples)


def verify_cap() -> int:
    raw = os.environ.get(VERIFY_CAP_ENV)
    if raw is None:
        return DEFAULT_VERIFY_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise VerificationCapError(f"{VERIFY_CAP_ENV}={raw!r} is not an integer") from None
    if cap < 1:
        raise VerificationCapError(f"{VERIFY_CAP_ENV} must be positive")
    return cap


def verify_identity(field: FlatField, cap: Optional[int] = None) -> float:
    """Max relative error between ``forward`` and direct skewed-grid sums.

    Every sample ``w`` of the single 1-D transform is compared with
    :func:`flatspectra.core.eval_md_at` at ``skew_coords(w)``.  The error is
    normalised by the largest spectrum magnitude (absolute for an all-zero
    field).  Cost is O(Q^2), hence the size cap.
    """
    q = field.shape.size
    cap = verify_cap() if cap is None else cap
    if q > cap:
        raise VerificationCapError(
            f"Q={q} exceeds the direct-sum verification cap of {cap}; "
            f"raise it with {VERIFY_CAP_ENV} if the O(Q^2) cost is acceptable"
        )
    if q > VERIFY_WARN_SIZE:
        warnings.warn(f"verifying Q={q} by direct sums is slow", RuntimeWarning, stacklevel=2)
    fast = forward(field).samples
    oracle = np.array(
        [core.eval_md_at(field, skew_coords(w, field.shape).coords) for w in range(q)]
    )
    worst = float(np.max(np.abs(fast - oracle)))
    scale = float(np.max(np.abs(oracle)))
    return worst / scale if scale > 0 else worst


KINDS = ("ideal-low-pass", "ideal-high-pass", "all-pass", "custom-mask")
_ALIASES = {"lowpass": "ideal-low-pass", "highpass": "ideal-high-pass", "allpass": "all-pass"}


@dataclass(frozen=True)
class FilterSpec:
    """Frequency-domain mask.

    ``radius`` is measured in normalised frequency: each centred coordinate
    is divided by its axis length, so 0.5 reaches the Nyquist edge of every
    axis regardless of shape.
    """

    kind: str
    radius: Optional[float] = None
    preserve_dc: bool = False
    mask: Optional[Callable[[SkewCoords], float]] = dataclass_field(default=None, compare=False)

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise FilterConfigError(f"unknown filter kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if kind in ("ideal-low-pass", "ideal-high-pass"):
            if self.radius is None or not self.radius > 0 or not math.isfinite(self.radius):
                raise FilterConfigError(f"{kind} needs a positive finite radius")


def centered(coords: np.ndarray, dims) -> np.ndarray:
    """Map raw coordinates in ``[0, N)`` to signed frequencies.

    Values above ``N/2`` wrap to ``c - N``; fractional values are treated the
    same way, so ``N - 0.25`` becomes ``-0.25``.
    """
    dims = np.asarray(dims, dtype=np.float64)
    return np.where(coords > dims / 2, coords - dims, coords)


def radial_distance(shape: Shape) -> np.ndarray:
    """Normalised distance from DC of every skewed sample, length ``Q``."""
    signed = centered(skew_grid(shape), shape.dims)
    return np.sqrt(np.sum((signed / np.asarray(shape.dims, dtype=np.float64)) ** 2, axis=1))


def filter_mask(shape: Shape, spec: FilterSpec) -> np.ndarray:
    """Real mask value for every sample ``w``."""
    if spec.kind == "all-pass":
        return np.ones(shape.size)
    if spec.kind == "custom-mask":
        if spec.mask is None:
            raise FilterConfigError("custom-mask filter has no mask function")
        return np.array([float(spec.mask(skew_coords(w, shape))) for w in range(shape.size)])
    inside = radial_distance(shape) <= spec.radius
    if spec.kind == "ideal-low-pass":
        return inside.astype(np.float64)
    return (~inside).astype(np.float64)


def apply_filter(spectrum: SkewedSpectrum, spec: FilterSpec) -> SkewedSpectrum:
    """Multiply each sample by the mask at its skewed position (new object)."""
    if spec.kind == "all-pass":
        return SkewedSpectrum(spectrum.shape, spectrum.samples.copy())
    out = spectrum.samples * filter_mask(spectrum.shape, spec)
    if spec.preserve_dc:
        out[0] = spectrum.samples[0]
    return SkewedSpectrum(spectrum.shape, out)


def transpose(field: FlatField) -> FlatField:
    """Swap the two axes of a 2-D field (columns become rows)."""
    if field.shape.ndim != 2:
        raise DomainError("transpose() needs a 2-D field")
    return FlatField.from_array(field.to_array().T)


@dataclass(frozen=True, eq=False)
class TransposeProbe:
    dc_before: complex
    dc_after: complex
    # |F(w)| - |F_T(matching w)|, in the original field's reversed order
    differences: np.ndarray


def transpose_probe(field: FlatField) -> TransposeProbe:
    """Compare the spectrum of a 2-D field with that of its transpose.

    Bin ``(u, v)`` of the original is matched with bin ``(v, u)`` of the
    transposed field's spectrum.  Only the DC sample is guaranteed equal;
    the others sit on differently skewed grids.
    """
    if field.shape.ndim != 2:
        raise DomainError("transpose_probe() needs a 2-D field")
    n_cols, m_rows = field.shape.dims
    before = forward(field).samples
    after = forward(transpose(field)).samples
    u, v = np.divmod(np.arange(field.shape.size), m_rows)
    # transposed shape is (M, N): bin (u', v') = (v, u) sits at N*v + u
    matched = after[n_cols * v + u]
    return TransposeProbe(
        dc_before=complex(before[0]),
        dc_after=complex(after[0]),
        differences=np.abs(before) - np.abs(matched),
    )
