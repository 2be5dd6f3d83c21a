"""Index arithmetic for the skewed frequency grid.

Axis 1 is always the fastest-varying *spatial* axis: in 2-D it counts the
``N`` columns (x), and axis 2 counts the ``M`` rows (y).  Spatial samples
are flattened row-major, ``z = x_1 + N_1*x_2 + N_1*N_2*x_3 + ...``.

The single 1-D spectrum is read back with the order reversed: the fastest
spatial axis becomes the slowest frequency axis,
``w = u_m + N_m*u_{m-1} + N_m*N_{m-1}*u_{m-2} + ...``.  In 2-D that is
``j = M*u + v``.

Sample ``w`` then sits at the fractional frequency ``u_i + alpha_i`` on
each axis, where ``alpha_i = sum_{k>i} u_k / (N_{i+1} * ... * N_k)``.  The
last axis is never shifted and ``0 <= alpha_i < 1`` always holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from flatspectra.errors import DomainError

MAX_SIZE = 2**31


@dataclass(frozen=True, init=False)
class Shape:
    """Axis lengths ``N_1..N_m``, fastest spatial axis first."""

    dims: tuple[int, ...]

    def __init__(self, *dims):
        if len(dims) == 1 and not isinstance(dims[0], (int, np.integer)):
            dims = tuple(dims[0])
        dims = tuple(int(n) for n in dims)
        if not dims:
            raise DomainError("a shape needs at least one axis")
        if any(n < 1 for n in dims):
            raise DomainError(f"axis lengths must be >= 1, got {dims}")
        if math.prod(dims) > MAX_SIZE:
            raise DomainError(f"total size {math.prod(dims)} exceeds {MAX_SIZE}")
        object.__setattr__(self, "dims", dims)

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        """Total sample count ``Q``."""
        return math.prod(self.dims)

    Q = size

    @property
    def numpy_shape(self) -> tuple[int, ...]:
        """Shape of the equivalent C-order numpy array (slowest axis first)."""
        return self.dims[::-1]

    def transposed(self) -> "Shape":
        return Shape(self.dims[::-1])

    def __str__(self) -> str:
        return "x".join(str(n) for n in self.dims)

    @classmethod
    def parse(cls, text: str) -> "Shape":
        """Parse ``"4x3"`` / ``"4x3x2"`` / ``"8"``."""
        try:
            dims = [int(part) for part in text.lower().split("x")]
        except ValueError:
            raise DomainError(f"cannot parse shape {text!r}") from None
        return cls(dims)


def _check_range(index: int, bound: int, name: str) -> None:
    if not 0 <= index < bound:
        raise DomainError(f"{name}={index} outside [0, {bound})")


def flatten_2d(x: int, y: int, n_cols: int) -> int:
    """Row-major flat index ``k = N*y + x``."""
    _check_range(x, n_cols, "x")
    if y < 0:
        raise DomainError(f"y={y} must be non-negative")
    return n_cols * y + x


def unflatten_2d(k: int, n_cols: int) -> tuple[int, int]:
    if k < 0:
        raise DomainError(f"k={k} must be non-negative")
    if n_cols < 1:
        raise DomainError("N must be >= 1")
    y, x = divmod(k, n_cols)
    return x, y


def reverse_index_2d(u: int, v: int, m_rows: int, n_cols: int | None = None) -> int:
    """Reversed (column-major) index ``j = M*u + v``."""
    if n_cols is not None:
        _check_range(u, n_cols, "u")
    elif u < 0:
        raise DomainError(f"u={u} must be non-negative")
    _check_range(v, m_rows, "v")
    return m_rows * u + v


def _check_indices(indices: Sequence[int], shape: Shape) -> list[int]:
    indices = [int(i) for i in indices]
    if len(indices) != shape.ndim:
        raise DomainError(f"expected {shape.ndim} indices, got {len(indices)}")
    for axis, (i, n) in enumerate(zip(indices, shape.dims), start=1):
        _check_range(i, n, f"index[{axis}]")
    return indices


def flatten_md(xs: Sequence[int], shape: Shape) -> int:
    """``z = sum_i xs[i] * (N_1 * ... * N_{i-1})``."""
    xs = _check_indices(xs, shape)
    z = 0
    stride = 1
    for x, n in zip(xs, shape.dims):
        z += x * stride
        stride *= n
    return z


def unflatten_md(z: int, shape: Shape) -> tuple[int, ...]:
    _check_range(z, shape.size, "z")
    xs = []
    for n in shape.dims:
        z, x = divmod(z, n)
        xs.append(x)
    return tuple(xs)


def reverse_index_md(us: Sequence[int], shape: Shape) -> int:
    """``w = sum_k us[k] * (N_{k+1} * ... * N_m)``."""
    us = _check_indices(us, shape)
    w = 0
    stride = 1
    for u, n in zip(reversed(us), reversed(shape.dims)):
        w += u * stride
        stride *= n
    return w


def decode_reversed(w: int, shape: Shape) -> tuple[int, ...]:
    """Inverse of :func:`reverse_index_md`."""
    _check_range(w, shape.size, "w")
    us = []
    for n in reversed(shape.dims):
        w, u = divmod(w, n)
        us.append(u)
    return tuple(reversed(us))


def alpha_fraction(i: int, us: Sequence[int], shape: Shape) -> Fraction:
    """Exact shift of axis ``i`` (1-based) for frequency indices ``us``."""
    us = _check_indices(us, shape)
    m = shape.ndim
    if not 1 <= i <= m:
        raise DomainError(f"axis {i} outside 1..{m}")
    total = Fraction(0)
    denominator = 1
    # k runs over the 1-based axes i+1..m; us/dims are 0-based
    for k in range(i + 1, m + 1):
        denominator *= shape.dims[k - 1]
        total += Fraction(us[k - 1], denominator)
    return total


def alpha(i: int, us: Sequence[int], shape: Shape) -> float:
    """Fractional shift ``alpha_i``; zero on the last axis, below one elsewhere."""
    return float(alpha_fraction(i, us, shape))


@dataclass(frozen=True)
class SkewCoords:
    """Per-axis fractional frequency ``u_i + alpha_i`` of one spectrum sample."""

    coords: tuple[float, ...]
    indices: tuple[int, ...]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, item):
        return self.coords[item]


def skew_coords(w: int, shape: Shape) -> SkewCoords:
    """Fractional coordinates at which spectrum sample ``w`` lies."""
    us = decode_reversed(w, shape)
    coords = tuple(
        float(u + alpha_fraction(i, us, shape)) for i, u in enumerate(us, start=1)
    )
    return SkewCoords(coords=coords, indices=us)


def skew_grid(shape: Shape) -> np.ndarray:
    """Coordinates of every spectrum sample at once, shape ``(Q, m)``.

    Row ``w`` equals ``skew_coords(w, shape).coords``.  Computed as
    ``(w mod (N_i * D_i)) / D_i`` with ``D_i = N_{i+1} * ... * N_m``, which
    is the same quantity with the sum folded into one residue.
    """
    w = np.arange(shape.size, dtype=np.int64)
    out = np.empty((shape.size, shape.ndim), dtype=np.float64)
    tail = 1
    for axis in range(shape.ndim - 1, -1, -1):
        out[:, axis] = (w % (shape.dims[axis] * tail)) / tail
        tail *= shape.dims[axis]
    return out
