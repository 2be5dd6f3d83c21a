"""Reference transforms and the instrumented radix-2 FFT.

Sign convention throughout: ``euler(theta) = exp(-2*pi*i*theta)``; forward
transforms use ``euler(+phase)`` and inverse transforms carry the ``1/N``
normalisation.

Arrays follow numpy C-order.  A 2-D field is stored as ``f[y, x]`` with
``N`` columns (x, fastest) and ``M`` rows (y), so ``f.ravel()[N*y + x]``
is ``f(x, y)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from flatspectra.errors import DomainError, UnsupportedLengthError

TWO_PI = 2.0 * math.pi


@dataclass
class MultTally:
    """Running count of real multiplications executed by a transform."""

    real_multiplications: int = 0

    def add(self, count: int) -> None:
        if count < 0:
            raise ValueError("tally cannot decrease")
        self.real_multiplications += int(count)

    def reset(self) -> None:
        self.real_multiplications = 0


def euler(theta: float) -> complex:
    """Return ``exp(-2*pi*i*theta)``."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise DomainError(f"euler() needs a finite argument, got {theta!r}")
    # reduce first so quarter/half periods come out exact
    t = theta - math.floor(theta)
    if t == 0.0:
        return complex(1.0, 0.0)
    if t == 0.5:
        return complex(-1.0, 0.0)
    if t == 0.25:
        return complex(0.0, -1.0)
    if t == 0.75:
        return complex(0.0, 1.0)
    angle = -TWO_PI * t
    return complex(math.cos(angle), math.sin(angle))


def _as_signal(signal) -> np.ndarray:
    arr = np.asarray(signal, dtype=np.complex128)
    if arr.ndim != 1:
        raise DomainError(f"expected a 1-D signal, got shape {arr.shape}")
    if arr.size == 0:
        raise DomainError("signal must contain at least one sample")
    return arr


def _as_field(field) -> np.ndarray:
    arr = np.asarray(field, dtype=np.complex128)
    if arr.ndim != 2:
        raise DomainError(f"expected a 2-D field indexed [y, x], got shape {arr.shape}")
    if arr.size == 0:
        raise DomainError("field must contain at least one sample")
    return arr


def _unit_roots(residues: np.ndarray, n: int, sign: float) -> np.ndarray:
    # residues are exact integers in [0, n); the angle is formed after reduction
    angle = (sign * TWO_PI / n) * residues
    return np.cos(angle) + 1j * np.sin(angle)


def _direct(signal: np.ndarray, sign: float) -> np.ndarray:
    n = signal.size
    idx = np.arange(n, dtype=np.int64)
    out = np.empty(n, dtype=np.complex128)
    # row blocks keep memory bounded for long direct sums
    block = max(1, min(n, (1 << 22) // n))
    for start in range(0, n, block):
        rows = idx[start:start + block]
        kernel = _unit_roots(np.outer(rows, idx) % n, n, sign)
        out[start:start + block] = kernel @ signal
    return out


def dft_1d(signal) -> np.ndarray:
    """Direct-sum forward DFT, ``F(u) = sum_x euler(x*u/N) f(x)``."""
    return _direct(_as_signal(signal), -1.0)


def idft_1d(spectrum) -> np.ndarray:
    """Direct-sum inverse DFT, ``f(x) = sum_u euler(-x*u/N) F(u) / N``."""
    spectrum = _as_signal(spectrum)
    return _direct(spectrum, +1.0) / spectrum.size


def _direct_2d(field: np.ndarray, sign: float) -> np.ndarray:
    m_rows, n_cols = field.shape
    q = n_cols * m_rows
    x = np.arange(n_cols, dtype=np.int64)
    y = np.arange(m_rows, dtype=np.int64)
    u = np.arange(n_cols, dtype=np.int64)
    out = np.empty((m_rows, n_cols), dtype=np.complex128)
    # joint phase (x*u/N + y*v/M) over the common denominator N*M
    xu = np.multiply.outer(x, u) * m_rows
    for v in range(m_rows):
        yv = (y * v * n_cols)[:, None, None]
        residues = (yv + xu[None, :, :]) % q
        kernel = _unit_roots(residues, q, sign)
        out[v] = np.einsum("yxu,yx->u", kernel, field)
    return out


def dft_2d(field) -> np.ndarray:
    """Direct double-sum 2-D DFT of a field indexed ``[y, x]``.

    Returns the spectrum indexed ``[v, u]``.
    """
    return _direct_2d(_as_field(field), -1.0)


def idft_2d(spectrum) -> np.ndarray:
    """Direct double-sum inverse of :func:`dft_2d`."""
    spectrum = _as_field(spectrum)
    return _direct_2d(spectrum, +1.0) / spectrum.size


def eval_2d_at(field, nu_u: float, nu_v: float) -> complex:
    """Evaluate the 2-D spectrum at arbitrary real frequencies.

    ``sum_y sum_x euler(x*nu_u/N + y*nu_v/M) f(x, y)``.  Integer arguments
    reproduce :func:`dft_2d`; fractional ones sample between its bins.
    """
    field = _as_field(field)
    if not (math.isfinite(nu_u) and math.isfinite(nu_v)):
        raise DomainError("frequencies must be finite")
    m_rows, n_cols = field.shape
    x = np.arange(n_cols, dtype=np.float64)
    y = np.arange(m_rows, dtype=np.float64)
    phase = y[:, None] * (nu_v / m_rows) + x[None, :] * (nu_u / n_cols)
    kernel = np.exp(-1j * TWO_PI * phase)
    return complex(np.sum(kernel * field))


def eval_md_at(field, nus) -> complex:
    """Evaluate the M-D spectrum of ``field`` at real frequencies ``nus``.

    Parameters
    ----------
    field : FlatField
        Row-major samples over ``field.shape`` (axis 1 fastest).
    nus : sequence of float
        One frequency per axis, ordered like ``field.shape.dims``.

    Returns
    -------
    complex
        ``sum euler(sum_i x_i * nus[i] / N_i) f(x_1, ..., x_m)``.
    """
    dims = tuple(field.shape.dims)
    nus = [float(nu) for nu in nus]
    if len(nus) != len(dims):
        raise DomainError(f"need {len(dims)} frequencies, got {len(nus)}")
    if not all(math.isfinite(nu) for nu in nus):
        raise DomainError("frequencies must be finite")
    # numpy axes run slowest-first, i.e. reversed relative to dims
    cube = np.asarray(field.samples, dtype=np.complex128).reshape(dims[::-1])
    grids = np.indices(dims[::-1], dtype=np.float64)
    phase = np.zeros(cube.shape)
    for axis, (n, nu) in enumerate(zip(dims, nus)):
        phase += grids[len(dims) - 1 - axis] * (nu / n)
    return complex(np.sum(np.exp(-1j * TWO_PI * phase) * cube))


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def bit_reversal_permutation(n: int) -> np.ndarray:
    """Indices ``r`` such that ``x[r]`` is ``x`` in bit-reversed order."""
    if not is_power_of_two(n):
        raise UnsupportedLengthError(n)
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def _radix2(signal: np.ndarray, sign: float, tally: MultTally | None) -> np.ndarray:
    n = signal.size
    if not is_power_of_two(n):
        raise UnsupportedLengthError(n)
    x = signal[bit_reversal_permutation(n)]
    count = 0
    span = 2
    while span <= n:
        half = span // 2
        angle = np.arange(half, dtype=np.float64) * (sign * TWO_PI / span)
        count += half
        twiddle = np.cos(angle) + 1j * np.sin(angle)
        blocks = x.reshape(-1, span)
        top = blocks[:, :half]
        bottom = blocks[:, half:] * twiddle
        # one complex product per butterfly, four real multiplications each
        count += 4 * (n // 2)
        x = np.concatenate((top + bottom, top - bottom), axis=1).reshape(n)
        span *= 2
    if tally is not None:
        tally.add(count)
    return x


def fft_1d(signal, tally: MultTally | None = None) -> np.ndarray:
    """Iterative radix-2 decimation-in-time FFT.

    Same result as :func:`dft_1d` for power-of-two lengths.  When ``tally``
    is given, the real multiplications performed (twiddle angles plus
    butterfly products) are added to it.

    Raises
    ------
    UnsupportedLengthError
        If the length is not a power of two.
    """
    return _radix2(_as_signal(signal), -1.0, tally)


def ifft_1d(spectrum, tally: MultTally | None = None) -> np.ndarray:
    """Inverse of :func:`fft_1d`, including the ``1/N`` scaling."""
    spectrum = _as_signal(spectrum)
    out = _radix2(spectrum, +1.0, tally)
    n = spectrum.size
    if n > 1:
        out = out * (1.0 / n)
        if tally is not None:
            tally.add(2 * n)
    return out
