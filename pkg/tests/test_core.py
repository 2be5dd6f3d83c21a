import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import loop_dft, loop_eval_2d, random_complex, rel_max_err
from flatspectra import core
from flatspectra.core import MultTally
from flatspectra.engine import FlatField
from flatspectra.errors import DomainError, UnsupportedLengthError


@pytest.mark.parametrize(
    "theta, expected",
    [(0.0, 1 + 0j), (0.5, -1 + 0j), (0.25, -1j), (1.25, -1j), (-0.25, 1j)],
)
def test_euler_special_angles(theta, expected):
    assert core.euler(theta) == expected


def test_euler_unit_magnitude():
    for theta in np.linspace(-3.7, 5.1, 101):
        z = core.euler(theta)
        assert abs(abs(z) - 1) < 1e-12
        assert abs(z - cmath.exp(-2j * math.pi * theta)) < 1e-12


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_euler_rejects_non_finite(bad):
    with pytest.raises(DomainError):
        core.euler(bad)


def test_dft_trivial_cases():
    np.testing.assert_allclose(core.dft_1d([1, 1, 1, 1]), [4, 0, 0, 0], atol=1e-14)
    np.testing.assert_allclose(core.dft_1d([1, 0, 0, 0]), [1, 1, 1, 1], atol=1e-14)
    np.testing.assert_allclose(core.idft_1d([4, 0, 0, 0]), [1, 1, 1, 1], atol=1e-14)
    np.testing.assert_array_equal(core.idft_1d([0, 0, 0, 0]), [0, 0, 0, 0])


def test_dft_matches_loop_oracle(rng):
    x = random_complex(rng, 5)
    assert rel_max_err(core.dft_1d(x), loop_dft(list(x))) < 1e-13


def test_idft_round_trip(rng):
    x = random_complex(rng, 7)
    assert rel_max_err(core.idft_1d(core.dft_1d(x)), x) < 1e-10


@pytest.mark.parametrize("func", [core.dft_1d, core.idft_1d, core.fft_1d, core.ifft_1d])
def test_empty_signal_rejected(func):
    with pytest.raises(DomainError):
        func([])


def test_dft_2d_trivial():
    np.testing.assert_allclose(core.dft_2d(np.ones((2, 2))), [[4, 0], [0, 0]], atol=1e-14)
    impulse = np.zeros((2, 3))  # 3 columns x 2 rows
    impulse[0, 0] = 1
    np.testing.assert_allclose(core.dft_2d(impulse), np.ones((2, 3)), atol=1e-14)


def test_dft_2d_is_row_then_column_dft(rng):
    f = random_complex(rng, 3, 4)
    rows_done = np.array([core.dft_1d(row) for row in f])
    both = np.array([core.dft_1d(col) for col in rows_done.T]).T
    assert rel_max_err(core.dft_2d(f), both) < 1e-12


def test_dft_2d_round_trip(rng):
    f = random_complex(rng, 5, 6)
    assert rel_max_err(core.idft_2d(core.dft_2d(f)), f) < 1e-10


def test_dft_2d_rejects_bad_rank():
    with pytest.raises(DomainError):
        core.dft_2d(np.ones(4))


def test_eval_2d_at_integer_bins(rng):
    f = random_complex(rng, 3, 4)
    spectrum = core.dft_2d(f)
    assert abs(core.eval_2d_at(f, 1, 0) - spectrum[0, 1]) < 1e-10 * np.max(np.abs(spectrum))
    assert core.eval_2d_at(f, 0, 0) == pytest.approx(f.sum(), abs=1e-12)


def test_eval_2d_at_matches_loop_at_fractional_points(rng):
    f = random_complex(rng, 3, 4)
    rows = f.tolist()
    for nu_u, nu_v in [(1 + 2 / 3, 2), (0.3, 1.7), (-2.25, 5.5)]:
        assert abs(core.eval_2d_at(f, nu_u, nu_v) - loop_eval_2d(rows, nu_u, nu_v)) < 1e-12


def test_eval_md_reduces_to_eval_2d(rng):
    f = random_complex(rng, 3, 4)
    field = FlatField.from_array(f)
    for nus in [(0, 0), (1.25, 2), (3.9, 0.1)]:
        assert abs(core.eval_md_at(field, nus) - core.eval_2d_at(f, *nus)) < 1e-12


def test_eval_md_trivial(rng):
    f = random_complex(rng, 2, 3, 4)
    field = FlatField.from_array(f)
    assert core.eval_md_at(field, (0, 0, 0)) == pytest.approx(f.sum(), abs=1e-12)
    impulse = np.zeros((2, 2, 2))
    impulse[0, 0, 0] = 1
    field = FlatField.from_array(impulse)
    for nus in [(0, 0, 0), (0.5, 1.3, 1), (1.7, 0.2, 0.9)]:
        assert core.eval_md_at(field, nus) == pytest.approx(1)
    with pytest.raises(DomainError):
        core.eval_md_at(field, (0, 0))


def test_bit_reversal():
    np.testing.assert_array_equal(core.bit_reversal_permutation(8), [0, 4, 2, 6, 1, 5, 3, 7])
    np.testing.assert_array_equal(core.bit_reversal_permutation(1), [0])


@pytest.mark.parametrize("n", [2**k for k in range(11)])
def test_fft_matches_dft(n, rng):
    x = random_complex(rng, n)
    assert rel_max_err(core.fft_1d(x), core.dft_1d(x)) < 1e-9
    assert rel_max_err(core.ifft_1d(x), core.idft_1d(x)) < 1e-9


def test_fft_trivial():
    np.testing.assert_array_equal(core.fft_1d([3 - 2j]), [3 - 2j])
    spectrum = core.fft_1d(np.full(16, 2.5))
    assert spectrum[0] == pytest.approx(40)
    assert np.max(np.abs(spectrum[1:])) < 1e-13


@pytest.mark.parametrize("n", [3, 6, 12, 1000])
def test_fft_rejects_other_lengths(n):
    with pytest.raises(UnsupportedLengthError):
        core.fft_1d(np.ones(n))


def test_tally_counts_and_resets(rng):
    tally = MultTally()
    x = random_complex(rng, 64)
    core.fft_1d(x, tally)
    first = tally.real_multiplications
    # 6 stages of 32 butterflies x 4, plus one multiply per twiddle angle (63)
    assert first == 6 * 32 * 4 + 63
    core.fft_1d(x, tally)
    assert tally.real_multiplications == 2 * first
    tally.reset()
    assert tally.real_multiplications == 0
    core.ifft_1d(x, tally)
    assert tally.real_multiplications == first + 2 * 64


# properties

signal_lengths = st.integers(min_value=1, max_value=40)


@settings(max_examples=40, deadline=None)
@given(n=signal_lengths, seed=st.integers(0, 2**32 - 1))
def test_parseval(n, seed):
    x = random_complex(np.random.default_rng(seed), n)
    energy = np.sum(np.abs(x) ** 2)
    assert abs(energy - np.sum(np.abs(core.dft_1d(x)) ** 2) / n) < 1e-9 * energy


@settings(max_examples=40, deadline=None)
@given(
    n=signal_lengths,
    seed=st.integers(0, 2**32 - 1),
    a=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
    b=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
)
def test_linearity(n, seed, a, b):
    rng = np.random.default_rng(seed)
    f, g = random_complex(rng, n), random_complex(rng, n)
    lhs = core.dft_1d(a * f + b * g)
    rhs = a * core.dft_1d(f) + b * core.dft_1d(g)
    assert np.max(np.abs(lhs - rhs)) < 1e-10 * max(1.0, np.max(np.abs(rhs)))


@settings(max_examples=40, deadline=None)
@given(n=signal_lengths, shift=st.integers(-50, 50), seed=st.integers(0, 2**32 - 1))
def test_shift_rule(n, shift, seed):
    f = random_complex(np.random.default_rng(seed), n)
    spectrum = core.dft_1d(f)
    phase = np.array([core.euler(shift * u / n) for u in range(n)])
    shifted = core.dft_1d(np.roll(f, shift))
    assert np.max(np.abs(shifted - phase * spectrum)) < 1e-10 * max(1.0, np.max(np.abs(spectrum)))


@settings(max_examples=15, deadline=None)
@given(n=st.integers(1, 6), m=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
def test_eval_2d_reproduces_every_integer_bin(n, m, seed):
    f = random_complex(np.random.default_rng(seed), m, n)
    spectrum = core.dft_2d(f)
    probe = np.array([[core.eval_2d_at(f, u, v) for u in range(n)] for v in range(m)])
    assert rel_max_err(probe, spectrum) < 1e-10
