import cmath

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rel_max_err(actual, expected):
    actual = np.asarray(actual)
    expected = np.asarray(expected)
    scale = np.max(np.abs(expected))
    err = np.max(np.abs(actual - expected))
    return err / scale if scale > 0 else err


def loop_dft(values, sign=-1):
    """Textbook double loop with cmath; shares nothing with the package."""
    n = len(values)
    return [
        sum(values[x] * cmath.exp(sign * 2j * cmath.pi * x * u / n) for x in range(n))
        for u in range(n)
    ]


def loop_eval_2d(rows, nu_u, nu_v):
    """sum_y sum_x exp(-2 pi i (x nu_u / N + y nu_v / M)) f[y][x]"""
    m = len(rows)
    n = len(rows[0])
    total = 0j
    for y in range(m):
        for x in range(n):
            total += rows[y][x] * cmath.exp(-2j * cmath.pi * (x * nu_u / n + y * nu_v / m))
    return total


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(name, ok, detail):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
