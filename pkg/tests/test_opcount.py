import pytest

from flatspectra.errors import DomainError
from flatspectra.opcount import compare, count_line, measured_mults, model_mults
from flatspectra.skew import Shape


@pytest.mark.parametrize("n, expected", [(256, 5116), (65536, 2359292), (2, 8)])
def test_model_mults(n, expected):
    assert model_mults(n) == expected


@pytest.mark.parametrize("n", [0, 1, 3, 100])
def test_model_rejects(n):
    with pytest.raises(DomainError):
        model_mults(n)


def test_compare_256():
    c = compare(Shape(256, 256))
    (conv,) = c.conventional
    assert (conv.basic_op_mults, conv.quantity, conv.total_mults) == (5116, 512, 2619392)
    assert (c.single_1d.basic_op_mults, c.single_1d.quantity) == (2359292, 1)
    assert c.single_1d.total_mults == 2359292
    assert round(c.savings_fraction, 2) == 0.10
    assert c.savings_fraction == pytest.approx(1 - 2359292 / 2619392)


def test_compare_2x2():
    c = compare(Shape(2, 2))
    assert c.conventional_total == 32
    assert c.single_1d.total_mults == 28


def test_compare_rectangular():
    c = compare(Shape(256, 64))
    rows, cols = c.conventional
    assert rows.total_mults == model_mults(256) * 64
    assert cols.total_mults == model_mults(64) * 256
    assert c.single_1d.total_mults == model_mults(256 * 64)
    assert 0 < c.savings_fraction < 1


@pytest.mark.parametrize("dims", [(3, 4), (4, 4, 4), (1, 4)])
def test_compare_rejects(dims):
    with pytest.raises(DomainError):
        compare(Shape(dims))


def test_savings_sweep_decreases():
    sizes = [2**k for k in range(6, 13)]
    savings = [compare(Shape(n, n)).savings_fraction for n in sizes]
    assert all(0 < s < 0.15 for s in savings)
    assert all(a > b for a, b in zip(savings, savings[1:]))
    for n in sizes:
        c = compare(Shape(n, n))
        assert c.single_1d.total_mults < c.conventional_total


def test_table_layout():
    text = compare(Shape(256, 256)).table()
    assert "5,116" in text and "2,359,292" in text and "2,619,392" in text
    assert "10%" in text and "512" in text


def test_measured_mults():
    assert measured_mults(256) == measured_mults(256, seed=5)
    assert measured_mults(65536) / (measured_mults(256) * 512) < 1
    with pytest.raises(DomainError):
        measured_mults(1)


def test_count_line():
    n, model, measured = count_line(256).split(",")
    assert (int(n), int(model), int(measured)) == (256, 5116, measured_mults(256))
