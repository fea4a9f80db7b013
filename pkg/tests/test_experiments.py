from fractions import Fraction as F

import pytest

from snorm.errors import DomainError
from snorm.experiments import GROWTH_COLUMNS, growth_row, harmonic, run_growth


def test_harmonic():
    assert harmonic(3, 6) == F(19, 20)
    assert harmonic(4, 8) == F(1, 4) + F(1, 5) + F(1, 6) + F(1, 7) + F(1, 8)


def test_q3_row_frozen():
    row = growth_row(3, 2)
    assert row.ok
    assert row.diag_norm == F(19, 20)
    # 1/9 + 1/16 + 1/25 + 1/36 = (400 + 225 + 144 + 100) / 3600
    assert row.y_norm_p_power == F(869, 3600)
    cells = row.cells()
    assert list(cells) == GROWTH_COLUMNS
    assert cells["diag_norm"] == "19/20"
    assert cells["y_norm_p_power"] == "869/3600"
    assert cells["diag_norm_decimal"] == "0.950000000000"
    assert cells["y_norm_decimal"] == "0.491313432433"
    assert cells["checks"] == "ok"


def test_default_table():
    table = run_growth()
    assert [r.q for r in table.rows] == [3, 4, 5]
    assert table.complete and table.ok
    assert table.trend == {"y_norm_decreasing": True, "ratio_increasing": True}
    ratios = [r.ratio_p_power for r in table.rows]
    assert ratios[0] > 1


def test_p3_rows():
    table = run_growth(p=3, q_min=3, q_max=4)
    assert table.ok
    # 1/27 + 1/64 + 1/125 + 1/216 over the common denominator 216000
    assert table.rows[0].y_norm_p_power == F(8000 + 3375 + 1728 + 1000, 216000) == F(1567, 24000)
    assert table.rows[0].diag_norm == F(19, 20)


def test_large_gate():
    with pytest.raises(DomainError, match="--large"):
        run_growth(q_min=8, q_max=8)


@pytest.mark.parametrize("lo,hi", [(2, 4), (4, 3), (3, 9)])
def test_bad_ranges(lo, hi):
    with pytest.raises(DomainError):
        run_growth(q_min=lo, q_max=hi, large=True)


def test_float_p_rejected():
    with pytest.raises(DomainError):
        run_growth(p=2.5)


def test_budget_marker():
    ticks = iter([0.0, 0.0, 100.0, 100.0, 100.0])
    table = run_growth(q_min=3, q_max=5, budget=1.0, clock=lambda: next(ticks))
    assert not table.complete
    assert not table.ok
    assert [r.q for r in table.rows] == [3]
    assert table.to_json()["complete"] is False
