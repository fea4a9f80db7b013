"""The growth experiment: ``diag(U_n)`` blows up on the vectors ``y_{q,2q}``.

For each ``q`` the row holds ``||y_{q,2q}||**p``, ``||diag(U_n) y_{q,2q}||``
and their ratio.  Every cell with a closed form is checked against it
before the row is emitted.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction

from snorm.baernstein import certified_norm, closed_form_yqr_norm, resolve_p
from snorm.errors import DomainError
from snorm.numeric import format_scalar, render_decimal, render_root
from snorm.operators import DiagonalSpec
from snorm.schreier import block_start, is_admissible
from snorm.vector import y_qr

Q_MIN, Q_MAX = 3, 8
LARGE_Q = 8
DEFAULT_BUDGET = 60.0

GROWTH_COLUMNS = [
    "q",
    "p",
    "y_norm_p_power",
    "y_norm_decimal",
    "diag_norm",
    "diag_norm_decimal",
    "ratio_decimal",
    "checks",
]


@dataclass
class GrowthRow:
    q: int
    p: int
    y_norm_p_power: Fraction
    diag_norm: Fraction
    checks: dict

    @property
    def ok(self):
        return all(self.checks.values())

    @property
    def ratio_p_power(self):
        return self.diag_norm**self.p / self.y_norm_p_power

    def cells(self):
        return {
            "q": self.q,
            "p": self.p,
            "y_norm_p_power": format_scalar(self.y_norm_p_power),
            "y_norm_decimal": render_root(self.y_norm_p_power, self.p),
            "diag_norm": format_scalar(self.diag_norm),
            "diag_norm_decimal": render_decimal(self.diag_norm),
            "ratio_decimal": render_root(self.ratio_p_power, self.p),
            "checks": "ok" if self.ok else ";".join(k for k, v in self.checks.items() if not v),
        }


@dataclass
class GrowthTable:
    p: int
    rows: list = field(default_factory=list)
    complete: bool = True
    trend: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.complete and all(r.ok for r in self.rows) and all(self.trend.values())

    def to_json(self):
        return {
            "p": self.p,
            "complete": self.complete,
            "ok": self.ok,
            "trend": self.trend,
            "rows": [r.cells() for r in self.rows],
        }


def harmonic(q, r):
    return sum((Fraction(1, n) for n in range(q, r + 1)), Fraction(0))


def growth_row(q, p):
    """Compute one row, with both the numerator and denominator cross-checked."""
    y = y_qr(q, 2 * q)
    den = certified_norm(y, p)
    image = DiagonalSpec.summation(2 * q).apply(y)
    num = certified_norm(image, p)
    h = harmonic(q, 2 * q)
    support = image.support()
    checks = {
        "y_closed_form": den.value_p_power == closed_form_yqr_norm(q, 2 * q, p),
        "diag_image_form": support == tuple(block_start(n) for n in range(q, 2 * q + 1))
        and all(image[block_start(n)] == Fraction(1, n) for n in range(q, 2 * q + 1)),
        "diag_support_admissible": is_admissible(support),
        "diag_equals_harmonic": num.value_p_power == h**p,
        "diag_above_half": h >= Fraction(q + 1, 2 * q) > Fraction(1, 2),
    }
    return GrowthRow(q, p, den.value_p_power, h, checks)


def run_growth(p=2, q_min=3, q_max=5, large=False, budget=DEFAULT_BUDGET, clock=time.monotonic):
    """Rows for ``q_min <= q <= q_max``.

    ``q = 8`` has support ``[128, 65535]`` and needs ``large=True``.  When
    the time budget runs out the table is returned with ``complete=False``.
    """
    p, exact = resolve_p(p)
    if not exact:
        raise DomainError("the growth experiment runs in exact mode (integer p)")
    if not Q_MIN <= q_min <= q_max <= Q_MAX:
        raise DomainError(f"q range must satisfy {Q_MIN} <= q_min <= q_max <= {Q_MAX}")
    if q_max >= LARGE_Q and not large:
        raise DomainError(f"q = {LARGE_Q} needs --large (support reaches 2**16 - 1)")
    table = GrowthTable(p)
    start = clock()
    for q in range(q_min, q_max + 1):
        if budget is not None and clock() - start > budget:
            table.complete = False
            break
        table.rows.append(growth_row(q, p))
    rows = table.rows
    table.trend = {
        "y_norm_decreasing": all(
            a.y_norm_p_power > b.y_norm_p_power for a, b in zip(rows, rows[1:])
        ),
        "ratio_increasing": all(
            a.ratio_p_power < b.ratio_p_power for a, b in zip(rows, rows[1:])
        ),
    }
    return table
