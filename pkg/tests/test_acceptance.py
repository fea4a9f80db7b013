"""One PASS/FAIL line per acceptance criterion, printed in the summary."""

import time
from fractions import Fraction as F

import pytest

from snorm.baernstein import certified_norm, norm_bp, norm_bp_bruteforce, nu_p
from snorm.experiments import run_growth
from snorm.operators import DiagonalSpec
from snorm.schreier import block, block_start, is_admissible
from snorm.suites import _rng, oracle_vector, random_admissible_set, random_vector_on, run_suite
from snorm.tsirelson import TsirelsonNorm, l1_comparison_on_admissible
from snorm.vector import y_qr


def yqr_cases(r_lo, r_hi):
    for q in range(3, r_hi + 1):
        for r in range(max(q, r_lo), r_hi + 1):
            for p in (2, 3):
                yield q, r, p


def yqr_ok(q, r, p):
    res = norm_bp(y_qr(q, r), p)
    expected = sum(F(1, n**p) for n in range(q, r + 1))
    return res.value_p_power == expected and res.certificate == tuple(block(n) for n in range(q, r + 1))


def test_c1_closed_form_small(criterion):
    start = time.monotonic()
    cases = list(yqr_cases(3, 6))
    bad = [c for c in cases if not yqr_ok(*c)]
    elapsed = time.monotonic() - start
    ok = not bad and elapsed <= 60
    criterion("C1 closed form r<=6", ok, f"{len(cases) - len(bad)}/{len(cases)}, {elapsed:.1f}s <= 60s")
    assert ok, bad


def test_c1_closed_form_large(criterion):
    cases = list(yqr_cases(7, 8))
    bad = [c for c in cases if not yqr_ok(*c)]
    criterion("C1 closed form r in {7,8}", not bad, f"{len(cases) - len(bad)}/{len(cases)}")
    assert not bad


def test_c2_oracle(criterion):
    start = time.monotonic()
    bad = []
    for case in range(200):
        x = oracle_vector(_rng(1, "oracle", case), 10)
        p = 2 + case % 2
        if norm_bp(x, p).value_p_power != norm_bp_bruteforce(x, p).value_p_power:
            bad.append(case)
    elapsed = time.monotonic() - start
    ok = not bad and elapsed <= 30
    criterion("C2 oracle equivalence", ok, f"{200 - len(bad)}/200, {elapsed:.1f}s <= 30s")
    assert ok, bad


def test_c3_unboundedness(criterion):
    table = run_growth(p=2, q_min=3, q_max=5)
    rows = table.rows
    checks = [
        table.ok,
        [r.q for r in rows] == [3, 4, 5],
        rows[0].diag_norm == F(19, 20),
    ]
    for r in rows:
        q = r.q
        image = DiagonalSpec.summation(2 * q).apply(y_qr(q, 2 * q))
        h = sum(F(1, n) for n in range(q, 2 * q + 1))
        checks.append(norm_bp(image, 2).value_p_power == h**2 == r.diag_norm**2)
        checks.append(h >= F(q + 1, 2 * q) > F(1, 2))
    checks.append(rows[0].y_norm_p_power > rows[1].y_norm_p_power > rows[2].y_norm_p_power)
    checks.append(rows[0].ratio_p_power < rows[1].ratio_p_power < rows[2].ratio_p_power)
    ok = all(checks)
    criterion("C3 unboundedness q in {3,4,5}", ok, "q=3 numerator 19/20")
    assert ok


def _suite_summary(name):
    report = run_suite(name, 1)
    detail = ", ".join(f"{p.name} {p.passed}/{p.total}" for p in report.properties)
    return report, detail


def _suite_line(criterion, label, name):
    report, detail = _suite_summary(name)
    criterion(label, report.ok, detail)
    return report.ok, report


def test_c4_delta_bounds(criterion):
    ok, report = _suite_line(criterion, "C4 delta bounds", "delta-bounds")
    totals = [p.total for p in report.properties]
    assert ok and totals == [100, 500]


def test_c5_uep(criterion):
    ok, report = _suite_line(criterion, "C5 uep admissibility", "uep")
    assert ok and report.properties[1].total == 10_000


def test_c6_calclemma(criterion):
    ok, report = _suite_line(criterion, "C6 calclemma strict", "calclemma")
    assert ok and report.properties[0].total == 1000


def test_c7_l1_on_admissible(criterion):
    bad = 0
    for case in range(100):
        rng = _rng(1, "c7", case)
        N = random_admissible_set(rng, 64)
        x = random_vector_on(rng, N)
        p = 2 + case % 2
        bad += norm_bp(x, p).value_p_power != x.l1() ** p
    ok = bad == 0
    criterion("C7 l1 on admissible supports", ok, f"{100 - bad}/100")
    assert ok


def test_c8_tsirelson(criterion):
    start = time.monotonic()
    sandwich, detail = _suite_summary("sandwich")
    tnorm = TsirelsonNorm()
    bad = 0
    for case in range(100):
        rng = _rng(1, "c8", case)
        x = random_vector_on(rng, random_admissible_set(rng, 16))
        bad += not l1_comparison_on_admissible(x, tnorm).ok
    elapsed = time.monotonic() - start
    ok = sandwich.ok and sandwich.properties[0].total == 50 and bad == 0 and elapsed <= 120
    criterion("C8 tsirelson sandwich", ok, f"{detail}, half-l1 {100 - bad}/100, {elapsed:.1f}s <= 120s")
    assert ok


def test_c9_roundtrips_and_replay(criterion):
    trips, detail = _suite_summary("roundtrip")
    vectors = [oracle_vector(_rng(1, "c9", case), 12) for case in range(100)]
    vectors += [y_qr(q, r) for q, r, _ in yqr_cases(3, 6)]
    bad = 0
    for i, x in enumerate(vectors):
        p = 2 + i % 2
        res = certified_norm(x, p)
        fam = res.certificate
        valid = all(is_admissible(N) for N in fam) and all(a[-1] < b[0] for a, b in zip(fam, fam[1:]))
        bad += not (valid and nu_p(x, fam, p) == res.value_p_power)
    ok = trips.ok and bad == 0
    criterion("C9 round trips", ok, f"{detail}, replay {len(vectors) - bad}/{len(vectors)}")
    assert ok


def test_diag_image_support_admissible():
    # the support of y_{q,2q} under diag is {m_q, ..., m_2q}, admissible for q >= 3
    for q in range(3, 9):
        assert is_admissible(tuple(block_start(n) for n in range(q, 2 * q + 1)))
