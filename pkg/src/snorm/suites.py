"""Seeded verification suites.

Each suite draws its cases from :class:`~snorm.rng.SplitMix64` streams
derived from ``(seed, suite, property, case index)``, so a case does not
depend on any other case and reports are reproducible byte for byte.
"""

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from snorm.baernstein import certified_norm, closed_form_yqr_norm, norm_bp_bruteforce
from snorm.errors import DomainError
from snorm.numeric import render_decimal
from snorm.operators import (
    BlockEmbedding,
    delta_functional,
    delta_op,
    theta,
    bng_step4_check,
)
from snorm.rng import SplitMix64
from snorm.schreier import block, block_start, is_admissible, uep
from snorm.tsirelson import TsirelsonNorm, l1_comparison_on_admissible, sandwich_check
from snorm.vector import SparseVector, basis, y_qr

MAX_FAILURES = 5


@dataclass
class PropertyResult:
    name: str
    passed: int = 0
    total: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.total > 0 and self.passed == self.total

    def record(self, ok, case=None):
        self.total += 1
        if ok:
            self.passed += 1
        elif len(self.failures) < MAX_FAILURES:
            self.failures.append(case)

    def to_json(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "total": self.total,
            "ok": self.ok,
            "failures": self.failures,
            "details": self.details,
        }


@dataclass
class SuiteReport:
    suite: str
    seed: int
    properties: list = field(default_factory=list)

    @property
    def ok(self):
        return bool(self.properties) and all(p.ok for p in self.properties)

    def to_json(self):
        return {
            "suite": self.suite,
            "seed": self.seed,
            "ok": self.ok,
            "properties": [p.to_json() for p in self.properties],
        }

    def csv_rows(self):
        for p in self.properties:
            yield [
                self.suite,
                p.name,
                p.passed,
                p.total,
                "pass" if p.ok else "fail",
                json.dumps(p.details, sort_keys=True, separators=(",", ":")),
            ]

    def lines(self):
        for p in self.properties:
            status = "PASS" if p.ok else "FAIL"
            yield f"{status} {self.suite}/{p.name} {p.passed}/{p.total}"


CSV_HEADER = ["suite", "property", "passed", "total", "status", "details"]


def _rng(seed, *keys):
    return SplitMix64.derive(seed, *keys)


def _p_for(case):
    return 2 + case % 2


# -- case generators -------------------------------------------------------


def oracle_vector(rng, length=10):
    """Numerators in [-9, 9] and denominators in [1, 9] on ``[1, length]``."""
    entries = {}
    for j in range(1, length + 1):
        num = rng.randint(-9, 9)
        den = rng.randint(1, 9)
        if num:
            entries[j] = Fraction(num, den)
    return SparseVector(entries)


def random_admissible_set(rng, max_index):
    """Admissible subset of ``[1, max_index]``; sizes are log-uniform."""
    m = rng.randint(1, max_index)
    limit = min(m, max_index - m + 1)
    size = rng.randint(1, min(limit, 1 << rng.randint(0, limit.bit_length())))
    if size == 1:
        return (m,)
    return (m,) + tuple(rng.sample(m + 1, max_index, size - 1))


def admissible_sets_upto(limit):
    """Every admissible subset of ``[1, limit]``, in order of minimum."""
    for m in range(1, limit + 1):
        for size in range(0, min(m - 1, limit - m) + 1):
            for comp in itertools.combinations(range(m + 1, limit + 1), size):
                yield (m,) + comp


def random_vector_on(rng, indices):
    return SparseVector({j: rng.nonzero_rational() for j in indices})


def random_block_vector(rng, n, max_points=None):
    size = len(block(n)) if max_points is None else min(max_points, len(block(n)))
    pts = rng.sample(block_start(n), block_start(n + 1) - 1, rng.randint(1, size))
    return random_vector_on(rng, pts)


def random_block_tuple(rng, max_blocks=5, unit=False):
    """Block vectors ``x_n`` in ``F_n``, each with ``l_1`` norm at most 1.

    Roughly a quarter of the entries are zero.  With ``unit=True`` every
    non-zero ``x_n`` is scaled to norm exactly 1.
    """
    count = rng.randint(1, max_blocks)
    xs = []
    for n in range(1, count + 1):
        if rng.chance(1, 4):
            xs.append(SparseVector())
            continue
        x = random_block_vector(rng, n, max_points=8)
        l1 = x.l1()
        if unit or l1 > 1:
            x = x * (1 / l1)
        xs.append(x)
    if not any(xs):
        xs[-1] = basis(delta_functional(count))
    return xs


def random_witness(rng, top):
    """Vector on ``[1, top]`` leaning on the block end points."""
    ends = [j for j in (delta_functional(n) for n in range(1, top.bit_length() + 1)) if j <= top]
    pts = set(j for j in ends if rng.chance(2, 3))
    extra = rng.randint(0, min(6, top))
    pts.update(rng.sample(1, top, extra))
    if not pts:
        pts.add(rng.choice(ends))
    return random_vector_on(rng, sorted(pts))


# -- suites -----------------------------------------------------------------


def suite_uep(seed=1, exhaustive=32, samples=10_000, max_index=1 << 14):
    report = SuiteReport("uep", seed)
    prop = PropertyResult("exhaustive-admissible", details={"max_index": exhaustive})
    for N in admissible_sets_upto(exhaustive):
        U = uep(N)
        ok = is_admissible(U) and len(U) <= len(N) and U[0] >= N[0]
        prop.record(ok, N)
    report.properties.append(prop)

    prop = PropertyResult("random-admissible", details={"max_index": max_index})
    for case in range(samples):
        N = random_admissible_set(_rng(seed, "uep", case), max_index)
        U = uep(N)
        ok = is_admissible(U) and len(U) <= len(N) and U[0] >= N[0]
        prop.record(ok, N)
    report.properties.append(prop)
    return report


def calclemma_holds(a, b, c, p):
    """``a**p + (b+c)**p < (a+b)**p + c**p``, exactly."""
    return a**p + (b + c) ** p < (a + b) ** p + c**p


def suite_calclemma(seed=1, cases=1000):
    report = SuiteReport("calclemma", seed)
    prop = PropertyResult("strict-inequality")
    for case in range(cases):
        rng = _rng(seed, "calclemma", case)
        c = rng.rational(1, 99, 1, 99)
        a = c + rng.rational(1, 99, 1, 99)
        b = rng.rational(1, 99, 1, 99)
        p = _p_for(case)
        prop.record(calclemma_holds(a, b, c, p), [str(a), str(b), str(c), p])
    report.properties.append(prop)
    return report


def suite_bng4(seed=1, cases=500):
    report = SuiteReport("bng4", seed)
    prop = PropertyResult("mu-delta-below-mu-uep")
    for case in range(cases):
        rng = _rng(seed, "bng4", case)
        xs = random_block_tuple(rng, unit=rng.chance(1, 2))
        top = block_start(len(xs) + 1) - 1
        y = random_witness(rng, top)
        N = rng.sample(1, top, rng.randint(1, min(12, top)))
        prop.record(bng_step4_check(xs, y, N), case)
    report.properties.append(prop)
    return report


def suite_delta_bounds(seed=1, lower_cases=100, upper_cases=500):
    report = SuiteReport("delta-bounds", seed)
    lower = PropertyResult("lower-bound-equality")
    for case in range(lower_cases):
        rng = _rng(seed, "delta-lower", case)
        xs = random_block_tuple(rng)
        p = _p_for(case)
        op = delta_op(xs)
        ok = True
        for k, x in enumerate(xs, start=1):
            if not x:
                continue
            image = op.apply(basis(delta_functional(k)))
            ok &= image == x
            ok &= certified_norm(image, p).value_p_power == certified_norm(x, p).value_p_power
        lower.record(ok, case)
    report.properties.append(lower)

    upper = PropertyResult("upper-bound-3")
    worst = Fraction(0)
    for case in range(upper_cases):
        rng = _rng(seed, "delta-upper", case)
        xs = random_block_tuple(rng)
        p = _p_for(case)
        top = block_start(len(xs) + 1) - 1
        y = random_witness(rng, top)
        lhs = certified_norm(delta_op(xs).apply(y), p).value_p_power
        xmax = max(certified_norm(x, p).value_p_power for x in xs)
        ynorm = certified_norm(y, p).value_p_power
        upper.record(lhs <= 3 * xmax * ynorm, case)
        worst = max(worst, lhs / (xmax * ynorm))
    upper.details["max_ratio_p_power"] = render_decimal(worst)
    report.properties.append(upper)
    return report


def suite_oracle(seed=1, cases=200, length=10):
    report = SuiteReport("oracle", seed)
    prop = PropertyResult("dp-equals-bruteforce", details={"support": [1, length]})
    for case in range(cases):
        x = oracle_vector(_rng(seed, "oracle", case), length)
        p = _p_for(case)
        fast = certified_norm(x, p).value_p_power
        slow = norm_bp_bruteforce(x, p).value_p_power
        prop.record(fast == slow, {"case": case, "dp": str(fast), "brute": str(slow)})
    report.properties.append(prop)
    return report


def random_sandwich_instance(rng):
    """Two to four blocks inside ``[1, 15]``, coordinates in {+-1, +-1/2}."""
    count = rng.randint(2, 4)
    xs, ks = [], []
    for n in range(1, count + 1):
        lo, hi = block_start(n), block_start(n + 1) - 1
        pts = rng.sample(lo, hi, rng.randint(1, hi - lo + 1))
        xs.append(SparseVector({j: rng.choice((1, -1, Fraction(1, 2), Fraction(-1, 2))) for j in pts}))
        ks.append(rng.randint(lo, hi) if rng.chance(1, 2) else hi)
    return xs, ks


def suite_sandwich(seed=1, cases=50):
    report = SuiteReport("sandwich", seed)
    prop = PropertyResult("third-to-eighteen")
    tnorm = TsirelsonNorm()
    ratios = []
    for case in range(cases):
        xs, ks = random_sandwich_instance(_rng(seed, "sandwich", case))
        rep = sandwich_check(xs, ks, tnorm)
        prop.record(rep.ok, {"case": case, **rep.to_json()})
        ratios.append(rep.ratio)
    prop.details["min_ratio"] = render_decimal(min(ratios))
    prop.details["max_ratio"] = render_decimal(max(ratios))
    report.properties.append(prop)
    return report


def suite_l1_blocks(seed=1, cases=100, bp_max_index=64, t_max_index=16):
    report = SuiteReport("l1-blocks", seed)
    prop = PropertyResult("bp-equals-l1", details={"max_index": bp_max_index})
    for case in range(cases):
        rng = _rng(seed, "l1-bp", case)
        x = random_vector_on(rng, random_admissible_set(rng, bp_max_index))
        p = _p_for(case)
        prop.record(certified_norm(x, p).value_p_power == x.l1() ** p, case)
    report.properties.append(prop)

    prop = PropertyResult("tsirelson-half-l1", details={"max_index": t_max_index})
    tnorm = TsirelsonNorm()
    for case in range(cases):
        rng = _rng(seed, "l1-t", case)
        x = random_vector_on(rng, random_admissible_set(rng, t_max_index))
        prop.record(l1_comparison_on_admissible(x, tnorm).ok, case)
    report.properties.append(prop)
    return report


def suite_closed_form(seed=1, r_max=6):
    report = SuiteReport("closed-form", seed)
    prop = PropertyResult("yqr-norm-and-certificate", details={"r_max": r_max})
    for q in range(3, r_max + 1):
        for r in range(q, r_max + 1):
            y = y_qr(q, r)
            for p in (2, 3):
                res = certified_norm(y, p)
                ok = res.value_p_power == closed_form_yqr_norm(q, r, p)
                ok &= res.certificate == tuple(block(n) for n in range(q, r + 1))
                prop.record(ok, [q, r, p])
    report.properties.append(prop)
    return report


def suite_roundtrip(seed=1, cases=100):
    report = SuiteReport("roundtrip", seed)
    prop = PropertyResult("theta-after-delta")
    for case in range(cases):
        xs = random_block_tuple(_rng(seed, "theta", case))
        prop.record(theta(delta_op(xs), len(xs)) == xs, case)
    report.properties.append(prop)

    prop = PropertyResult("embedding-left-inverse")
    for case in range(cases):
        rng = _rng(seed, "embedding", case)
        xs = random_block_tuple(rng)
        w = [rng.randint(block_start(n), block_start(n + 1) - 1) for n in range(1, len(xs) + 1)]
        emb = BlockEmbedding(w, w)
        prop.record(emb.left_inverse(emb.embed(xs)) == xs, case)
    report.properties.append(prop)
    return report


SUITES = {
    "uep": suite_uep,
    "calclemma": suite_calclemma,
    "bng4": suite_bng4,
    "delta-bounds": suite_delta_bounds,
    "oracle": suite_oracle,
    "sandwich": suite_sandwich,
    "l1-blocks": suite_l1_blocks,
    "closed-form": suite_closed_form,
    "roundtrip": suite_roundtrip,
}


def run_suite(name, seed=1, **options):
    try:
        fn = SUITES[name]
    except KeyError:
        raise DomainError(
            f"unknown suite {name!r}; available: {', '.join(SUITES)}"
        ) from None
    return fn(seed=seed, **options)
