"""The Baernstein norm on ``c_00`` with optimal-partition certificates.

``||x||_{B_p}`` is the supremum of ``(sum_j mu(x, N_j)**p)**(1/p)`` over
successive families ``N_1 < ... < N_k`` of admissible sets.  In exact mode
(integer ``p >= 2``) everything is compared through p-th powers, so no root
is ever taken and results are exact rationals.  A real ``p`` selects float
mode, which runs the same dynamic program in double precision.

Dynamic program
---------------
Let ``s_1 < ... < s_S`` be the support of ``x`` and ``a_t = |x_{s_t}|``.
Stripping zero coordinates from an admissible set keeps it admissible (its
size drops, its minimum rises), so optimal families may be taken inside the
support.  Give each set the window ``[min N_j, min N_{j+1})`` (the last one
runs to the end of the support).  Inside a window starting at ``s_i`` the
best admissible set keeps ``s_i`` plus the ``s_i - 1`` largest coordinates of
the rest of the window.  Hence, with ``f(S+1) = 0``::

    f(i) = max_{i < j <= S+1}  best(i, j)**p + f(j)
    best(i, j) = a_i + (sum of the s_i - 1 largest a_t, i < t < j)

Skipping position ``i`` is never better than starting a set there, because
``a_i > 0``.  ``f`` is non-increasing, which lets the inner loop stop once
an upper bound on ``best(i, .)`` cannot lift ``f(j)`` past the incumbent.
The property tests check all of this against :func:`norm_bp_bruteforce`.

Ties are broken towards the smallest window end at each step, which makes
certificates the lexicographically smallest maximizers in the
(start, window end) encoding.
"""

import heapq
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from snorm.errors import DomainError
from snorm.numeric import DEFAULT_DIGITS, format_scalar, render_root
from snorm.schreier import validate_partition
from snorm.vector import mu

BRUTEFORCE_CAP = 16


def resolve_p(p):
    """Return ``(p, exact)`` for an exponent; exact mode needs an integer."""
    if isinstance(p, bool):
        raise DomainError(f"invalid exponent {p!r}")
    if isinstance(p, Fraction) and p.denominator == 1:
        p = p.numerator
    if isinstance(p, int):
        if p < 2:
            raise DomainError(f"exact mode needs an integer p >= 2, got {p}")
        return p, True
    if isinstance(p, float):
        if not (p > 1 and math.isfinite(p)):
            raise DomainError(f"p must lie in (1, inf), got {p}")
        return p, False
    raise DomainError(f"unsupported exponent type {type(p).__name__}")


@dataclass(frozen=True)
class NormResult:
    """``||x||**p`` together with a family of sets attaining it.

    ``value_p_power`` is a :class:`Fraction` in exact mode and a float in
    float mode.  ``certificate`` is a tuple of index tuples.
    """

    value_p_power: object
    value_decimal: str
    certificate: tuple
    p: object

    @property
    def exact(self):
        return isinstance(self.value_p_power, Fraction)

    def to_json(self):
        if self.exact:
            p_power = format_scalar(self.value_p_power)
        else:
            p_power = repr(float(self.value_p_power))
        return {
            "p": self.p,
            "p_power": p_power,
            "decimal": self.value_decimal,
            "certificate": [list(s) for s in self.certificate],
        }


def _decimal(value, p, exact, digits):
    if exact:
        return render_root(value, p, digits)
    return f"{value ** (1.0 / p):.{digits}f}"


def nu_p(x, partition, p):
    """``sum_j mu(x, N_j)**p`` for a valid partition (p-th power of nu_p)."""
    p, exact = resolve_p(p)
    validate_partition(partition)
    if exact:
        return sum((mu(x, N) ** p for N in partition), Fraction(0))
    return math.fsum(float(mu(x, N)) ** p for N in partition)


def _scaled(x, exact):
    """Support indices and magnitudes; exact magnitudes are scaled to ints."""
    idx = [i for i, _ in x.items()]
    mags = [abs(v) for _, v in x.items()]
    if not exact:
        return idx, [float(m) for m in mags], 1
    den = 1
    for m in mags:
        den = math.lcm(den, m.denominator)
    return idx, [m.numerator * (den // m.denominator) for m in mags], den


def _top_companions(idx, mags, i, j, k):
    """Indices of the ``k`` largest magnitudes strictly between i and j."""
    pool = sorted(range(i + 1, j), key=lambda t: (-mags[t], t))[:k]
    return tuple(idx[t] for t in [i] + sorted(pool))


# windows at least this long go through the float screen
_SCREEN_MIN = 48
_UNIT = 2.0**-53


def _suffix_top_bounds(idx, a, zero):
    """``a_i + (sum of the idx_i - 1 largest a_t, t > i)`` for every ``i``.

    ``idx_i - 1`` shrinks as ``i`` moves left, so one min-heap holding the
    current top elements is enough: insert, then drop the smallest.
    """
    S = len(a)
    out = [zero] * S
    top, total = [], zero
    for i in range(S - 1, -1, -1):
        if i + 1 < S:
            heapq.heappush(top, a[i + 1])
            total += a[i + 1]
        k = idx[i] - 1
        while len(top) > k:
            total -= heapq.heappop(top)
        out[i] = a[i] + total
    return out


def norm_bp(x, p, digits=DEFAULT_DIGITS):
    """Exact ``B_p`` norm of ``x`` with a certifying partition.

    Returns a :class:`NormResult`; the zero vector has norm 0 and an empty
    certificate.
    """
    p, exact = resolve_p(p)
    if not x:
        zero = Fraction(0) if exact else 0.0
        return NormResult(zero, _decimal(zero, p, exact, digits), (), p)
    idx, a, den = _scaled(x, exact)
    f, end = _solve(idx, a, p, exact)
    S = len(a)
    cert = []
    i = 0
    while i < S:
        j = end[i]
        cert.append(_top_companions(idx, a, i, j, idx[i] - 1))
        i = j
    value = Fraction(f[0], den**p) if exact else f[0]
    return NormResult(value, _decimal(value, p, exact, digits), tuple(cert), p)


def _solve(idx, a, p, exact):
    """Run the dynamic program; returns ``f`` and the chosen window ends."""
    S = len(a)
    zero = 0 if exact else 0.0
    prefix = [zero]
    for v in a:
        prefix.append(prefix[-1] + v)
    bounds = _suffix_top_bounds(idx, a, zero)

    screen = exact and S > _SCREEN_MIN
    if screen:
        # normalized so every candidate value lies in [0, 1]
        T = prefix[S]
        Tp = T**p
        pn = np.array([v / T for v in prefix])
        fn = np.zeros(S + 1)
        # float error of one candidate is below (5p + 6) units; keep 4x that
        margin = 4 * (5 * p + 6) * _UNIT

    f = [zero] * (S + 1)
    end = [S] * S
    for i in range(S - 1, -1, -1):
        k = idx[i] - 1
        ai = a[i]
        bound_p = bounds[i] ** p
        base = prefix[i + 1]
        best = -1
        best_j = i + 1
        full = min(S, i + 1 + k)
        if screen and full - i >= _SCREEN_MIN:
            js = slice(i + 1, full + 1)
            vals = (ai / T + (pn[js] - pn[i + 1])) ** p + fn[js]
            hits = np.flatnonzero(vals >= vals.max() - margin)
            for h in hits.tolist():
                j = i + 1 + h
                val = (ai + prefix[j] - base) ** p + f[j]
                if val > best:
                    best, best_j = val, j
            j = full + 1
        else:
            j = i + 1
            while j <= full:
                fj = f[j]
                if best >= 0 and bound_p + fj <= best:
                    break
                val = (ai + prefix[j] - base) ** p + fj
                if val > best:
                    best, best_j = val, j
                j += 1
            else:
                j = full + 1
        if j == full + 1 and j <= S and bound_p + f[j] > best:
            # window now exceeds k companions: keep a min-heap of the top k
            heap = a[i + 1 : j - 1]
            heapq.heapify(heap)
            top = sum(heap, zero)
            while j <= S:
                v = a[j - 1]
                if k and v > heap[0]:
                    top += v - heapq.heapreplace(heap, v)
                fj = f[j]
                if bound_p + fj <= best:
                    break
                val = (ai + top) ** p + fj
                if val > best:
                    best, best_j = val, j
                j += 1
        f[i] = best
        end[i] = best_j
        if screen:
            fn[i] = best / Tp
    return f, end


def _admissible_sets(limit):
    """Every admissible subset of ``[1, limit]``."""
    for m in range(1, limit + 1):
        rest = range(m + 1, limit + 1)
        for size in range(0, min(m - 1, limit - m) + 1):
            for comp in itertools.combinations(rest, size):
                yield (m,) + comp


def norm_bp_bruteforce(x, p, cap=BRUTEFORCE_CAP, digits=DEFAULT_DIGITS):
    """Reference ``B_p`` norm by enumerating every successive admissible family.

    Only meant as a test oracle: it walks all families of admissible sets
    inside ``[1, max supp x]`` and refuses vectors reaching past ``cap``.
    """
    p, exact = resolve_p(p)
    limit = x.max_index()
    if limit > cap:
        raise DomainError(
            f"brute force is capped at max index {cap}; vector reaches {limit}"
        )
    zero = Fraction(0) if exact else 0.0
    if not x:
        return NormResult(zero, _decimal(zero, p, exact, digits), (), p)

    mags = {i: abs(v) if exact else float(abs(v)) for i, v in x.items()}
    by_min = [[] for _ in range(limit + 2)]
    for s in _admissible_sets(limit):
        weight = sum((mags.get(j, zero) for j in s), zero) ** p
        by_min[s[0]].append((s, weight))

    best = [zero, ()]
    chain = []

    def walk(start, acc):
        if acc > best[0]:
            best[0], best[1] = acc, tuple(chain)
        for m in range(start, limit + 1):
            for s, w in by_min[m]:
                chain.append(s)
                walk(s[-1] + 1, acc + w)
                chain.pop()

    walk(1, zero)
    cert = []
    for s in best[1]:
        kept = tuple(j for j in s if j in mags)
        if kept:
            cert.append(kept)
    value = best[0]
    return NormResult(value, _decimal(value, p, exact, digits), tuple(cert), p)


def closed_form_yqr_norm(q, r, p):
    """``sum_{n=q}^{r} n**-p``, the p-th power of ``||y_{q,r}||``."""
    if q < 1 or q > r:
        raise DomainError(f"need 1 <= q <= r, got q={q}, r={r}")
    p, exact = resolve_p(p)
    if exact:
        return sum((Fraction(1, n**p) for n in range(q, r + 1)), Fraction(0))
    return math.fsum(n**-p for n in range(q, r + 1))


class CertificateError(AssertionError):
    """A certificate failed to replay to the value it claims."""


def certified_norm(x, p, digits=DEFAULT_DIGITS):
    """:func:`norm_bp`, with the certificate replayed through :func:`nu_p`."""
    res = norm_bp(x, p, digits)
    if res.certificate or res.exact:
        replay = nu_p(x, res.certificate, res.p)
        ok = replay == res.value_p_power if res.exact else math.isclose(
            replay, res.value_p_power, rel_tol=1e-9, abs_tol=1e-300
        )
        if not ok:
            raise CertificateError(
                f"certificate replays to {replay}, claimed {res.value_p_power}"
            )
    return res
