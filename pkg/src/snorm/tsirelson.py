"""The Tsirelson norm on ``c_00`` and blockwise comparisons with it.

The norm is the Figiel-Johnson implicit one::

    ||x|| = max(||x||_inf, 1/2 * sup sum_{j=1}^k ||E_j x||)

where the sup runs over intervals ``k <= E_1 < E_2 < ... < E_k``.  Taking
intervals instead of arbitrary finite sets gives the same value (each
``E_j`` may be replaced by its convex hull without decreasing
``||E_j x||``, by 1-unconditionality).

Only restrictions of ``x`` to runs of consecutive support points matter,
and a family whose single member covers the whole support contributes at
most ``||x|| / 2``, so the recursion always moves to strictly shorter
vectors and terminates with an exact rational.
"""

from dataclasses import dataclass
from fractions import Fraction

from snorm.errors import DomainError, SupportError
from snorm.numeric import format_scalar
from snorm.schreier import block_index, block_start, is_admissible
from snorm.vector import SparseVector, basis

_NEG = None


class TsirelsonNorm:
    """Callable computing the Tsirelson norm, with an optional memo.

    With ``cache=True`` values are memoized across calls, keyed by the
    (index, |coordinate|) pairs of the restricted vector.  With
    ``cache=False`` every sub-norm is recomputed, which is only practical
    for supports of a handful of points.
    """

    def __init__(self, cache=True):
        self._memo = {} if cache else None

    def __call__(self, x):
        key = tuple((i, abs(v)) for i, v in x.items())
        return self._norm(key)

    def cache_size(self):
        return 0 if self._memo is None else len(self._memo)

    def _norm(self, items):
        if self._memo is not None:
            hit = self._memo.get(items)
            if hit is not None:
                return hit
        value = self._compute(items)
        if self._memo is not None:
            self._memo[items] = value
        return value

    def _compute(self, items):
        S = len(items)
        if S == 0:
            return Fraction(0)
        linf = max(v for _, v in items)
        if S == 1:
            return linf

        piece = {}

        def t(a, b):
            # norm of the restriction to support positions [a, b)
            val = piece.get((a, b))
            if val is None:
                val = self._norm(items[a:b])
                piece[(a, b)] = val
            return val

        # tiles[c][pos]: best sum over tilings of [pos, S) into <= c pieces
        tiles = [[_NEG] * (S + 1) for _ in range(S + 1)]
        for c in range(S + 1):
            tiles[c][S] = Fraction(0)
        for c in range(1, S + 1):
            row, prev = tiles[c], tiles[c - 1]
            for pos in range(S - 1, -1, -1):
                best = _NEG
                for e in range(pos + 1, S + 1):
                    if pos == 0 and e == S:
                        # the whole vector: never binding, and self-referential
                        continue
                    rest = prev[e]
                    if rest is _NEG:
                        continue
                    val = t(pos, e) + rest
                    if best is _NEG or val > best:
                        best = val
                row[pos] = best

        sup = Fraction(0)
        for start in range(S):
            c = min(items[start][0], S - start)
            val = tiles[c][start]
            if val is not _NEG and val > sup:
                sup = val
        return max(linf, sup / 2)


def norm_t(x):
    """Exact Tsirelson norm of ``x`` (fresh memo per call)."""
    return TsirelsonNorm()(x)


def direct_sum_norm(norms, weights, tnorm=None):
    """Norm of ``sum_n norms[n] * t_{weights[n]}`` in the Tsirelson space.

    This is the E-direct-sum norm of a tuple whose summands have the given
    norms, with ``E`` spanned by the unit vectors at ``weights``.
    """
    if len(norms) != len(weights):
        raise DomainError(
            f"{len(norms)} norms but {len(weights)} basis indices"
        )
    prev = 0
    for k in weights:
        if k <= prev:
            raise DomainError("basis indices must be strictly increasing and >= 1")
        prev = k
    vec = SparseVector(zip(weights, norms))
    return (tnorm or TsirelsonNorm())(vec)


@dataclass(frozen=True)
class SandwichReport:
    A: Fraction
    B: Fraction
    ratio: object
    lower_ok: bool
    upper_ok: bool

    @property
    def ok(self):
        return self.lower_ok and self.upper_ok

    def to_json(self):
        return {
            "A": format_scalar(self.A),
            "B": format_scalar(self.B),
            "ratio": None if self.ratio is None else format_scalar(self.ratio),
            "lower_ok": self.lower_ok,
            "upper_ok": self.upper_ok,
        }


def default_weights(count):
    """The choice ``k_n = m_{n+1} - 1`` for the first ``count`` blocks."""
    return [block_start(n + 1) - 1 for n in range(1, count + 1)]


def sandwich_check(xs, ks=None, tnorm=None):
    """Compare ``||sum x_n||`` with ``||sum ||x_n|| t_{k_n}||``.

    ``xs[n-1]`` must live in the dyadic block ``M_n`` and ``k_n`` in
    ``M_n`` as well.  Reports ``A = ||sum x_n||``, ``B`` the direct-sum
    norm, ``A/B`` and whether ``B/3 <= A <= 18 B``.
    """
    tnorm = tnorm or TsirelsonNorm()
    if ks is None:
        ks = default_weights(len(xs))
    if len(ks) != len(xs):
        raise DomainError(f"{len(xs)} blocks but {len(ks)} basis indices")
    total = SparseVector()
    for n, (x, k) in enumerate(zip(xs, ks), start=1):
        lo, hi = block_start(n), block_start(n + 1)
        bad = [j for j in x.support() if not lo <= j < hi]
        if bad:
            raise SupportError(
                f"summand {n} has support {bad} outside M_{n} = [{lo}, {hi})",
                block=n,
            )
        if not lo <= k < hi:
            raise DomainError(f"k_{n} = {k} is not in M_{n} = [{lo}, {hi})")
        total = total + x
    A = tnorm(total)
    B = direct_sum_norm([tnorm(x) for x in xs], ks, tnorm)
    ratio = A / B if B else None
    return SandwichReport(A, B, ratio, B / 3 <= A, A <= 18 * B)


@dataclass(frozen=True)
class L1Report:
    norm: Fraction
    l1: Fraction
    lower_ok: bool
    upper_ok: bool

    @property
    def ok(self):
        return self.lower_ok and self.upper_ok

    def to_json(self):
        return {
            "norm": format_scalar(self.norm),
            "l1": format_scalar(self.l1),
            "lower_ok": self.lower_ok,
            "upper_ok": self.upper_ok,
        }


def l1_comparison_on_admissible(x, tnorm=None):
    """Check ``l1(x)/2 <= ||x||_T <= l1(x)`` for ``x`` with admissible support."""
    supp = x.support()
    if not supp or not is_admissible(supp):
        raise SupportError(f"support {list(supp)} is not admissible")
    norm = (tnorm or TsirelsonNorm())(x)
    l1 = x.l1()
    return L1Report(norm, l1, l1 / 2 <= norm, norm <= l1)


def unit_block_vectors(count):
    """``t_{m_n}`` for the first ``count`` blocks (a simple blockwise input)."""
    return [basis(block_start(n)) for n in range(1, count + 1)]


__all__ = [
    "L1Report",
    "SandwichReport",
    "TsirelsonNorm",
    "block_index",
    "default_weights",
    "direct_sum_norm",
    "l1_comparison_on_admissible",
    "norm_t",
    "sandwich_check",
    "unit_block_vectors",
]
