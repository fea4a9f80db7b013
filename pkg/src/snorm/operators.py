"""Finite-rank and blockwise-diagonal operators on ``c_00``.

Operators are stored extensionally so they can be evaluated exactly and
serialized: a :class:`FiniteRankOperator` is a sum of rank-one terms
``v (x) b*_i : y -> y_i v``, and a :class:`DiagonalSpec` holds one sparse
matrix per dyadic block.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from snorm.baernstein import certified_norm, resolve_p
from snorm.errors import DomainError, SupportError
from snorm.numeric import format_scalar, to_scalar
from snorm.schreier import block, block_index, block_start, uep
from snorm.vector import SparseVector, basis, mu


@dataclass(frozen=True)
class RankOneTerm:
    vector: SparseVector
    functional_index: int

    def __post_init__(self):
        if not self.vector:
            raise DomainError("rank-one terms need a non-zero vector")
        if self.functional_index < 1:
            raise DomainError(f"functional index must be >= 1, got {self.functional_index}")


class FiniteRankOperator:
    """``y -> sum_t y[t.functional_index] * t.vector``.

    Terms sharing a functional index are merged, and terms that cancel to
    zero are dropped, so the stored form is canonical.
    """

    def __init__(self, terms=()):
        merged = {}
        for t in terms:
            if isinstance(t, tuple):
                t = RankOneTerm(*t)
            acc = merged.get(t.functional_index)
            merged[t.functional_index] = t.vector if acc is None else acc + t.vector
        self._terms = tuple(
            RankOneTerm(v, i) for i, v in sorted(merged.items()) if v
        )

    @property
    def terms(self):
        return self._terms

    def apply(self, y):
        out = SparseVector()
        for t in self._terms:
            c = y[t.functional_index]
            if c:
                out = out + c * t.vector
        return out

    __call__ = apply

    def max_block(self):
        """Largest dyadic block touched by a functional or a vector."""
        n = 0
        for t in self._terms:
            n = max(n, block_index(t.functional_index), block_index(t.vector.max_index()))
        return n

    def __eq__(self, other):
        if not isinstance(other, FiniteRankOperator):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self):
        return f"FiniteRankOperator({list(self._terms)!r})"

    def to_json(self):
        return {
            "terms": [
                {"vector": t.vector.to_json(), "functional": t.functional_index}
                for t in self._terms
            ]
        }

    @classmethod
    def from_json(cls, data):
        try:
            terms = [
                RankOneTerm(SparseVector.from_json(t["vector"]), int(t["functional"]))
                for t in data["terms"]
            ]
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed operator JSON: {exc}") from exc
        return cls(terms)


def apply(op, y):
    return op.apply(y)


def _check_block_support(xs):
    for n, x in enumerate(xs, start=1):
        lo, hi = block_start(n), block_start(n + 1)
        bad = [j for j in x.support() if not lo <= j < hi]
        if bad:
            raise SupportError(
                f"x_{n} has support {bad} outside M_{n} = [{lo}, {hi})", block=n
            )


def delta_functional(n):
    """Index ``m_{n+1} - 1``: the last point of the n-th block."""
    return block_start(n + 1) - 1


def delta_op(xs):
    """``sum_n x_n (x) b*_{m_{n+1}-1}`` for a tuple of block vectors.

    ``xs[n-1]`` must be supported in ``M_n``; zero entries are skipped.
    """
    _check_block_support(xs)
    return FiniteRankOperator(
        RankOneTerm(x, delta_functional(n)) for n, x in enumerate(xs, start=1) if x
    )


def project_block(y, n):
    """Canonical basis projection onto ``F_n = span{b_j : j in M_n}``."""
    return y.restrict_interval(block_start(n), block_start(n + 1))


def theta(op, n_max=None):
    """Left inverse of :func:`delta_op`: ``(Q_n op b_{m_{n+1}-1})_{n <= n_max}``.

    ``n_max`` defaults to the largest block the operator touches.
    """
    if n_max is None:
        n_max = op.max_block()
    return [project_block(op.apply(basis(delta_functional(n))), n) for n in range(1, n_max + 1)]


class BlockEmbedding:
    """``(x_n) -> diag(x_n (x) b*_{f_n})`` and its left inverse.

    ``w`` and ``f`` are the unit vector and coordinate functional chosen in
    each block; they must pair to one, which for coordinates means
    ``w[n] == f[n]``.  The left inverse is ``U -> (Q_n U b_{w_n})``.
    """

    def __init__(self, w, f):
        if len(w) != len(f):
            raise DomainError(f"{len(w)} vectors but {len(f)} functionals")
        for n, (wi, fi) in enumerate(zip(w, f), start=1):
            lo, hi = block_start(n), block_start(n + 1)
            if not (lo <= wi < hi and lo <= fi < hi):
                raise DomainError(f"w_{n}={wi}, f_{n}={fi} must lie in M_{n} = [{lo}, {hi})")
            if wi != fi:
                raise DomainError(f"<w_{n}, f_{n}> = 0: indices {wi} and {fi} differ")
        self.w = tuple(w)
        self.f = tuple(f)

    def embed(self, xs):
        if len(xs) > len(self.f):
            raise DomainError(f"{len(xs)} summands but only {len(self.f)} functionals")
        _check_block_support(xs)
        return FiniteRankOperator(
            RankOneTerm(x, self.f[n]) for n, x in enumerate(xs) if x
        )

    def left_inverse(self, op):
        return [
            project_block(op.apply(basis(wi)), n)
            for n, wi in enumerate(self.w, start=1)
        ]


def generic_embedding(xs, w, f):
    """Build ``diag(x_n (x) f_n)``; returns the operator and its embedding."""
    emb = BlockEmbedding(w, f)
    return emb.embed(xs), emb


@dataclass(frozen=True)
class BlockOperator:
    """A linear map of ``F_n`` into itself, stored as ``{(row, col): value}``.

    Rows and columns are global indices inside ``M_n``.
    """

    n: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        lo, hi = block_start(self.n), block_start(self.n + 1)
        clean = {}
        for (r, c), v in self.entries.items():
            if not (lo <= r < hi and lo <= c < hi):
                raise SupportError(f"entry ({r}, {c}) leaves M_{self.n}", block=self.n)
            v = to_scalar(v)
            if v:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    def apply(self, y):
        out = {}
        for (r, c), v in self.entries.items():
            yc = y[c]
            if yc:
                out[r] = out.get(r, 0) + v * yc
        return SparseVector(out)

    def to_dense(self):
        idx = block(self.n)
        return [[format_scalar(self.entries.get((r, c), 0)) for c in idx] for r in idx]

    @classmethod
    def from_dense(cls, n, rows):
        idx = block(n)
        if len(rows) != len(idx) or any(len(r) != len(idx) for r in rows):
            raise DomainError(f"block {n} needs a {len(idx)}x{len(idx)} matrix")
        return cls(n, {
            (r, c): to_scalar(rows[a][b])
            for a, r in enumerate(idx)
            for b, c in enumerate(idx)
        })


def summation_u(n):
    """``sum_{j in M_n} a_j b_j -> (sum_j a_j) b_{m_n}``."""
    lo = block_start(n)
    return BlockOperator(n, {(lo, c): Fraction(1) for c in range(lo, 2 * lo)})


def identity_u(n):
    return BlockOperator(n, {(j, j): Fraction(1) for j in block(n)})


class DiagonalSpec:
    """``diag(U_n)``: one operator per block for a finite prefix of blocks.

    Blocks without an explicit operator act as zero or as the identity,
    depending on ``beyond``.
    """

    def __init__(self, blocks, beyond="zero"):
        if beyond not in ("zero", "identity"):
            raise DomainError(f"beyond must be 'zero' or 'identity', got {beyond!r}")
        if isinstance(blocks, dict):
            blocks = blocks.values()
        self.blocks = {}
        for u in blocks:
            if u.n in self.blocks:
                raise DomainError(f"block {u.n} given twice")
            self.blocks[u.n] = u
        self.beyond = beyond

    @classmethod
    def summation(cls, n_max):
        return cls([summation_u(n) for n in range(1, n_max + 1)])

    def apply(self, y):
        out = SparseVector()
        for n in sorted({block_index(j) for j in y.support()}):
            part = project_block(y, n)
            u = self.blocks.get(n)
            if u is not None:
                out = out + u.apply(part)
            elif self.beyond == "identity":
                out = out + part
        return out

    __call__ = apply

    def to_json(self):
        return {
            "beyond": self.beyond,
            "blocks": [
                {"n": n, "matrix": self.blocks[n].to_dense()} for n in sorted(self.blocks)
            ],
        }

    @classmethod
    def from_json(cls, data):
        try:
            blocks = [BlockOperator.from_dense(int(b["n"]), b["matrix"]) for b in data["blocks"]]
            return cls(blocks, data.get("beyond", "zero"))
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed diagonal JSON: {exc}") from exc


def diag_apply(spec, y):
    return spec.apply(y)


def block_operator_norm(u, p):
    """``||U||**p`` for ``U`` on ``(F_n, ||.||_{B_p})``.

    ``F_n`` is isometric to ``l_1^{m_n}`` (its index set is admissible), so
    the unit ball is the convex hull of ``+-b_j`` and the norm is attained
    at one of them.
    """
    p, _ = resolve_p(p)
    return max(certified_norm(u.apply(basis(j)), p).value_p_power for j in block(u.n))


def opnorm_lower_bound(op, witnesses, p):
    """``max_y ||op y||**p / ||y||**p`` over the witnesses (B_p norms)."""
    p, _ = resolve_p(p)
    best = None
    for k, y in enumerate(witnesses):
        if not y:
            raise DomainError(f"witness #{k} is the zero vector")
        ratio = certified_norm(op.apply(y), p).value_p_power / certified_norm(y, p).value_p_power
        if best is None or ratio > best:
            best = ratio
    if best is None:
        raise DomainError("at least one witness is required")
    return best


def bng_step4_check(xs, y, N):
    """``mu(Delta(xs) y, N) <= mu(y, uep(N))`` for block vectors of norm <= 1.

    Each ``x_n`` has admissible support, so its ``B_p`` norm is its
    ``l_1`` norm; that is what the precondition is checked against.
    """
    for n, x in enumerate(xs, start=1):
        if x.l1() > 1:
            raise DomainError(f"||x_{n}|| = {x.l1()} exceeds 1")
    lhs = mu(delta_op(xs).apply(y), N)
    return lhs <= mu(y, uep(tuple(N)))
