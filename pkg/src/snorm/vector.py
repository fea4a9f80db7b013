"""Finitely supported sequences with exact rational coordinates."""

from fractions import Fraction

from snorm.errors import DomainError
from snorm.numeric import format_scalar, to_scalar
from snorm.schreier import block_start


class SparseVector:
    """An element of ``c_00``: finitely many non-zero rational coordinates.

    Indices are 1-based.  Zero coordinates are never stored, so two equal
    vectors have identical ``items()``.  Instances are immutable.
    """

    __slots__ = ("_items", "_map")

    def __init__(self, entries=None):
        if entries is None:
            entries = {}
        pairs = entries.items() if isinstance(entries, dict) else entries
        m = {}
        for idx, val in pairs:
            if isinstance(idx, bool) or not isinstance(idx, int) or idx < 1:
                raise DomainError(f"index {idx!r} is not a positive integer")
            s = m.get(idx, 0) + to_scalar(val)
            if s:
                m[idx] = s
            else:
                m.pop(idx, None)
        self._items = tuple(sorted(m.items()))
        self._map = dict(self._items)

    @classmethod
    def _from_sorted(cls, items):
        obj = cls.__new__(cls)
        obj._items = tuple(items)
        obj._map = dict(obj._items)
        return obj

    def items(self):
        return self._items

    def __getitem__(self, index):
        return self._map.get(index, Fraction(0))

    def __iter__(self):
        return iter(self._items)

    def __len__(self):
        return len(self._items)

    def __bool__(self):
        return bool(self._items)

    def support(self):
        return tuple(i for i, _ in self._items)

    def max_index(self):
        return self._items[-1][0] if self._items else 0

    def restrict(self, indices):
        keep = set(indices)
        return SparseVector._from_sorted((i, v) for i, v in self._items if i in keep)

    def restrict_interval(self, lo, hi):
        """Coordinates with ``lo <= index < hi``."""
        return SparseVector._from_sorted(
            (i, v) for i, v in self._items if lo <= i < hi
        )

    def l1(self):
        return sum((abs(v) for _, v in self._items), Fraction(0))

    def linf(self):
        return max((abs(v) for _, v in self._items), default=Fraction(0))

    def abs(self):
        return SparseVector._from_sorted((i, abs(v)) for i, v in self._items)

    def __add__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        m = dict(self._items)
        for i, v in other._items:
            s = m.get(i, 0) + v
            if s:
                m[i] = s
            else:
                m.pop(i, None)
        return SparseVector._from_sorted(sorted(m.items()))

    def __neg__(self):
        return SparseVector._from_sorted((i, -v) for i, v in self._items)

    def __sub__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, SparseVector):
            return NotImplemented
        c = to_scalar(scalar)
        if not c:
            return SparseVector()
        return SparseVector._from_sorted((i, c * v) for i, v in self._items)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        body = ", ".join(f"{i}: {v}" for i, v in self._items)
        return f"SparseVector({{{body}}})"

    def to_json(self):
        return {"entries": [[i, format_scalar(v)] for i, v in self._items]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or "entries" not in data:
            raise DomainError('vector JSON must be an object with "entries"')
        prev = 0
        pairs = []
        for k, entry in enumerate(data["entries"]):
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise DomainError(f"entry #{k} is not an [index, value] pair")
            idx, val = entry
            if isinstance(idx, bool) or not isinstance(idx, int) or idx <= prev:
                raise DomainError(
                    f"entry #{k}: indices must be strictly increasing positive "
                    f"integers (got {idx!r})"
                )
            prev = idx
            if isinstance(val, float):
                raise DomainError(f"entry #{k}: value {val!r} must be an exact rational")
            pairs.append((idx, to_scalar(val)))
        return cls(pairs)


def mu(x, N):
    """Sum of ``|x_j|`` over ``j`` in ``N``."""
    total = Fraction(0)
    for j in N:
        v = x[j]
        if v:
            total += abs(v)
    return total


def basis(n):
    """The unit vector ``b_n``."""
    if n < 1:
        raise DomainError(f"basis index must be >= 1, got {n}")
    return SparseVector._from_sorted([(n, Fraction(1))])


def x_block(n):
    """Normalized average of the n-th dyadic block, ``2**-(n-1)`` on ``M_n``."""
    lo = block_start(n)
    c = Fraction(1, lo)
    return SparseVector._from_sorted((j, c) for j in range(lo, 2 * lo))


def y_qr(q, r):
    """``sum_{n=q}^{r} x_block(n) / n``."""
    if q < 1:
        raise DomainError(f"q must be >= 1, got {q}")
    if q > r:
        raise DomainError(f"y_qr needs q <= r, got q={q}, r={r}")
    items = []
    for n in range(q, r + 1):
        lo = block_start(n)
        c = Fraction(1, n * lo)
        items.extend((j, c) for j in range(lo, 2 * lo))
    return SparseVector._from_sorted(items)
