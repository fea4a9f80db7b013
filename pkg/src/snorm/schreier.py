"""Schreier-admissible sets and the dyadic blocking of the positive integers.

Index sets are plain tuples of strictly increasing positive integers
(1-based, so ``1`` is the first basis index).  The dyadic blocks are
``M_n = [2**(n-1), 2**n)``, each of which is admissible.
"""

from snorm.errors import DomainError, InvalidPartitionError

IndexSet = tuple


def as_index_set(elements):
    """Return ``elements`` as a validated, strictly increasing tuple.

    Raises :class:`DomainError` if an element is not a positive integer or
    the sequence is not strictly increasing.
    """
    s = tuple(elements)
    prev = 0
    for j in s:
        if isinstance(j, bool) or not isinstance(j, int):
            raise DomainError(f"index {j!r} is not an integer")
        if j <= prev:
            if j < 1:
                raise DomainError(f"index {j} is not a positive integer")
            raise DomainError(f"indices not strictly increasing at {j}")
        prev = j
    return s


def is_admissible(s):
    """True iff ``|s| <= min s``.  The empty set is rejected, not ``False``."""
    if not s:
        raise DomainError("admissibility is undefined for the empty set")
    return len(s) <= s[0]


def is_successive(sets):
    """True iff ``max`` of each set is below ``min`` of the next."""
    for a, b in zip(sets, sets[1:]):
        if not a or not b:
            raise DomainError("successive families consist of non-empty sets")
        if a[-1] >= b[0]:
            return False
    return True


def validate_partition(sets):
    """Check that ``sets`` is a successive family of admissible sets.

    Raises :class:`InvalidPartitionError` naming the first offending
    member (0-based position in ``index``).
    """
    prev_max = 0
    for i, s in enumerate(sets):
        if not s:
            raise InvalidPartitionError(f"set #{i} is empty", index=i)
        if list(s) != sorted(set(s)) or s[0] < 1:
            raise InvalidPartitionError(
                f"set #{i} {list(s)} is not a strictly increasing set of "
                "positive integers",
                index=i,
            )
        if len(s) > s[0]:
            raise InvalidPartitionError(
                f"set #{i} {list(s)} is not admissible: {len(s)} > {s[0]}",
                index=i,
            )
        if s[0] <= prev_max:
            raise InvalidPartitionError(
                f"set #{i} {list(s)} does not lie after the previous set "
                f"(previous max {prev_max})",
                index=i,
            )
        prev_max = s[-1]


def block_start(n):
    """Lower endpoint ``m_n = 2**(n-1)`` of the n-th dyadic block."""
    if n < 1:
        raise DomainError(f"block number must be >= 1, got {n}")
    return 1 << (n - 1)


def block(n):
    """The n-th dyadic block ``M_n`` as an index set."""
    return tuple(range(block_start(n), 1 << n))


def block_index(j):
    """The unique ``n`` with ``2**(n-1) <= j < 2**n``."""
    if j < 1:
        raise DomainError(f"index must be >= 1, got {j}")
    return j.bit_length()


def uep(N):
    """Upper end points ``2**k - 1`` of the blocks ``M_k`` that ``N`` meets."""
    if not N:
        raise DomainError("uep is defined for non-empty sets")
    out = []
    last = 0
    for j in N:
        k = j.bit_length()
        if k != last:
            out.append((1 << k) - 1)
            last = k
    return tuple(out)
