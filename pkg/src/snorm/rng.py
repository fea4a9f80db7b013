"""SplitMix64: a tiny, fully specified 64-bit generator.

Chosen so that sampled suites reproduce bit-for-bit across
implementations.  The stream for ``seed`` is::

    state += 0x9E3779B97F4A7C15
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    out = z ^ (z >> 31)                         (all mod 2**64)

Bounded integers use rejection sampling on the top of the range, so they
are exactly uniform.
"""

import zlib
from fractions import Fraction

MASK = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def _mix(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed=0):
        self.state = int(seed) & MASK

    @classmethod
    def derive(cls, seed, *keys):
        """Independent stream for ``(seed, key1, key2, ...)``.

        String keys are folded in through their CRC-32.
        """
        state = int(seed) & MASK
        for key in keys:
            if isinstance(key, str):
                key = zlib.crc32(key.encode("utf-8"))
            state = _mix((state + GAMMA + (int(key) & MASK)) & MASK)
        return cls(state)

    def next_u64(self):
        self.state = (self.state + GAMMA) & MASK
        return _mix(self.state)

    def below(self, n):
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError(f"empty range: {n}")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n

    def randint(self, lo, hi):
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def chance(self, num, den):
        return self.below(den) < num

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def sample(self, lo, hi, k):
        """``k`` distinct integers from ``[lo, hi]``, sorted (Floyd's method)."""
        n = hi - lo + 1
        if not 0 <= k <= n:
            raise ValueError(f"cannot draw {k} from {n}")
        chosen = set()
        for j in range(n - k, n):
            t = self.below(j + 1)
            chosen.add(j if t in chosen else t)
        return sorted(lo + c for c in chosen)

    def rational(self, num_lo, num_hi, den_lo=1, den_hi=9):
        return Fraction(self.randint(num_lo, num_hi), self.randint(den_lo, den_hi))

    def nonzero_rational(self, bound=9, den_hi=9):
        num = self.randint(1, bound) * (1 if self.below(2) else -1)
        return Fraction(num, self.randint(1, den_hi))
