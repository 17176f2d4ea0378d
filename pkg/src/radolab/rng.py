"""Deterministic 64-bit mixing: the single source of pseudo-randomness.

Nothing in this package consumes ambient randomness.  Every "random"
object (Bernoulli graph, edge colouring, sampled test configuration) is a
pure function of an explicit 64-bit seed through the functions below, so
runs are bit-identical across platforms and Python versions.

The mixer is the splitmix64 finalizer:

    mix64(x):
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9   (mod 2**64)
        x = (x ^ (x >> 27)) * 0x94D049BB133111EB   (mod 2**64)
        return x ^ (x >> 31)

Unordered pairs are hashed as

    pair_value(seed, i, j) = mix64(mix64(mix64(seed ^ GOLDEN) ^ fold64(lo))
                                   ^ fold64(hi))

with (lo, hi) = (min(i,j), max(i,j)) and fold64 the 64-bit XOR fold of an
arbitrary-precision natural.  The same definitions appear in README.md;
changing them breaks frozen test values.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """splitmix64 finalizer, a bijection of 64-bit words."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return (x ^ (x >> 31)) & MASK64


def fold64(x: int) -> int:
    """XOR-fold an arbitrary-precision natural into 64 bits."""
    acc = x & MASK64
    x >>= 64
    while x:
        acc ^= x & MASK64
        x >>= 64
    return acc


def pair_value(seed: int, i: int, j: int) -> int:
    """Deterministic 64-bit value attached to the unordered pair {i, j}."""
    lo, hi = (i, j) if i <= j else (j, i)
    h = mix64((seed & MASK64) ^ GOLDEN)
    h = mix64(h ^ fold64(lo))
    return mix64(h ^ fold64(hi))


def _fnv1a(label: str) -> int:
    h = 0xCBF29CE484222325
    for b in label.encode("utf-8"):
        h = ((h ^ b) * 0x100000001B3) & MASK64
    return h


class SampleStream:
    """Counter-based stream of 64-bit values derived from (seed, label).

    Streams with distinct labels are independent, and a stream never
    depends on how many values other streams have drawn.
    """

    def __init__(self, seed: int, label: str = ""):
        self._base = mix64(fold64(seed) ^ _fnv1a(label))
        self._counter = 0

    def next64(self) -> int:
        v = mix64((self._base + self._counter * GOLDEN) & MASK64)
        self._counter += 1
        return v

    def below(self, n: int) -> int:
        """Draw from {0, ..., n-1}.  Modulo bias is irrelevant at our n."""
        if n <= 0:
            raise ValueError("need a positive range")
        return self.next64() % n

    def distinct_below(self, count: int, n: int, forbidden=()) -> list[int]:
        """Draw ``count`` distinct values below n, avoiding ``forbidden``."""
        if count + len(set(forbidden)) > n:
            raise ValueError("range too small for distinct draw")
        out: list[int] = []
        taken = set(forbidden)
        while len(out) < count:
            v = self.below(n)
            if v not in taken:
                taken.add(v)
                out.append(v)
        return out
