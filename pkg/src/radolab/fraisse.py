"""Desk-scale prefixes of homogeneous countable structures.

Three constructions:

* the partition of the naturals by the first Cantor coordinate, whose
  classes are all unbounded (the homogeneous equivalence relation with
  infinitely many infinite parts);
* a staged generic partial order: each stage enumerates the one-point
  extension types over the current poset, bounded by a configuration
  size, and appends a fresh point realizing each type, with unconstrained
  relations left incomparable.  The limit of such stages is the
  homogeneous partial order, and the staged prefix is deterministic, so
  runs are reproducible;
* the inflation of a staged poset: point n decodes through Cantor
  unpairing to (fibre p, index i), and x reaches y iff their fibres are
  equal or strictly ordered in the poset.  Windows of the inflation
  materialize as honest finite preorders.

The extension audit quantifies over subsets of the first stage only:
later stages exist precisely to realize types over earlier points.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import isqrt
from typing import Iterable, Iterator

from .errors import ResourceLimitError, UsageError
from .sets import OmegaSet, TriState, bit_elements, fails, holds
from .topology import Preorder

MAX_POSET_ELEMENTS = 10**4


def cantor_pair(p: int, i: int) -> int:
    return (p + i) * (p + i + 1) // 2 + i


def cantor_unpair(n: int) -> tuple[int, int]:
    """Inverse of cantor_pair; returns (first, second)."""
    if n < 0:
        raise UsageError("unpairing needs a natural")
    w = (isqrt(8 * n + 1) - 1) // 2
    i = n - w * (w + 1) // 2
    return w - i, i


def partition_class(n: int) -> int:
    return cantor_unpair(n)[0]


def partition_window(c: int, window: int) -> OmegaSet:
    """Members of class c below the window."""
    return OmegaSet.window_set(
        (n for n in range(window) if partition_class(n) == c), window)


# ---------------------------------------------------------------------------
# the staged generic poset
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StagedPoset:
    """Strict partial order on {0..m-1} built in stages.

    ``above[i]`` is the bitmask of elements strictly above i.
    ``stage_sizes`` records the element count after each stage, so the
    first-stage prefix is elements below stage_sizes[0].  ``log`` keeps,
    per element, the (lower set, upper set) it was created to realize.
    """

    m: int
    above: tuple[int, ...]
    stage_sizes: tuple[int, ...]
    log: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()

    def __post_init__(self):
        if len(self.above) != self.m:
            raise UsageError("row count differs from m")
        for i in range(self.m):
            if self.above[i] & (1 << i):
                raise UsageError("strict order must be irreflexive")
            for j in bit_elements(self.above[i]):
                if self.above[j] & ~self.above[i]:
                    raise UsageError(f"not transitive through {i} < {j}")
                if self.above[j] & (1 << i):
                    raise UsageError(f"cycle between {i} and {j}")

    @classmethod
    def from_relations(cls, m: int, pairs: Iterable[tuple[int, int]]) -> "StagedPoset":
        """Hand-built single-stage poset from strict pairs, closed
        transitively."""
        above = [0] * m
        for x, y in pairs:
            above[x] |= 1 << y
        changed = True
        while changed:
            changed = False
            for i in range(m):
                acc = above[i]
                for j in bit_elements(above[i]):
                    acc |= above[j]
                if acc != above[i]:
                    above[i] = acc
                    changed = True
        return cls(m, tuple(above), (m,))

    def less(self, x: int, y: int) -> bool:
        return bool(self.above[x] & (1 << y))

    def below_mask(self, x: int) -> int:
        return sum(1 << j for j in range(self.m) if self.less(j, x))

    def first_stage(self) -> range:
        return range(self.stage_sizes[0] if self.stage_sizes else 0)

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs (transitive reduction) for the Hasse diagram."""
        out = []
        for i in range(self.m):
            for j in bit_elements(self.above[i]):
                if not any(self.less(i, k) and self.less(k, j)
                           for k in range(self.m)):
                    out.append((i, j))
        return out

    def to_dot(self) -> str:
        lines = ["digraph poset {", "  rankdir=BT;"]
        for i in range(self.m):
            lines.append(f"  p{i};")
        for i, j in self.covers():
            lines.append(f"  p{i} -> p{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_matrix_text(self) -> str:
        return "\n".join(
            "".join("1" if self.less(i, j) else "0" for j in range(self.m))
            for i in range(self.m)) + "\n"


def _closed_subsets(poset: StagedPoset, max_size: int,
                    downward: bool) -> Iterator[tuple[int, ...]]:
    """Down-closed (or up-closed) subsets of size <= max_size, ordered by
    size then lexicographically."""
    for size in range(max_size + 1):
        for combo in combinations(range(poset.m), size):
            mask = sum(1 << c for c in combo)
            closed = all(
                (poset.below_mask(c) if downward else poset.above[c]) & ~mask == 0
                for c in combo)
            if closed:
                yield combo


def generic_poset_stage(stages: int, max_config: int) -> StagedPoset:
    """Run the staged construction from the empty poset.

    A stage enumerates the pairs (D, U) with D a down-closed and U an
    up-closed subset of the stage's input poset, each of size at most
    ``max_config``, disjoint and with every D-element strictly below
    every U-element, then appends one fresh point per pair, strictly
    above D and strictly below U.  Because D and U are closed, the new
    point's relations to the input poset are exactly D and U; relations
    among same-stage points are only those transitivity forces through
    input elements (one point below a, another above a, must compare),
    everything else stays incomparable.
    """
    if stages < 0:
        raise UsageError("stages must be >= 0")
    poset = StagedPoset(0, (), ())
    for _ in range(stages):
        types = []
        for d_combo in _closed_subsets(poset, max_config, downward=True):
            for u_combo in _closed_subsets(poset, max_config, downward=False):
                if set(d_combo) & set(u_combo):
                    continue
                if all(poset.less(d, u) for d in d_combo for u in u_combo):
                    types.append((d_combo, u_combo))
        if poset.m + len(types) > MAX_POSET_ELEMENTS:
            raise ResourceLimitError(
                f"poset would exceed {MAX_POSET_ELEMENTS} elements")
        above = list(poset.above)
        for d_combo, u_combo in types:
            x = len(above)
            down = set(d_combo)
            for d in d_combo:
                down.update(j for j in range(x) if above[j] & (1 << d))
            up = set(u_combo)
            for u in u_combo:
                up.update(bit_elements(above[u]))
            above.append(sum(1 << u for u in up))
            for j in down:
                above[j] |= 1 << x
        poset = StagedPoset(
            len(above),
            tuple(above),
            poset.stage_sizes + (len(above),),
            poset.log + tuple(types),
        )
    return poset


def extension_property_audit(poset: StagedPoset, config_size: int) -> TriState:
    """Check that every valid one-point extension type over at most
    ``config_size`` first-stage elements is realized by some element.

    A type over a subset C assigns each member down, up, or incomparable.
    It is valid when no poset relation forces a contradiction: the down
    part must be down-closed within C, the up part up-closed within C,
    and everything down must lie strictly below everything up.  An
    element realizes the type when its relations to C match exactly.
    """
    base = list(poset.first_stage())
    for size in range(config_size + 1):
        for c_combo in combinations(base, size):
            for assignment in product(("down", "up", "incomp"), repeat=size):
                d = [c for c, a in zip(c_combo, assignment) if a == "down"]
                u = [c for c, a in zip(c_combo, assignment) if a == "up"]
                rest = [c for c, a in zip(c_combo, assignment) if a == "incomp"]
                if any(poset.less(c, dd) for c in rest + u for dd in d):
                    continue
                if any(poset.less(uu, c) for c in rest + d for uu in u):
                    continue
                if not all(poset.less(dd, uu) for dd in d for uu in u):
                    continue
                realized = any(
                    y not in c_combo
                    and all(poset.less(dd, y) for dd in d)
                    and all(poset.less(y, uu) for uu in u)
                    and not any(poset.less(c, y) or poset.less(y, c) for c in rest)
                    and not any(poset.less(y, dd) for dd in d)
                    and not any(poset.less(uu, y) for uu in u)
                    for y in range(poset.m)
                )
                if not realized:
                    return fails({
                        "subset": list(c_combo),
                        "down": d,
                        "up": u,
                        "incomparable": rest,
                    })
    return holds()


# ---------------------------------------------------------------------------
# inflation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InflatedPreorderOracle:
    """Preorder on the naturals: n decodes to (fibre, index) and x reaches
    y iff fibre(x) = fibre(y) or fibre(x) sits strictly below fibre(y).

    Points whose fibre index falls outside the poset are a usage error;
    callers must choose windows the poset can decode.
    """

    poset: StagedPoset

    def fibre(self, n: int) -> int:
        p, _ = cantor_unpair(n)
        if p >= self.poset.m:
            raise UsageError(
                f"point {n} decodes to fibre {p}, outside the {self.poset.m}-element poset")
        return p

    def arrow(self, x: int, y: int) -> bool:
        px, py = self.fibre(x), self.fibre(y)
        return px == py or self.poset.less(px, py)

    def max_window(self) -> int:
        """Largest W such that every point below W decodes into the poset."""
        if self.poset.m == 0:
            return 0
        return cantor_pair(self.poset.m, 0)

    def materialize(self, window: int) -> Preorder:
        """Window prefix as a finite preorder (checked by its invariants)."""
        fibres = [self.fibre(n) for n in range(window)]
        rows = []
        for x in range(window):
            row = 0
            for y in range(window):
                if fibres[x] == fibres[y] or self.poset.less(fibres[x], fibres[y]):
                    row |= 1 << y
            rows.append(row)
        return Preorder(window, tuple(rows))

    def fibre_count(self, p: int, window: int) -> int:
        return sum(1 for n in range(window) if cantor_unpair(n)[0] == p)
