"""Finite topologies, preorders, and the duality between them.

A preorder (reflexive transitive relation) on {0..n-1} induces a
topology whose opens are the up-closed sets; a topology induces its
specialization preorder (x -> y iff every open containing x contains y).
Preorder -> topology -> preorder is always the identity, and a topology
fixed by the opposite round trip is called relational.  On finite ground
sets every topology is relational, which the test suite verifies
exhaustively at small n.

The module also carries the two filter constructions from invariant
topologies (dense open sets; complements of discrete sets), the
separation graph joining points with disjoint open neighbourhoods, and
complete-multipartite recognition for it.  On finite universes the
discrete-set construction degenerates (singletons are discrete, so the
generated filter is trivial); two built-in countable window models
(cofinite opens, final-segment opens) carry the interesting cases.

Relations and open sets are bitmasks over {0..n-1}; n is guarded at 16.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import ResourceLimitError, UsageError
from .filters import FilterBase
from .sets import OmegaSet, bit_elements, bits_of

MAX_POINTS = 16
MAX_PREORDER_POINTS = 512
MAX_ENUM_POINTS = 5
MAX_DISCRETE_POINTS = 12
PREORDER_COUNTS = (1, 1, 4, 29, 355, 6942)


def _full(n: int) -> int:
    return (1 << n) - 1


# ---------------------------------------------------------------------------
# preorders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Preorder:
    """Reflexive transitive relation; rows[i] has bit j set iff i -> j.

    Preorders scale further than topologies (no open-set lattice to
    store), so they get a looser size guard.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or self.n > MAX_PREORDER_POINTS:
            raise UsageError(f"preorder size must be in 0..{MAX_PREORDER_POINTS}")
        if len(self.rows) != self.n:
            raise UsageError("row count differs from n")
        full = _full(self.n)
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise UsageError("row has bits outside the universe")
            if not row & (1 << i):
                raise UsageError(f"not reflexive at {i}")
        for i in range(self.n):
            for j in bit_elements(self.rows[i]):
                if self.rows[j] & ~self.rows[i]:
                    raise UsageError(f"not transitive through {i} -> {j}")

    @classmethod
    def from_matrix(cls, matrix: Iterable[Iterable[int]]) -> "Preorder":
        rows = tuple(bits_of(j for j, v in enumerate(row) if v) for row in matrix)
        return cls(len(rows), rows)

    @classmethod
    def closure(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Preorder":
        """Reflexive-transitive closure of an arbitrary pair list."""
        rows = [1 << i for i in range(n)]
        for x, y in pairs:
            rows[x] |= 1 << y
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = rows[i]
                for j in bit_elements(rows[i]):
                    acc |= rows[j]
                if acc != rows[i]:
                    rows[i] = acc
                    changed = True
        return cls(n, tuple(rows))

    @classmethod
    def equality(cls, n: int) -> "Preorder":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def universal(cls, n: int) -> "Preorder":
        return cls(n, tuple(_full(n) for _ in range(n)))

    def arrow(self, x: int, y: int) -> bool:
        return bool(self.rows[x] & (1 << y))

    def is_equality(self) -> bool:
        return all(row == 1 << i for i, row in enumerate(self.rows))

    def is_universal(self) -> bool:
        return all(row == _full(self.n) for row in self.rows)

    def is_trivial(self) -> bool:
        """Invariant under the full symmetric group; on a finite universe
        that leaves equality and the universal relation."""
        return self.is_equality() or self.is_universal()

    def is_antisymmetric(self) -> bool:
        return all(
            not (self.arrow(x, y) and self.arrow(y, x))
            for x in range(self.n)
            for y in range(x + 1, self.n)
        )

    def matrix(self) -> list[list[int]]:
        return [[1 if self.arrow(i, j) else 0 for j in range(self.n)]
                for i in range(self.n)]

    def to_json(self) -> dict:
        return {"n": self.n, "matrix": self.matrix()}


def enumerate_preorders(n: int) -> Iterator[Preorder]:
    """All preorders on n points, by backtracking over off-diagonal cells.

    Cells are visited in row-major order.  Setting a cell checks every
    implication triangle whose other two cells are already decided, so a
    partial assignment is abandoned as soon as transitivity is doomed.
    """
    if n > MAX_ENUM_POINTS:
        raise ResourceLimitError(f"preorder enumeration guarded at n <= {MAX_ENUM_POINTS}")
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    order = {cell: idx for idx, cell in enumerate(cells)}

    def decided(i: int, j: int, upto: int) -> bool:
        return i == j or order[(i, j)] < upto

    def value(rows: list[int], i: int, j: int) -> bool:
        return bool(rows[i] & (1 << j))

    rows = [1 << i for i in range(n)]

    def consistent(idx: int, i: int, j: int, v: int) -> bool:
        if v:
            for k in range(n):
                if decided(j, k, idx) and value(rows, j, k):
                    if decided(i, k, idx) and not value(rows, i, k):
                        return False
                if decided(k, i, idx) and value(rows, k, i):
                    if decided(k, j, idx) and not value(rows, k, j):
                        return False
        else:
            for k in range(n):
                if (decided(i, k, idx) and value(rows, i, k)
                        and decided(k, j, idx) and value(rows, k, j)):
                    return False
        return True

    def backtrack(idx: int) -> Iterator[Preorder]:
        if idx == len(cells):
            yield Preorder(n, tuple(rows))
            return
        i, j = cells[idx]
        for v in (0, 1):
            if not consistent(idx, i, j, v):
                continue
            if v:
                rows[i] |= 1 << j
            yield from backtrack(idx + 1)
            if v:
                rows[i] &= ~(1 << j)

    return backtrack(0)


def count_preorders(n: int) -> int:
    return sum(1 for _ in enumerate_preorders(n))


# ---------------------------------------------------------------------------
# topologies
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteTopology:
    """Full open-set family on {0..n-1}, each open a bitmask."""

    n: int
    opens: frozenset[int]

    def __post_init__(self):
        if self.n < 0 or self.n > MAX_POINTS:
            raise UsageError(f"topology size must be in 0..{MAX_POINTS}")
        full = _full(self.n)
        if 0 not in self.opens or full not in self.opens:
            raise UsageError("a topology contains the empty set and the universe")
        if any(m & ~full for m in self.opens):
            raise UsageError("open set outside the universe")
        if len(self.opens) <= 2048:
            for u in self.opens:
                for v in self.opens:
                    if u | v not in self.opens or u & v not in self.opens:
                        raise UsageError("family not closed under union/intersection")

    @classmethod
    def discrete(cls, n: int) -> "FiniteTopology":
        return cls(n, frozenset(range(1 << n)))

    @classmethod
    def indiscrete(cls, n: int) -> "FiniteTopology":
        return cls(n, frozenset({0, _full(n)}))

    @classmethod
    def from_family(cls, n: int, sets: Iterable[Iterable[int]]) -> tuple["FiniteTopology", bool]:
        """Close an arbitrary family under union and intersection.

        Returns the topology and whether closure added anything beyond
        the given family plus the two mandatory opens.
        """
        family = {0, _full(n)} | {bits_of(s) for s in sets}
        closed = set(family)
        frontier = list(closed)
        while frontier:
            m = frontier.pop()
            for other in list(closed):
                for candidate in (m | other, m & other):
                    if candidate not in closed:
                        closed.add(candidate)
                        frontier.append(candidate)
        return cls(n, frozenset(closed)), closed != family

    @classmethod
    def partition(cls, blocks: Iterable[Iterable[int]]) -> "FiniteTopology":
        """Opens are the unions of blocks."""
        masks = [bits_of(b) for b in blocks]
        n = max(m.bit_length() for m in masks) if masks else 0
        if bits_of(range(n)) != bits_of(x for m in masks for x in bit_elements(m)):
            raise UsageError("blocks must cover {0..n-1}")
        if sum(bin(m).count("1") for m in masks) != n:
            raise UsageError("blocks must be disjoint")
        opens = set()
        for pick in range(1 << len(masks)):
            acc = 0
            for i in bit_elements(pick):
                acc |= masks[i]
            opens.add(acc)
        return cls(n, frozenset(opens))

    def min_opens(self) -> tuple[int, ...]:
        """Minimal open set around each point.  Finite topologies are
        closed under all (finitely many) intersections, so this is open."""
        out = []
        for x in range(self.n):
            acc = _full(self.n)
            for u in self.opens:
                if u & (1 << x):
                    acc &= u
            out.append(acc)
        return tuple(out)

    def is_trivial(self) -> bool:
        """Invariant under the full symmetric group: discrete or indiscrete."""
        return self.opens == frozenset(range(1 << self.n)) or len(self.opens) <= 2

    def to_json(self) -> dict:
        return {"n": self.n,
                "opens": [list(bit_elements(m)) for m in sorted(self.opens)]}


def preorder_to_topology(p: Preorder) -> FiniteTopology:
    """Opens are the up-closed sets; the rows U_x = {y : x -> y} form a base."""
    if p.n > MAX_POINTS:
        raise ResourceLimitError(
            f"open-set families are stored whole; guarded at n <= {MAX_POINTS}")
    opens = []
    for m in range(1 << p.n):
        if all(not (p.rows[x] & ~m) for x in bit_elements(m)):
            opens.append(m)
    return FiniteTopology(p.n, frozenset(opens))


def topology_to_preorder(t: FiniteTopology) -> Preorder:
    """Specialization: x -> y iff every open containing x contains y."""
    return Preorder(t.n, t.min_opens())


def is_relational(t: FiniteTopology) -> bool:
    return preorder_to_topology(topology_to_preorder(t)) == t


def separation_class(t: FiniteTopology) -> tuple[bool, bool]:
    """(T0, T1): specialization antisymmetric, specialization equality."""
    p = topology_to_preorder(t)
    return p.is_antisymmetric(), p.is_equality()


def enumerate_topologies(n: int) -> Iterator[FiniteTopology]:
    """Via duality: every finite topology arises from exactly one preorder."""
    for p in enumerate_preorders(n):
        yield preorder_to_topology(p)


# ---------------------------------------------------------------------------
# the two filter constructions
# ---------------------------------------------------------------------------


def dense_opens(t: FiniteTopology) -> list[int]:
    """Opens meeting every nonempty open, in mask order."""
    nonempty = [u for u in t.opens if u]
    return sorted(u for u in t.opens if all(u & v for v in nonempty))


def dense_open_filter(t: FiniteTopology) -> FilterBase:
    """Base of all dense open sets.  Finite intersections of dense opens
    are dense, hence nonempty, so this filter is non-trivial whenever the
    universe is."""
    gens = tuple(OmegaSet.finite(bit_elements(u), universe=t.n) for u in dense_opens(t))
    return FilterBase(t.n, gens)


def is_discrete_subset(t: FiniteTopology, s) -> bool:
    """Every point of s is isolated in s by some open (its minimal open
    is the best candidate)."""
    mask = s.as_bits(t.n) if isinstance(s, OmegaSet) else int(s)
    mins = t.min_opens()
    return all(mins[x] & mask == 1 << x for x in bit_elements(mask))


def maximal_discrete_subsets(t: FiniteTopology) -> list[int]:
    if t.n > MAX_DISCRETE_POINTS:
        raise ResourceLimitError(
            f"discrete-subset enumeration guarded at n <= {MAX_DISCRETE_POINTS}")
    mins = t.min_opens()

    def discrete(mask: int) -> bool:
        return all(mins[x] & mask == 1 << x for x in bit_elements(mask))

    out = []
    for mask in range(1 << t.n):
        if not discrete(mask):
            continue
        if any(discrete(mask | (1 << y)) for y in range(t.n) if not mask & (1 << y)):
            continue
        out.append(mask)
    return sorted(out)


def discrete_complement_filter(t: FiniteTopology) -> FilterBase:
    """Base of complements of maximal discrete sets; finite unions of
    discrete sets are covered by the filter's intersection closure.

    On a finite universe every singleton is discrete, the maximal
    discrete sets cover everything, and the result is always trivial.
    """
    full = _full(t.n)
    gens = tuple(
        OmegaSet.finite(bit_elements(full & ~mask), universe=t.n)
        for mask in maximal_discrete_subsets(t)
    )
    return FilterBase(t.n, gens)


# ---------------------------------------------------------------------------
# separation graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteGraph:
    """Loopless undirected graph on {0..n-1}, adjacency rows as bitmasks."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise UsageError("row count differs from n")
        for i, row in enumerate(self.rows):
            if row & (1 << i):
                raise UsageError("loops are not allowed")
            if row & ~_full(self.n):
                raise UsageError("edge outside the universe")
        for i in range(self.n):
            for j in bit_elements(self.rows[i]):
                if not self.rows[j] & (1 << i):
                    raise UsageError("adjacency must be symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "FiniteGraph":
        rows = [0] * n
        for x, y in edges:
            if x == y:
                raise UsageError("loops are not allowed")
            rows[x] |= 1 << y
            rows[y] |= 1 << x
        return cls(n, tuple(rows))

    @classmethod
    def complete(cls, n: int) -> "FiniteGraph":
        return cls(n, tuple(_full(n) & ~(1 << i) for i in range(n)))

    @classmethod
    def empty(cls, n: int) -> "FiniteGraph":
        return cls(n, tuple(0 for _ in range(n)))

    def adjacent(self, x: int, y: int) -> bool:
        return bool(self.rows[x] & (1 << y))

    def complement(self) -> "FiniteGraph":
        return FiniteGraph(
            self.n,
            tuple(_full(self.n) & ~row & ~(1 << i) for i, row in enumerate(self.rows)),
        )

    def components(self) -> list[int]:
        seen = 0
        comps = []
        for start in range(self.n):
            if seen & (1 << start):
                continue
            comp = 1 << start
            frontier = [start]
            while frontier:
                x = frontier.pop()
                for y in bit_elements(self.rows[x] & ~comp):
                    comp |= 1 << y
                    frontier.append(y)
            seen |= comp
            comps.append(comp)
        return comps

    def is_clique(self, mask: int) -> bool:
        return all(
            self.rows[x] & mask == mask & ~(1 << x) for x in bit_elements(mask)
        )

    def edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n)
                for y in bit_elements(self.rows[x]) if x < y]

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}


def separation_graph(t: FiniteTopology) -> FiniteGraph:
    """Join x to y when disjoint opens contain them.  Any separating opens
    can be shrunk to the minimal ones, so only those are consulted."""
    mins = t.min_opens()
    rows = [0] * t.n
    for x in range(t.n):
        for y in range(x + 1, t.n):
            if not mins[x] & mins[y]:
                rows[x] |= 1 << y
                rows[y] |= 1 << x
    return FiniteGraph(t.n, tuple(rows))


def is_complete_multipartite(g: FiniteGraph) -> Optional[list[int]]:
    """Part sizes (sorted) if the complement splits into disjoint cliques,
    else None."""
    comp = g.complement()
    sizes = []
    for mask in comp.components():
        if not comp.is_clique(mask):
            return None
        sizes.append(bin(mask).count("1"))
    return sorted(sizes)


# ---------------------------------------------------------------------------
# countable window models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WindowTopologyModel:
    """A fixed countable topology whose dense/discrete structure is known
    in closed form, truncated to a window when a generator family is
    needed.

    * ``cofinite``: opens are the empty set and all cofinite sets.  Every
      nonempty open is dense; the discrete sets are exactly the finite
      sets.  Both constructions generate the cofinite filter.
    * ``final-segments``: opens are the empty set and the tails {k, k+1, ...}.
      Every nonempty open is dense (two tails always meet); only sets of
      size <= 1 are discrete, because an open isolates only the maximum.
      Dense opens generate the filter of tail-containing sets and the
      discrete complements the cofinite filter; those coincide in the
      limit, though finite truncations only refine each other up to their
      horizons.
    """

    name: str

    def __post_init__(self):
        if self.name not in ("cofinite", "final-segments"):
            raise UsageError(f"unknown window model {self.name!r}")

    def dense_open_filter(self, window: int) -> FilterBase:
        if self.name == "cofinite":
            gens = tuple(OmegaSet.cofinite({k}) for k in range(window))
        else:
            gens = tuple(OmegaSet.cofinite(range(k)) for k in range(window))
        return FilterBase(None, gens)

    def discrete_complement_filter(self, window: int) -> FilterBase:
        # in both models the singletons are the maximal-useful discrete
        # sets below the window, and their complements generate
        gens = tuple(OmegaSet.cofinite({k}) for k in range(window))
        return FilterBase(None, gens)

    def is_discrete_subset(self, s: OmegaSet) -> bool:
        if not s.is_exact:
            raise UsageError("discreteness needs an exact set in a window model")
        if s.kind == "cofinite":
            return False
        if self.name == "cofinite":
            return True
        return len(s.elements) <= 1


COFINITE_MODEL = WindowTopologyModel("cofinite")
FINAL_SEGMENTS_MODEL = WindowTopologyModel("final-segments")
