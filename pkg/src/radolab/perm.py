"""Finite permutation groups given by generators.

Groups act on {0..n-1} on the right: ``g[x]`` is the image of x, and the
product ``g * h`` means "apply g, then h".  Everything is computed by
breadth-first closure over the generators, so results are deterministic
in generator order; full element enumeration is capped at 10**6.

Primitivity is decided through minimal blocks (union-find closure of a
joined pair under the generators).  Strong primitivity quantifies over
invariant preorders instead of invariant equivalences: those are exactly
the transitively closed unions of orbitals that contain the diagonal,
and are enumerated exhaustively over subsets of the non-diagonal
orbitals.  The topologies invariant under the group are the duals of
those preorders.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import ResourceLimitError, UsageError
from .sets import OmegaSet, bit_elements
from .topology import FiniteTopology, Preorder, preorder_to_topology

MAX_ELEMENTS = 10**6
MAX_ORBITALS = 20


@dataclass(frozen=True)
class Permutation:
    degree: int
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(self.degree)):
            raise UsageError("images are not a bijection of {0..n-1}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(n, tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Iterable[int]]) -> "Permutation":
        images = list(range(n))
        for cycle in cycles:
            cycle = list(cycle)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                if a >= n:
                    raise UsageError(f"point {a} exceeds degree {n}")
                images[a] = b
        return cls(n, tuple(images))

    def __getitem__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise UsageError("degrees differ")
        return Permutation(self.degree,
                           tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(self.degree, tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycle_string(self) -> str:
        seen: set[int] = set()
        parts = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cycle = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cycle.append(j)
                j = self.images[j]
            parts.append("(" + " ".join(map(str, cycle)) + ")")
        return "".join(parts) or "()"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Cycle notation, e.g. "(0 1 2 3)(4 5)"; fixed points may be omitted."""
    stripped = _CYCLE_RE.sub("", text)
    if stripped.strip(" ,"):
        raise UsageError(f"could not parse permutation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        entries = [tok for tok in re.split(r"[,\s]+", body.strip()) if tok]
        if not entries:
            continue
        try:
            cycle = [int(tok) for tok in entries]
        except ValueError:
            raise UsageError(f"non-numeric cycle entry in {text!r}") from None
        if len(set(cycle)) != len(cycle):
            raise UsageError(f"repeated point in cycle {body!r}")
        cycles.append(cycle)
    return Permutation.from_cycles(degree, cycles)


def parse_generators(text: str, degree: int) -> list[Permutation]:
    """Comma-separated permutations: "(0 1 2),(0 1)".  Commas inside a
    cycle are element separators, commas between closing and opening
    parentheses split generators."""
    out = []
    for chunk in re.split(r",(?=\s*\()", text.strip()):
        chunk = chunk.strip()
        if chunk:
            out.append(parse_permutation(chunk, degree))
    if not out:
        raise UsageError("no generators given")
    return out


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Permutation, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.degree != self.degree:
                raise UsageError("generator degree differs from the group's")

    @classmethod
    def from_text(cls, degree: int, text: str) -> "PermGroup":
        return cls(degree, tuple(parse_generators(text, degree)))

    def elements(self, limit: int = MAX_ELEMENTS) -> list[Permutation]:
        """Breadth-first closure, identity first, then by word length with
        generators applied in listed order."""
        identity = Permutation.identity(self.degree)
        seen = {identity.images}
        order = [identity]
        queue = deque([identity])
        while queue:
            current = queue.popleft()
            for g in self.generators:
                nxt = current * g
                if nxt.images not in seen:
                    if len(seen) >= limit:
                        raise ResourceLimitError(
                            f"group enumeration capped at {limit} elements")
                    seen.add(nxt.images)
                    order.append(nxt)
                    queue.append(nxt)
        return order

    def order(self, limit: int = MAX_ELEMENTS) -> int:
        return len(self.elements(limit))


def orbit(group: PermGroup, x: int) -> OmegaSet:
    """Smallest set containing x closed under the generators."""
    if not 0 <= x < group.degree:
        raise UsageError(f"point {x} outside degree {group.degree}")
    seen = {x}
    queue = deque([x])
    while queue:
        a = queue.popleft()
        for g in group.generators:
            b = g[a]
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return OmegaSet.finite(seen, universe=group.degree)


def is_transitive(group: PermGroup) -> bool:
    if group.degree < 1:
        raise UsageError("transitivity needs a nonempty ground set")
    return len(orbit(group, 0).elements) == group.degree


def minimal_block(group: PermGroup, x: int, y: int) -> OmegaSet:
    """Block through x of the finest invariant partition joining x and y.

    Union-find closure: joining a pair forces the joins of all its
    generator images, and so on until stable.
    """
    if not is_transitive(group):
        raise UsageError("minimal blocks are defined for transitive groups")
    if x == y:
        raise UsageError("need two distinct points")
    parent = list(range(group.degree))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> bool:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[max(ra, rb)] = min(ra, rb)
        return True

    queue = deque()
    if union(x, y):
        queue.append((x, y))
    while queue:
        a, b = queue.popleft()
        for g in group.generators:
            if union(g[a], g[b]):
                queue.append((g[a], g[b]))
    root = find(x)
    return OmegaSet.finite(
        (p for p in range(group.degree) if find(p) == root),
        universe=group.degree,
    )


def is_primitive(group: PermGroup) -> bool:
    """Transitive with no block between singletons and everything."""
    if not is_transitive(group):
        return False
    return all(
        len(minimal_block(group, 0, y).elements) == group.degree
        for y in range(1, group.degree)
    )


def orbitals(group: PermGroup) -> list[frozenset[tuple[int, int]]]:
    """Orbits on ordered pairs, diagonal orbitals first, then by least pair."""
    n = group.degree
    seen: set[tuple[int, int]] = set()
    found: list[frozenset[tuple[int, int]]] = []
    for start in ((i, j) for i in range(n) for j in range(n)):
        if start in seen:
            continue
        orb = {start}
        queue = deque([start])
        while queue:
            a, b = queue.popleft()
            for g in group.generators:
                image = (g[a], g[b])
                if image not in orb:
                    orb.add(image)
                    queue.append(image)
        seen |= orb
        found.append(frozenset(orb))
    return sorted(found, key=lambda o: (any(a != b for a, b in o), min(o)))


def invariant_preorders(group: PermGroup) -> list[Preorder]:
    """Every reflexive invariant relation is a union of orbitals that
    includes the whole diagonal, so invariant preorders are exactly the
    transitively closed such unions.  Enumerated over all subsets of the
    non-diagonal orbitals; guarded because that is exponential."""
    orbs = orbitals(group)
    if len(orbs) > MAX_ORBITALS:
        raise ResourceLimitError(f"orbital count {len(orbs)} exceeds {MAX_ORBITALS}")
    n = group.degree
    # reflexivity forces every diagonal orbital, so only the others vary
    off = [o for o in orbs if any(a != b for a, b in o)]

    base_rows = [1 << i for i in range(n)]
    off_rows = []
    for o in off:
        rows = [0] * n
        for a, b in o:
            rows[a] |= 1 << b
        off_rows.append(tuple(rows))

    out = []
    for pick in range(1 << len(off)):
        rows = list(base_rows)
        for idx in bit_elements(pick):
            for i in range(n):
                rows[i] |= off_rows[idx][i]
        transitive = True
        for i in range(n):
            acc = rows[i]
            for j in bit_elements(rows[i]):
                acc |= rows[j]
            if acc != rows[i]:
                transitive = False
                break
        if transitive:
            out.append(Preorder(n, tuple(rows)))
    return out


def is_strongly_primitive(group: PermGroup) -> bool:
    return all(p.is_trivial() for p in invariant_preorders(group))


def invariant_topologies(group: PermGroup) -> list[FiniteTopology]:
    """Duals of the invariant preorders; finite invariant topologies are
    all of this shape."""
    return [preorder_to_topology(p) for p in invariant_preorders(group)]


def separation_witness(group: PermGroup, delta, x: int, y: int,
                       limit: int = MAX_ELEMENTS) -> Optional[Permutation]:
    """First group element (in breadth-first word order) sending x into
    delta and y outside it, or None if no element does."""
    if isinstance(delta, OmegaSet):
        if delta.universe != group.degree:
            raise UsageError("delta lives on the wrong universe")
        members = set(delta.elements)
    else:
        members = set(delta)
    if not members or len(members) >= group.degree:
        raise UsageError("delta must be a nonempty proper subset")
    if x == y:
        raise UsageError("need two distinct points")
    for g in group.elements(limit):
        if g[x] in members and g[y] not in members:
            return g
    return None


# ---------------------------------------------------------------------------
# stock constructions for corpora and the CLI
# ---------------------------------------------------------------------------


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(n, (Permutation.from_cycles(n, [range(n)]),))


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup(max(n, 1), (Permutation.identity(max(n, 1)),))
    return PermGroup(n, (
        Permutation.from_cycles(n, [range(n)]),
        Permutation.from_cycles(n, [(0, 1)]),
    ))


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup(max(n, 1), (Permutation.identity(max(n, 1)),))
    if n % 2:
        rotation = Permutation.from_cycles(n, [range(n)])
    else:
        rotation = Permutation.from_cycles(n, [range(1, n)])
    return PermGroup(n, (Permutation.from_cycles(n, [(0, 1, 2)]), rotation))


def dihedral_group(n: int) -> PermGroup:
    if n < 3:
        raise UsageError("dihedral groups need degree >= 3")
    reflection = Permutation(n, tuple((n - i) % n for i in range(n)))
    return PermGroup(n, (Permutation.from_cycles(n, [range(n)]), reflection))


def klein_four_group() -> PermGroup:
    return PermGroup(4, (
        Permutation.from_cycles(4, [(0, 1), (2, 3)]),
        Permutation.from_cycles(4, [(0, 2), (1, 3)]),
    ))


def c2_wreath_c2() -> PermGroup:
    """Order 8 on 4 points, preserving the blocks {0,1} and {2,3}."""
    return PermGroup(4, (
        Permutation.from_cycles(4, [(0, 1)]),
        Permutation.from_cycles(4, [(2, 3)]),
        Permutation.from_cycles(4, [(0, 2), (1, 3)]),
    ))
