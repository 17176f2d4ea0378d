"""Countable graphs presented as pure adjacency oracles.

Vertices are unbounded naturals; every oracle answers ``adjacent(i, j)``
deterministically, symmetrically, and with no loops, so window scans can
run concurrently and reruns reproduce bit-identical results.

Kinds:

* ``bitrado``: for i < j, i ~ j iff bit i of j is 1.  This realizes the
  extension property in closed form: given disjoint finite U and W, the
  number sum(2**u for u in U) + 2**m with m beyond max(U | W) is joined
  to all of U and none of W.
* ``bernoulli``: each pair {i, j} is an edge iff
  pair_value(seed, i, j) mod q < p_num, for an exact rational edge
  probability p_num/q.
* coloured complete graphs: every pair gets one of k colours,
  colour(i, j) = pair_value(seed, i, j) mod k; colour subgraphs keep the
  pairs whose colour lies in a chosen subset, so growing the subset
  grows the edge set monotonically.
* explicit finite matrices, optionally lifted periodically to all of
  the naturals (i ~ j iff their residues are adjacent).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .errors import UsageError
from .rng import pair_value
from .sets import OmegaSet


class GraphOracle:
    def adjacent(self, i: int, j: int) -> bool:
        raise NotImplementedError

    def descriptor(self) -> str:
        raise NotImplementedError


def _check_vertices(i: int, j: int):
    if i < 0 or j < 0:
        raise UsageError("vertices are naturals")


@dataclass(frozen=True)
class BitRado(GraphOracle):
    def adjacent(self, i: int, j: int) -> bool:
        _check_vertices(i, j)
        if i == j:
            return False
        lo, hi = (i, j) if i < j else (j, i)
        return bool((hi >> lo) & 1)

    def descriptor(self) -> str:
        return "bitrado"


BIT_RADO = BitRado()


@dataclass(frozen=True)
class BernoulliGraph(GraphOracle):
    seed: int
    p: Fraction

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise UsageError("edge probability must lie in [0, 1]")

    def adjacent(self, i: int, j: int) -> bool:
        _check_vertices(i, j)
        if i == j:
            return False
        return pair_value(self.seed, i, j) % self.p.denominator < self.p.numerator

    def descriptor(self) -> str:
        return f"bernoulli:seed={self.seed},p={self.p.numerator}/{self.p.denominator}"


@dataclass(frozen=True)
class ColouredComplete:
    """Complete graph on the naturals with k-coloured edges."""

    seed: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise UsageError("need at least one colour")

    def colour(self, i: int, j: int) -> int:
        _check_vertices(i, j)
        if i == j:
            raise UsageError("no loops: colour is defined for distinct vertices")
        return pair_value(self.seed, i, j) % self.k


@dataclass(frozen=True)
class ColourSubgraph(GraphOracle):
    colouring: ColouredComplete
    colours: frozenset[int]

    def __post_init__(self):
        if any(c < 0 or c >= self.colouring.k for c in self.colours):
            raise UsageError("colour outside 0..k-1")

    def adjacent(self, i: int, j: int) -> bool:
        if i == j:
            return False
        return self.colouring.colour(i, j) in self.colours

    def descriptor(self) -> str:
        cs = ",".join(map(str, sorted(self.colours)))
        return f"colour:seed={self.colouring.seed},k={self.colouring.k},colours={cs}"


def colour_subgraph(colouring: ColouredComplete, colours) -> ColourSubgraph:
    return ColourSubgraph(colouring, frozenset(colours))


@dataclass(frozen=True)
class FiniteMatrixGraph(GraphOracle):
    """Explicit adjacency matrix; optionally repeated with period m so the
    oracle covers all naturals."""

    rows: tuple[tuple[bool, ...], ...]
    periodic: bool = False

    def __post_init__(self):
        m = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != m:
                raise UsageError("adjacency matrix must be square")
            if row[i]:
                raise UsageError("no loops allowed")
            for j in range(m):
                if row[j] != self.rows[j][i]:
                    raise UsageError("adjacency matrix must be symmetric")

    @classmethod
    def from_lists(cls, rows, periodic: bool = False) -> "FiniteMatrixGraph":
        return cls(tuple(tuple(bool(v) for v in row) for row in rows), periodic)

    def adjacent(self, i: int, j: int) -> bool:
        _check_vertices(i, j)
        if i == j:
            return False
        m = len(self.rows)
        if self.periodic:
            return bool(self.rows[i % m][j % m])
        if i >= m or j >= m:
            return False
        return bool(self.rows[i][j])

    def descriptor(self) -> str:
        packed = ";".join("".join("1" if v else "0" for v in row) for row in self.rows)
        tag = "periodic" if self.periodic else "finite"
        return f"{tag}:{packed}"


# ---------------------------------------------------------------------------
# window scans
# ---------------------------------------------------------------------------


def neighbourhood_window(graph: GraphOracle, v: int, window: int) -> OmegaSet:
    """Neighbours of v below the window, as an approximate window set."""
    return OmegaSet.window_set(
        (w for w in range(window) if graph.adjacent(v, w)), window)


def extension_witness(graph: GraphOracle, joined, avoided,
                      bound: int) -> Optional[int]:
    """A vertex below ``bound``, outside both sets, adjacent to everything
    in ``joined`` and nothing in ``avoided``.

    For the bit presentation the closed-form witness is tried first;
    otherwise (and as a fallback) vertices are scanned in increasing
    order, so the result is deterministic.  None means nothing was found
    below the bound.
    """
    u = set(joined.elements) if isinstance(joined, OmegaSet) else set(joined)
    w = set(avoided.elements) if isinstance(avoided, OmegaSet) else set(avoided)
    if u & w:
        raise UsageError("the joined and avoided sets must be disjoint")

    if isinstance(graph, BitRado) and (u or w):
        m = max(u | w) + 1
        z = sum(1 << x for x in u) + (1 << m)
        if z < bound:
            return z

    for z in range(bound):
        if z in u or z in w:
            continue
        if all(graph.adjacent(z, x) for x in u) and not any(graph.adjacent(z, x) for x in w):
            return z
    return None


def closed_form_witness(joined, avoided) -> int:
    """The bit-presentation witness sum(2**u) + 2**m, m past both sets."""
    u = set(joined)
    w = set(avoided)
    if u & w:
        raise UsageError("the joined and avoided sets must be disjoint")
    m = max(u | w, default=-1) + 1
    return sum(1 << x for x in u) + (1 << m)


def common_neighbour(graph: GraphOracle, targets, exclude,
                     bound: int) -> Optional[int]:
    """Least non-excluded vertex below ``bound`` adjacent to every target."""
    s = list(targets.elements) if isinstance(targets, OmegaSet) else list(targets)
    banned = set(exclude.elements) if isinstance(exclude, OmegaSet) else set(exclude)
    for z in range(bound):
        if z in banned:
            continue
        if all(graph.adjacent(z, x) for x in s):
            return z
    return None


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------


def _parse_kv(body: str) -> dict[str, str]:
    out = {}
    for part in body.split(","):
        if "=" not in part:
            raise UsageError(f"expected key=value, got {part!r}")
        key, value = part.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def parse_oracle(descriptor: str) -> GraphOracle:
    """Oracle descriptor strings used by the CLI.

    - "bitrado"
    - "bernoulli:seed=42,p=1/2"
    - "colour:seed=7,k=3,colours=0,1"
    - "file:PATH" (0/1 adjacency matrix, one row per line)
    - "file:PATH:periodic" for the periodic lift
    """
    descriptor = descriptor.strip()
    if descriptor == "bitrado":
        return BIT_RADO
    if descriptor.startswith("bernoulli:"):
        kv = _parse_kv(descriptor[len("bernoulli:"):])
        try:
            seed = int(kv["seed"])
            num, _, den = kv["p"].partition("/")
            p = Fraction(int(num), int(den or "1"))
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad bernoulli descriptor: {exc}") from None
        return BernoulliGraph(seed, p)
    if descriptor.startswith("colour:"):
        match = re.fullmatch(
            r"colour:seed=(-?\d+),k=(\d+),colours=((?:\d+)(?:,\d+)*|)",
            descriptor)
        if not match:
            raise UsageError(f"bad colour descriptor {descriptor!r}")
        seed, k, colours = match.groups()
        chosen = [int(c) for c in colours.split(",")] if colours else []
        return colour_subgraph(ColouredComplete(int(seed), int(k)), chosen)
    if descriptor.startswith("file:"):
        rest = descriptor[len("file:"):]
        periodic = rest.endswith(":periodic")
        if periodic:
            rest = rest[: -len(":periodic")]
        try:
            lines = Path(rest).read_text().split()
        except OSError as exc:
            raise UsageError(f"cannot read {rest!r}: {exc}") from None
        rows = [[c == "1" for c in line] for line in lines if line]
        return FiniteMatrixGraph.from_lists(rows, periodic)
    raise UsageError(f"unknown oracle descriptor {descriptor!r}")
