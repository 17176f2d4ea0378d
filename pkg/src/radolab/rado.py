"""Neighbourhood filters of countable graphs and the spanning embedding.

The neighbourhood filter of a graph is generated by the vertex
neighbourhoods.  Three conditions on a countable graph are equivalent:
the filter is non-trivial; the graph contains a copy of the bit-presented
random graph on all of its vertices (a spanning subgraph); and the filter
is contained in the copy's neighbourhood filter.  This module gives the
bounded, seed-reproducible versions of all three.

The embedding is built by going forth only.  Writing R for the bit graph
(the source) and Gamma for the target oracle:

* even steps take the least Gamma-vertex not yet hit and pair it with
  the least unused R-vertex having no R-edge into the used set, so the
  placement is unconstrained on the target side and every Gamma-vertex
  is eventually covered;
* odd steps take the least unused R-vertex, collect the images of its
  R-neighbours among the used vertices, and pair it with the least
  common Gamma-neighbour of those images outside the hit set.

Each step preserves injectivity and maps R-edges to Gamma-edges, so any
finite prefix is a partial spanning-subgraph embedding; surjectivity
grows as steps/2.  A failed odd-step search aborts the run with the
constraint set, because the whole run is invalid past it.  How many
steps are feasible depends on the target's density: random targets with
constant edge probability run hundreds of steps inside small bounds,
while the bit graph as its own target needs common neighbours near
2**max(images), which doubles out of reach after a few dozen steps.

The strict filter chain comes from a random edge colouring of the
complete graph: taking the subgraphs spanned by growing prefixes of the
colour set gives pointwise-growing neighbourhoods, hence shrinking
filters, and a vertex joined to a sampled configuration entirely in the
newest colour witnesses that the shrink is strict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .errors import BoundedSearchError, UsageError
from .filters import FilterBase, base_is_nontrivial, filter_refines
from .graphs import (
    BIT_RADO,
    ColouredComplete,
    GraphOracle,
    colour_subgraph,
    common_neighbour,
    neighbourhood_window,
)
from .rng import SampleStream
from .sets import TriState, fails, holds, unknown_within


def neighbourhood_filter(graph: GraphOracle, vertices, window: int) -> FilterBase:
    """Base of neighbourhood windows for the listed vertices."""
    gens = tuple(neighbourhood_window(graph, v, window) for v in vertices)
    return FilterBase(None, gens)


def closed_open_equivalence_check(graph: GraphOracle, samples,
                                  window: int) -> TriState:
    """For non-adjacent v, w the closed neighbourhoods satisfy
    cl(v) ∩ cl(w) ⊆ N(v); this verifies it below the window for every
    sampled pair.  Vacuously holds for no samples; a violation is
    returned with the offending (v, w, x)."""
    samples = list(samples)
    for v, w in samples:
        if v == w or graph.adjacent(v, w):
            raise UsageError(f"sample pair ({v}, {w}) must be distinct non-neighbours")
    for v, w in samples:
        for x in range(window):
            in_cl_v = x == v or graph.adjacent(x, v)
            in_cl_w = x == w or graph.adjacent(x, w)
            if in_cl_v and in_cl_w and not graph.adjacent(x, v):
                return fails({"v": v, "w": w, "x": x}, window=window)
    if not samples:
        return holds()
    return holds(witness={"pairs_checked": len(samples)}, window=window)


# ---------------------------------------------------------------------------
# going forth
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartialEmbedding:
    """Finite prefix of a spanning embedding of the bit graph.

    ``pairs`` lists (source vertex, target vertex) in placement order.
    The map is injective both ways and every source edge between placed
    vertices is a target edge.  After 2k steps the targets 0..k-1 are
    all hit.
    """

    pairs: tuple[tuple[int, int], ...] = ()

    @cached_property
    def used(self) -> frozenset[int]:
        return frozenset(r for r, _ in self.pairs)

    @cached_property
    def hit(self) -> frozenset[int]:
        return frozenset(g for _, g in self.pairs)

    @property
    def step(self) -> int:
        return len(self.pairs)

    def image(self, r: int) -> int:
        for rr, g in self.pairs:
            if rr == r:
                return g
        raise UsageError(f"source vertex {r} is not placed")

    def hit_prefix(self) -> int:
        """Largest k with targets 0..k-1 all hit."""
        k = 0
        while k in self.hit:
            k += 1
        return k

    def used_prefix(self) -> int:
        k = 0
        while k in self.used:
            k += 1
        return k

    def stats(self) -> dict:
        return {
            "steps": self.step,
            "hit_prefix": self.hit_prefix(),
            "used_prefix": self.used_prefix(),
        }

    def to_pairs_text(self) -> str:
        return "\n".join(f"{r} {g}" for r, g in self.pairs) + ("\n" if self.pairs else "")

    def to_dot(self) -> str:
        """Placed subgraph: target vertices, edges from placed source edges."""
        lines = ["graph embedding {"]
        for r, g in self.pairs:
            lines.append(f'  g{g} [label="{g} (src {r})"];')
        placed = list(self.pairs)
        for a, (r1, g1) in enumerate(placed):
            for r2, g2 in placed[a + 1:]:
                if BIT_RADO.adjacent(r1, r2):
                    lines.append(f"  g{g1} -- g{g2};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _least_fresh_source_vertex(used: frozenset[int]) -> int:
    """Least natural not in ``used`` with no bit-graph edge to any of it.

    Direct scanning is hopeless once the used set contains a dense
    prefix 0..k: the least valid vertex then sits near 2**(k+1).  So the
    naturals are split into the intervals between consecutive used
    values; inside one interval the constraints are fixed:

    * bits of the candidate may not lie at used values below it
      (edge to a smaller used vertex);
    * the candidate may not equal a bit position of a used value above
      it (edge to a larger used vertex).

    Within an interval, the least number avoiding a banned low bit is
    found by clearing that bit and carrying into the next position, which
    skips every doomed candidate at once.
    """
    ordered = sorted(used)
    starts = [0] + [u + 1 for u in ordered]
    for idx, start in enumerate(starts):
        below = set(ordered[:idx])
        above = ordered[idx:]
        end = above[0] if above else None
        bad_positions = set()
        for u in above:
            v, pos = u, 0
            while v:
                if v & 1:
                    bad_positions.add(pos)
                v >>= 1
                pos += 1
        r = start
        while end is None or r < end:
            conflict = None
            v, pos = r, 0
            while v:
                if (v & 1) and pos in below:
                    conflict = pos
                    break
                v >>= 1
                pos += 1
            if conflict is not None:
                r = ((r >> (conflict + 1)) + 1) << (conflict + 1)
                continue
            if r in bad_positions:
                r += 1
                continue
            return r
    raise AssertionError("unreachable: the last interval is unbounded")


def going_forth_step(state: PartialEmbedding, graph: GraphOracle,
                     bound: int) -> PartialEmbedding:
    """One step of the going-forth construction (see the module docstring).

    Raises BoundedSearchError when the odd-step common-neighbour search
    exhausts ``bound``; the error carries the failing constraint set.
    """
    if state.step % 2 == 0:
        v = 0
        while v in state.hit:
            v += 1
        r = _least_fresh_source_vertex(state.used)
        assert all(not BIT_RADO.adjacent(r, u) for u in state.used)
        placed = (r, v)
    else:
        r = 0
        while r in state.used:
            r += 1
        anchors = sorted(u for u in state.used if BIT_RADO.adjacent(r, u))
        images = [state.image(u) for u in anchors]
        z = common_neighbour(graph, images, state.hit, bound)
        if z is None:
            raise BoundedSearchError(
                "no common neighbour below the bound",
                constraints={
                    "step": state.step,
                    "source_vertex": r,
                    "required_adjacent_images": images,
                    "excluded": sorted(state.hit),
                    "bound": bound,
                },
            )
        placed = (r, z)

    new_r, new_g = placed
    assert new_r not in state.used and new_g not in state.hit
    for old_r, old_g in state.pairs:
        if BIT_RADO.adjacent(new_r, old_r):
            assert graph.adjacent(new_g, old_g)
    return PartialEmbedding(state.pairs + (placed,))


def run_spanning_embedding(graph: GraphOracle, steps: int,
                           bound: int) -> PartialEmbedding:
    state = PartialEmbedding()
    for _ in range(steps):
        state = going_forth_step(state, graph, bound)
    return state


def verify_embedding(embedding: PartialEmbedding,
                     graph: GraphOracle) -> TriState:
    """Independent recheck: injectivity both ways and edge preservation
    from the bit graph into the target."""
    sources = [r for r, _ in embedding.pairs]
    targets = [g for _, g in embedding.pairs]
    if len(set(sources)) != len(sources) or len(set(targets)) != len(targets):
        return fails({"note": "map is not injective"})
    placed = list(embedding.pairs)
    for a, (r1, g1) in enumerate(placed):
        for r2, g2 in placed[a + 1:]:
            if BIT_RADO.adjacent(r1, r2) and not graph.adjacent(g1, g2):
                return fails({"source_edge": [r1, r2], "target_pair": [g1, g2]})
    return holds()


# ---------------------------------------------------------------------------
# the three-way report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThreeWayReport:
    """Evidence for the equivalence between filter non-triviality, the
    spanning embedding, and containment in the copy's filter.  The three
    verdicts are computed independently; consistency is reported, never
    assumed."""

    nontrivial: TriState
    spanning: TriState
    refines: TriState
    consistent: bool
    parameters: dict
    embedding_stats: Optional[dict] = None

    def to_json(self) -> dict:
        out = {
            "verdicts": {
                "filter_nontrivial": self.nontrivial.to_json(),
                "spanning_embedding": self.spanning.to_json(),
                "filter_refines_copy": self.refines.to_json(),
            },
            "consistent": self.consistent,
            "parameters": self.parameters,
        }
        if self.embedding_stats is not None:
            out["embedding"] = self.embedding_stats
        return out


def filter_nontrivial_iff_spanning(graph: GraphOracle, depth: int = 3,
                                   window: int = 4096, steps: int = 60,
                                   bound: int = 10**6,
                                   vertex_count: int = 8) -> ThreeWayReport:
    """Run all three checks against one oracle.

    (a) non-triviality of the neighbourhood base over the first
    ``vertex_count`` vertices, sampled to ``depth``;
    (b) a going-forth run of ``steps`` steps, rechecked independently;
    (c) containment of the neighbourhood filter in the constructed
    copy's filter.  When (b) produced an embedding, (c) rechecks the
    placed copy pointwise: the copy's neighbourhoods sit inside the
    oracle's, which is the single-generator containment witness.  When
    (b) failed there is no copy, and (c) falls back to comparing against
    the canonical bit-graph base, which then typically fails as well.
    """
    base = neighbourhood_filter(graph, range(vertex_count), window)
    verdict_a = base_is_nontrivial(base, sample_depth=depth, window=window)

    embedding = None
    stats = None
    try:
        embedding = run_spanning_embedding(graph, steps, bound)
        verdict_b = verify_embedding(embedding, graph)
        if verdict_b.status == "holds":
            verdict_b = holds(witness=embedding.stats())
        stats = embedding.stats()
    except BoundedSearchError as exc:
        verdict_b = fails(exc.constraints)

    if embedding is not None:
        checked = 0
        violation = None
        for r, g in embedding.pairs:
            for r2, g2 in embedding.pairs:
                if r2 != r and BIT_RADO.adjacent(r, r2):
                    checked += 1
                    if not graph.adjacent(g, g2):
                        violation = {"copy_vertex": g, "missing_neighbour": g2}
                        break
            if violation:
                break
        if violation:
            verdict_c = fails(violation, window=window)
        else:
            verdict_c = unknown_within(window, {"copy_edges_checked": checked})
    else:
        canonical = neighbourhood_filter(BIT_RADO, range(vertex_count), window)
        verdict_c = filter_refines(base, canonical, window=window)

    oks = [verdict_a.ok, verdict_b.ok, verdict_c.ok]
    report = ThreeWayReport(
        nontrivial=verdict_a,
        spanning=verdict_b,
        refines=verdict_c,
        consistent=all(oks) or not any(oks),
        parameters={
            "oracle": graph.descriptor(),
            "depth": depth,
            "window": window,
            "steps": steps,
            "bound": bound,
            "vertex_count": vertex_count,
        },
        embedding_stats=stats,
    )
    return report


# ---------------------------------------------------------------------------
# the filter chain from an edge colouring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainTrial:
    v: int
    ws: tuple[int, ...]
    witness: Optional[int]

    def to_json(self) -> dict:
        return {"v": self.v, "ws": list(self.ws), "witness": self.witness}


@dataclass(frozen=True)
class ChainLevel:
    """Comparison of the colour-prefix subgraphs G_level and G_{level+1};
    the fresh colour is ``level`` itself."""

    level: int
    new_colour: int
    inclusion_vertices: int
    inclusion_window: int
    inclusion_ok: bool
    trials: tuple[ChainTrial, ...]

    @property
    def all_witnessed(self) -> bool:
        return all(t.witness is not None for t in self.trials)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "new_colour": self.new_colour,
            "inclusion_vertices": self.inclusion_vertices,
            "inclusion_window": self.inclusion_window,
            "inclusion_ok": self.inclusion_ok,
            "trials": [t.to_json() for t in self.trials],
        }


@dataclass(frozen=True)
class ChainReport:
    k: int
    seed: int
    window: int
    max_ws: int
    levels: tuple[ChainLevel, ...] = field(default_factory=tuple)

    @property
    def all_strict(self) -> bool:
        return all(lv.inclusion_ok and lv.all_witnessed for lv in self.levels)

    def recheck(self) -> TriState:
        """Re-verify every witness against the colouring, independently of
        how the search found it: the witness edges to v and the ws must
        all carry the level's fresh colour, which puts the witness in the
        larger graph's neighbourhoods and outside the smaller one's."""
        colouring = ColouredComplete(self.seed, self.k)
        for lv in self.levels:
            for trial in lv.trials:
                if trial.witness is None:
                    continue
                x = trial.witness
                for other in (trial.v, *trial.ws):
                    if x == other or colouring.colour(x, other) != lv.new_colour:
                        return fails({"level": lv.level, "trial": trial.to_json()})
        return holds()

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "seed": self.seed,
            "window": self.window,
            "max_ws": self.max_ws,
            "levels": [lv.to_json() for lv in self.levels],
            "all_strict": self.all_strict,
        }


def filter_chain(k: int, seed: int, trials: int, max_ws: int, window: int,
                 inclusion_vertices: int = 100,
                 inclusion_window: int = 1000,
                 sample_pool: int = 200) -> ChainReport:
    """Build the chain G_1 ⊆ ... ⊆ G_k of colour-prefix subgraphs of a
    random k-colouring (G_i keeps colours 0..i-1, so G_k is complete) and
    collect evidence that the induced neighbourhood filters form a
    strictly decreasing chain.

    Per level i the report records a pointwise inclusion check
    G_i(v) ⊆ G_{i+1}(v) for v below ``inclusion_vertices``, and ``trials``
    sampled configurations (v, w_1..w_n), n ≤ ``max_ws``, each with the
    least vertex below ``window`` joined to all of them in colour i, or
    None when the scan is exhausted (recorded, not raised).
    """
    if k < 2:
        raise UsageError("need at least two colours")
    if max_ws < 1:
        raise UsageError("need at least one w-vertex per trial")
    if sample_pool > window:
        raise UsageError("sample pool must sit inside the window")
    colouring = ColouredComplete(seed, k)
    inclusion_window = min(inclusion_window, window)

    levels = []
    for i in range(1, k):
        small = colour_subgraph(colouring, range(i))
        large = colour_subgraph(colouring, range(i + 1))

        inclusion_ok = True
        for v in range(inclusion_vertices):
            for w in range(inclusion_window):
                if small.adjacent(v, w) and not large.adjacent(v, w):
                    inclusion_ok = False
                    break
            if not inclusion_ok:
                break

        stream = SampleStream(seed, f"chain-level-{i}")
        level_trials = []
        for _ in range(trials):
            v = stream.below(sample_pool)
            n = 1 + stream.below(max_ws)
            ws = tuple(stream.distinct_below(n, sample_pool, forbidden=(v,)))
            witness = None
            for x in range(window):
                if x == v or x in ws:
                    continue
                if colouring.colour(x, v) != i:
                    continue
                if all(colouring.colour(x, w) == i for w in ws):
                    witness = x
                    break
            level_trials.append(ChainTrial(v, ws, witness))

        levels.append(ChainLevel(
            level=i,
            new_colour=i,
            inclusion_vertices=inclusion_vertices,
            inclusion_window=inclusion_window,
            inclusion_ok=inclusion_ok,
            trials=tuple(level_trials),
        ))
    return ChainReport(k, seed, window, max_ws, tuple(levels))
