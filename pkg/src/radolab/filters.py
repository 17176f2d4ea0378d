"""Filters on the ground set, presented by finite generator bases.

The filter generated by sets G1, ..., Gk is the family of all sets that
contain some finite intersection of the Gi.  It is closed upwards and
under finite intersections; it is non-trivial exactly when it omits the
empty set.  An empty base generates {Omega}.

Because intersections only shrink as generators are added, membership in
a finitely generated filter is decided by the single full intersection:
S belongs to the filter iff G1 ∩ ... ∩ Gk ⊆ S.  That monotone shortcut is
used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import UsageError
from .sets import (
    OmegaSet,
    TriState,
    WINDOW,
    bit_elements,
    fails,
    holds,
    intersect_all,
    is_subset,
    same_universe,
    unknown_within,
)


@dataclass(frozen=True)
class FilterBase:
    """A generating family for a filter, in generator order."""

    universe: Optional[int]
    generators: tuple[OmegaSet, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.universe != self.universe:
                raise UsageError("generator universe differs from the base's")

    @classmethod
    def of(cls, *generators: OmegaSet, universe: Optional[int] = None) -> "FilterBase":
        if generators:
            universe = same_universe(*generators)
        return cls(universe, tuple(generators))

    @property
    def is_exact(self) -> bool:
        return all(g.is_exact for g in self.generators)

    def intersection(self) -> OmegaSet:
        if not self.generators:
            return OmegaSet.full(self.universe)
        return intersect_all(self.generators)

    def to_json(self) -> dict:
        return {
            "universe": self.universe,
            "generators": [g.to_json() for g in self.generators],
        }


def filter_contains(base: FilterBase, s: OmegaSet) -> TriState:
    """Does the generated filter contain ``s``?

    Holds iff the full generator intersection is a subset of s; exact
    for exact bases, window-bounded (unknown) otherwise.
    """
    if s.universe != base.universe:
        raise UsageError("set universe differs from the base's")
    return is_subset(base.intersection(), s)


def _exact_empty_subfamily(base: FilterBase) -> list[int]:
    """Greedily shrink the full index family while it still intersects to
    nothing.  Only called when the full exact intersection is empty."""
    live = list(range(len(base.generators)))
    for idx in list(live):
        trial = [i for i in live if i != idx]
        if not trial:
            continue
        if intersect_all([base.generators[i] for i in trial]).is_empty_exact():
            live = trial
    return live


def base_is_nontrivial(base: FilterBase, sample_depth: int = 4,
                       window: Optional[int] = None) -> TriState:
    """Is the generated filter non-trivial (free of the empty set)?

    Exact bases are decided outright: the filter is non-trivial iff the
    full generator intersection is nonempty.  Bases with window
    generators are sampled: every subfamily of at most ``sample_depth``
    generators must have a nonempty intersection on the common window.
    An empty windowed intersection is reported as ``fails`` with the
    subfamily as witness; if everything intersects, the verdict is
    ``unknown`` at the window, carrying a common element as evidence.
    """
    if sample_depth < 1:
        raise UsageError("sample_depth must be >= 1")
    if not base.generators:
        return holds()

    if base.is_exact:
        full = base.intersection()
        if not full.is_empty_exact():
            return holds()
        culprit = _exact_empty_subfamily(base)
        return fails({"subfamily": culprit, "note": "empty intersection"})

    bounds = [g.window for g in base.generators if g.kind == WINDOW]
    if window is not None:
        bounds.append(window)
    w = min(bounds)

    depth = min(sample_depth, len(base.generators))
    for size in range(1, depth + 1):
        for combo in combinations(range(len(base.generators)), size):
            members = [base.generators[i] for i in combo]
            if all(g.is_exact for g in members):
                if intersect_all(members).is_empty_exact():
                    return fails({"subfamily": list(combo), "note": "empty intersection"})
                continue
            acc = members[0].as_bits(w)
            for g in members[1:]:
                acc &= g.as_bits(w)
            if not acc:
                return fails(
                    {"subfamily": list(combo), "note": "empty within window"},
                    window=w,
                )

    evidence = None
    if len(base.generators) <= depth:
        acc = base.generators[0].as_bits(w)
        for g in base.generators[1:]:
            acc &= g.as_bits(w)
        if acc:
            evidence = {"common_element": bit_elements(acc)[0]}
    return unknown_within(w, evidence)


def filter_refines(a: FilterBase, b: FilterBase,
                   window: Optional[int] = None) -> TriState:
    """Is the filter generated by ``a`` contained in the one generated by
    ``b``?

    Equivalent to every generator of ``a`` belonging to b's filter, so
    each is tested with the monotone shortcut.  Exact for exact bases;
    any window involvement downgrades a clean pass to ``unknown``.
    """
    if a.universe != b.universe:
        raise UsageError("bases live on different universes")
    seen_window = None
    target = b.intersection()
    for idx, g in enumerate(a.generators):
        verdict = is_subset(target, g, limit=window)
        if verdict.status == "fails":
            return fails({"generator": idx, "element": verdict.witness},
                         window=verdict.window)
        if verdict.status == "unknown":
            w = verdict.window
            seen_window = w if seen_window is None else min(seen_window, w)
    if seen_window is None:
        return holds()
    return unknown_within(seen_window)
