"""Exact and window-approximate subsets of a countable ground set.

The ground set is the naturals 0, 1, 2, ...; a finite universe of size n
means {0, ..., n-1}.  Three representations coexist:

* ``finite``:   an explicit finite set of members (exact);
* ``cofinite``: everything except an explicit finite set (exact);
* ``window``:   a bitset over [0, W).  Membership is known below W and
                the set makes no claim at W or beyond.

Operations are exact whenever every operand is exact, and otherwise give
window-bounded answers.  Three-valued outcomes are TriState values:

* ``holds``    the claim is true (for window-bounded checks the verdict
               carries the window that was used);
* ``fails``    a concrete witness was found;
* ``unknown``  consistent with the claim up to the recorded window, but
               the representations cannot settle it.

Results are normalized so that structural equality is set equality: on a
finite universe cofinite collapses to finite, and a window covering the
whole finite universe collapses to finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .errors import UsageError

FINITE = "finite"
COFINITE = "cofinite"
WINDOW = "window"


@dataclass(frozen=True)
class TriState:
    """Outcome of a possibly window-bounded check.

    ``witness`` is the payload: a counterexample for ``fails``, optional
    supporting evidence otherwise.  ``window`` records the search bound
    for window-limited verdicts.  Payloads are kept JSON-serializable.
    """

    status: str
    witness: Any = None
    window: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.status != "fails"

    def to_json(self) -> dict:
        out: dict[str, Any] = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.window is not None:
            out["window"] = self.window
        return out


def holds(witness=None, window=None) -> TriState:
    return TriState("holds", witness, window)


def fails(witness, window=None) -> TriState:
    return TriState("fails", witness, window)


def unknown_within(window: int, witness=None) -> TriState:
    return TriState("unknown", witness, window)


def _check_elements(elements, universe):
    if list(elements) != sorted(set(elements)):
        raise UsageError("element list must be strictly increasing")
    if elements and elements[0] < 0:
        raise UsageError("elements must be naturals")
    if universe is not None and elements and elements[-1] >= universe:
        raise UsageError(f"element {elements[-1]} outside finite universe {universe}")


def _mask(n: int) -> int:
    return (1 << n) - 1


def bits_of(elements) -> int:
    b = 0
    for x in elements:
        b |= 1 << x
    return b


def bit_elements(bits: int) -> tuple[int, ...]:
    out = []
    x = 0
    while bits:
        if bits & 1:
            out.append(x)
        bits >>= 1
        x += 1
    return tuple(out)


@dataclass(frozen=True)
class OmegaSet:
    """A subset of the naturals (or of {0..n-1} when ``universe`` is n).

    Construct through :meth:`finite`, :meth:`cofinite` or
    :meth:`window_set`; direct construction must already be normalized.
    ``elements`` holds the members (finite/window kinds) or the excluded
    points (cofinite kind); ``window`` is the bound W for window kind.
    """

    kind: str
    elements: tuple[int, ...]
    universe: Optional[int] = None
    window: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (FINITE, COFINITE, WINDOW):
            raise UsageError(f"unknown set kind {self.kind!r}")
        if self.universe is not None and self.universe < 0:
            raise UsageError("finite universe size must be >= 0")
        _check_elements(self.elements, self.universe)
        if self.kind == WINDOW:
            if self.window is None or self.window < 0:
                raise UsageError("window kind needs a window length")
            if self.elements and self.elements[-1] >= self.window:
                raise UsageError("window members must lie below the window")
            if self.universe is not None and self.window >= self.universe:
                raise UsageError("window covering a finite universe must be finite")
        else:
            if self.window is not None:
                raise UsageError("only window sets carry a window length")
            if self.kind == COFINITE and self.universe is not None:
                raise UsageError("cofinite is normalized to finite on finite universes")

    # -- constructors -------------------------------------------------

    @classmethod
    def finite(cls, elements, universe: Optional[int] = None) -> "OmegaSet":
        return cls(FINITE, tuple(sorted(set(elements))), universe)

    @classmethod
    def cofinite(cls, excluded=(), universe: Optional[int] = None) -> "OmegaSet":
        excluded = tuple(sorted(set(excluded)))
        if universe is not None:
            members = tuple(x for x in range(universe) if x not in set(excluded))
            return cls(FINITE, members, universe)
        return cls(COFINITE, excluded)

    @classmethod
    def window_set(cls, members, window: int, universe: Optional[int] = None) -> "OmegaSet":
        members = tuple(sorted(set(m for m in members if m < window)))
        if universe is not None and window >= universe:
            return cls(FINITE, members, universe)
        return cls(WINDOW, members, universe, window)

    @classmethod
    def full(cls, universe: Optional[int] = None) -> "OmegaSet":
        return cls.cofinite((), universe)

    @classmethod
    def empty(cls, universe: Optional[int] = None) -> "OmegaSet":
        return cls.finite((), universe)

    # -- queries ------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.kind != WINDOW

    def member(self, x: int) -> bool:
        """Exact membership.  Raises UsageError where the set is silent."""
        if x < 0 or (self.universe is not None and x >= self.universe):
            raise UsageError(f"point {x} outside the universe")
        if self.kind == FINITE:
            return x in set(self.elements)
        if self.kind == COFINITE:
            return x not in set(self.elements)
        if x >= self.window:
            raise UsageError(f"window set is silent at {x} >= W={self.window}")
        return x in set(self.elements)

    def decides(self, x: int) -> bool:
        """Whether membership of x is determined by this representation."""
        if self.universe is not None and x >= self.universe:
            return False
        return self.is_exact or x < self.window

    def as_bits(self, w: int) -> int:
        """Bitset of the members below w.  Requires the set to be decided
        on all of [0, w)."""
        if self.kind == WINDOW and w > self.window:
            raise UsageError("projection exceeds the window")
        if self.universe is not None:
            w = min(w, self.universe)
        if self.kind == COFINITE:
            return _mask(w) & ~bits_of(x for x in self.elements if x < w)
        return bits_of(x for x in self.elements if x < w)

    def effective_window(self) -> Optional[int]:
        """The bound below which membership is decided (None = everywhere)."""
        if self.kind == WINDOW:
            return self.window
        return None

    def is_empty_exact(self) -> bool:
        if self.kind == FINITE:
            return not self.elements
        if self.kind == COFINITE:
            return False
        raise UsageError("emptiness of a window set is not decidable")

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind, "elements": list(self.elements)}
        if self.universe is not None:
            out["universe"] = self.universe
        if self.window is not None:
            out["window"] = self.window
        return out


def same_universe(*sets) -> Optional[int]:
    universes = {s.universe for s in sets}
    if len(universes) > 1:
        raise UsageError(f"mixed universes: {sorted(map(str, universes))}")
    return next(iter(universes))


def intersect_all(sets) -> OmegaSet:
    """Intersection of a nonempty family.

    Exact when every input is finite/cofinite: finite meets anything
    finitely, cofinite meets cofinite in the union of the exclusions.
    If any input is a window, the result is a window of the minimum
    length, because nothing is known about the rest.
    """
    sets = list(sets)
    if not sets:
        raise UsageError("intersect_all needs at least one set")
    universe = same_universe(*sets)

    windows = [s.window for s in sets if s.kind == WINDOW]
    if windows:
        w = min(windows)
        acc = _mask(w if universe is None else min(w, universe))
        for s in sets:
            acc &= s.as_bits(w)
        return OmegaSet.window_set(bit_elements(acc), w, universe)

    finites = [s for s in sets if s.kind == FINITE]
    cofinites = [s for s in sets if s.kind == COFINITE]
    if finites:
        members = set(finites[0].elements)
        for s in finites[1:]:
            members &= set(s.elements)
        for s in cofinites:
            members -= set(s.elements)
        return OmegaSet.finite(members, universe)
    excluded: set[int] = set()
    for s in cofinites:
        excluded |= set(s.elements)
    return OmegaSet.cofinite(excluded, universe)


def _least_outside(excluded: set[int]) -> int:
    x = 0
    while x in excluded:
        x += 1
    return x


def is_subset(a: OmegaSet, b: OmegaSet, limit: Optional[int] = None) -> TriState:
    """Decide a ⊆ b as far as the representations allow.

    Exact for exact operands.  With windows involved, a definite
    counterexample below the common window yields ``fails``; otherwise
    the verdict is ``unknown`` at the checked window, except that a
    finite ``a`` whose members are all decided by ``b`` still yields
    ``holds``.  ``limit`` optionally caps the scan window.
    """
    same_universe(a, b)

    if a.is_exact and b.is_exact:
        if a.kind == FINITE:
            for x in a.elements:
                if not b.member(x):
                    return fails(x)
            return holds()
        if b.kind == COFINITE:
            # cofinite ⊆ cofinite: b's exclusions must already be excluded from a
            gap = [x for x in b.elements if x not in set(a.elements)]
            return fails(gap[0]) if gap else holds()
        # a cofinite (infinite), b finite: a always sticks out
        return fails(_least_outside(set(a.elements) | set(b.elements)))

    bounds = [s.window for s in (a, b) if s.kind == WINDOW]
    if limit is not None:
        bounds.append(limit)
    w = min(bounds)

    sticking = a.as_bits(w) & ~b.as_bits(w)
    if sticking:
        return fails(bit_elements(sticking)[0], window=w)

    if a.kind == FINITE and all(b.decides(x) for x in a.elements):
        violations = [x for x in a.elements if not b.member(x)]
        return fails(violations[0]) if violations else holds()
    return unknown_within(w)
