"""Computable group actions on the integers and moiety conditions.

The ground set is the integers, zigzag-encoded into the naturals
(0, -1, 1, -2, 2, ...  <->  0, 1, 2, 3, 4, ...), so window bounds mean
symmetric ranges of integers.  An action is a list of named bijections
with explicit inverses; words over the generators and their inverses act
on the right, so the translate of a set D by a word w is
{x : x . w^-1 in D}.

A moiety is an infinite, co-infinite subset.  Two conditions on a moiety
under an action are checked, both over every combination of at most
max_n translates by words of length at most max_word_len:

* topology mode: each windowed intersection must be empty or large
  (at least ``inf_threshold`` members inside the window);
* filter mode: each must be large, empty included as a failure.

Passing verdicts carry the window and threshold that bounded the check;
failures carry the word tuple and the finite intersection found.  The
filter condition is strictly stronger, which the tests exercise on the
shift action: the even integers pass in topology mode but fail in filter
mode at the translate pair (identity, shift by one), while the
non-negative integers pass in filter mode because translates of a
half-line are half-lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Optional

from .errors import UsageError
from .sets import OmegaSet, TriState, fails, holds

DEDUP_SAMPLE = 512


def encode_int(z: int) -> int:
    """Zigzag: 0, -1, 1, -2, 2, ... onto 0, 1, 2, 3, 4, ..."""
    return 2 * z if z >= 0 else -2 * z - 1


def decode_int(n: int) -> int:
    if n < 0:
        raise UsageError("encoded points are naturals")
    return n // 2 if n % 2 == 0 else -(n + 1) // 2


@dataclass(frozen=True)
class Generator:
    """A bijection of the integers with an explicit inverse."""

    name: str
    forward: Callable[[int], int]
    backward: Callable[[int], int]

    def self_check(self, points: Iterable[int]) -> None:
        for z in points:
            if self.backward(self.forward(z)) != z or self.forward(self.backward(z)) != z:
                raise UsageError(f"generator {self.name!r} fails inversion at {z}")


def shift_generator(c: int) -> Generator:
    return Generator(f"shift{c:+d}", lambda z, c=c: z + c, lambda z, c=c: z - c)


def negation_generator() -> Generator:
    return Generator("neg", lambda z: -z, lambda z: -z)


def finite_support_generator(name: str, mapping: dict[int, int]) -> Generator:
    """Permutation moving only the keys of ``mapping``."""
    if sorted(mapping) != sorted(mapping.values()):
        raise UsageError("mapping must permute its support")
    inverse = {v: k for k, v in mapping.items()}
    return Generator(
        name,
        lambda z, m=mapping: m.get(z, z),
        lambda z, m=inverse: m.get(z, z),
    )


@dataclass(frozen=True)
class ActionOracle:
    generators: tuple[Generator, ...]

    def self_check(self, radius: int = 64) -> None:
        points = range(-radius, radius + 1)
        for g in self.generators:
            g.self_check(points)

    def letters(self) -> list[tuple[str, Generator, int]]:
        """Generator letters and their inverses as first-class letters."""
        out = []
        for g in self.generators:
            out.append((g.name, g, +1))
            out.append((g.name + "'", g, -1))
        return out


TRIVIAL_ACTION = ActionOracle(())
SHIFT_ACTION = ActionOracle((shift_generator(1),))
SHIFT2_ACTION = ActionOracle((shift_generator(1), shift_generator(2)))
NEG_SHIFT_ACTION = ActionOracle((shift_generator(1), negation_generator()))


@dataclass(frozen=True)
class Word:
    """A word over generator letters; acts left to right."""

    letters: tuple[tuple[str, Generator, int], ...] = ()

    @property
    def label(self) -> str:
        return "·".join(name for name, _, _ in self.letters) or "id"

    def apply(self, z: int) -> int:
        for _, g, sign in self.letters:
            z = g.forward(z) if sign > 0 else g.backward(z)
        return z

    def apply_inverse(self, z: int) -> int:
        for _, g, sign in reversed(self.letters):
            z = g.backward(z) if sign > 0 else g.forward(z)
        return z


@dataclass(frozen=True)
class Moiety:
    """Predicate-backed subset of the integers, believed infinite and
    co-infinite; ``check_window`` verifies that belief on a window."""

    name: str
    contains: Callable[[int], bool]

    def check_window(self, window: int, threshold: int) -> None:
        inside = outside = 0
        for n in range(window):
            if self.contains(decode_int(n)):
                inside += 1
            else:
                outside += 1
        if inside < threshold or outside < threshold:
            raise UsageError(
                f"{self.name!r} does not look like a moiety in window {window}: "
                f"{inside} in, {outside} out, need {threshold} each")


EVEN_MOIETY = Moiety("even", lambda z: z % 2 == 0)
NONNEG_MOIETY = Moiety("nonneg", lambda z: z >= 0)


def translate(moiety: Moiety, word: Word, window: int) -> OmegaSet:
    """Windowed image of the moiety under the word (right action)."""
    members = (n for n in range(window)
               if moiety.contains(word.apply_inverse(decode_int(n))))
    return OmegaSet.window_set(members, window)


def enumerate_words(action: ActionOracle, max_word_len: int,
                    window: int) -> list[Word]:
    """Words of length at most max_word_len, shortest first, deduplicated
    by their action on the first min(window, 512) encoded points.  Merged
    duplicates only drop repeated checks; commuting generators would
    otherwise blow the count up exponentially."""
    sample = [decode_int(n) for n in range(min(window, DEDUP_SAMPLE))]
    letters = action.letters()
    seen: dict[tuple[int, ...], Word] = {}
    frontier = [Word()]
    seen[tuple(sample)] = frontier[0]
    out = [frontier[0]]
    for _ in range(max_word_len):
        next_frontier = []
        for word in frontier:
            for letter in letters:
                candidate = Word(word.letters + (letter,))
                key = tuple(candidate.apply(z) for z in sample)
                if key not in seen:
                    seen[key] = candidate
                    next_frontier.append(candidate)
                    out.append(candidate)
        frontier = next_frontier
    return out


def _translate_bits(moiety: Moiety, word: Word, window: int) -> int:
    bits = 0
    for n in range(window):
        if moiety.contains(word.apply_inverse(decode_int(n))):
            bits |= 1 << n
    return bits


def _check_intersections(moiety: Moiety, action: ActionOracle,
                         max_word_len: int, max_n: int, window: int,
                         inf_threshold: int,
                         allow_empty: bool) -> TriState:
    if max_n < 1:
        raise UsageError("max_n must be >= 1")
    words = enumerate_words(action, max_word_len, window)
    masks = {w.label: _translate_bits(moiety, w, window) for w in words}
    labels = [w.label for w in words]

    for size in range(1, max_n + 1):
        for combo in combinations_with_replacement(labels, size):
            acc = (1 << window) - 1
            for label in combo:
                acc &= masks[label]
            count = bin(acc).count("1")
            if count == 0 and allow_empty:
                continue
            if count < inf_threshold:
                found = [decode_int(n) for n in range(window) if acc & (1 << n)]
                return fails(
                    {"words": list(combo), "intersection": found, "size": count},
                    window=window,
                )
    return holds(witness={"threshold": inf_threshold}, window=window)


def mekler_topology_check(moiety: Moiety, action: ActionOracle,
                          max_word_len: int, max_n: int, window: int,
                          inf_threshold: int) -> TriState:
    """Every combination of translates intersects to nothing or to a lot."""
    return _check_intersections(moiety, action, max_word_len, max_n,
                                window, inf_threshold, allow_empty=True)


def mekler_filter_check(moiety: Moiety, action: ActionOracle,
                        max_word_len: int, max_n: int, window: int,
                        inf_threshold: int) -> TriState:
    """Every combination of translates intersects to a lot; empty fails."""
    return _check_intersections(moiety, action, max_word_len, max_n,
                                window, inf_threshold, allow_empty=False)


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------


def parse_action(descriptor: str) -> ActionOracle:
    table = {
        "trivial": TRIVIAL_ACTION,
        "shift": SHIFT_ACTION,
        "shift2": SHIFT2_ACTION,
        "neg-shift": NEG_SHIFT_ACTION,
    }
    try:
        return table[descriptor.strip()]
    except KeyError:
        raise UsageError(f"unknown action {descriptor!r}; "
                         f"known: {', '.join(sorted(table))}") from None


def parse_moiety(descriptor: str) -> Moiety:
    descriptor = descriptor.strip()
    if descriptor == "even":
        return EVEN_MOIETY
    if descriptor == "nonneg":
        return NONNEG_MOIETY
    if descriptor.startswith("set:"):
        # explicit encoded members up to their maximum, then an even
        # encoded tail so the set stays a moiety
        try:
            listed = frozenset(int(tok) for tok in descriptor[4:].split(",") if tok)
        except ValueError:
            raise UsageError(f"bad set moiety {descriptor!r}") from None
        if not listed:
            raise UsageError("set moiety needs at least one member")
        top = max(listed)
        return Moiety(
            descriptor,
            lambda z, listed=listed, top=top: (
                encode_int(z) in listed if encode_int(z) <= top
                else encode_int(z) % 2 == 0),
        )
    raise UsageError(f"unknown moiety {descriptor!r}; known: even, nonneg, set:a,b,...")
