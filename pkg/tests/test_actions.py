"""Integer actions, translates, and the two moiety conditions."""

import pytest

from radolab.errors import UsageError
from radolab.actions import (
    EVEN_MOIETY,
    NEG_SHIFT_ACTION,
    NONNEG_MOIETY,
    SHIFT2_ACTION,
    SHIFT_ACTION,
    TRIVIAL_ACTION,
    Moiety,
    Word,
    decode_int,
    encode_int,
    enumerate_words,
    mekler_filter_check,
    mekler_topology_check,
    parse_action,
    parse_moiety,
    translate,
)


def word_of(action, *names):
    letters = {name: letter for letter in action.letters()
               for name in [letter[0]]}
    return Word(tuple(letters[n] for n in names))


def decoded_members(s):
    return sorted(decode_int(n) for n in s.elements)


# ---------------------------------------------------------------------------
# encoding and words
# ---------------------------------------------------------------------------


def test_zigzag_encoding():
    assert [encode_int(z) for z in (0, -1, 1, -2, 2)] == [0, 1, 2, 3, 4]
    for n in range(100):
        assert encode_int(decode_int(n)) == n


def test_generators_invert():
    SHIFT_ACTION.self_check()
    NEG_SHIFT_ACTION.self_check()
    SHIFT2_ACTION.self_check()


def test_word_application_order():
    w = word_of(NEG_SHIFT_ACTION, "shift+1", "neg")
    assert w.apply(3) == -4           # shift then negate
    assert w.apply_inverse(-4) == 3


def test_translate_of_evens_by_shift_is_odds():
    shifted = translate(EVEN_MOIETY, word_of(SHIFT_ACTION, "shift+1"), 64)
    assert all(z % 2 == 1 for z in decoded_members(shifted))
    assert len(shifted.elements) == 32


def test_translate_by_empty_word_is_identity():
    out = translate(EVEN_MOIETY, Word(), 64)
    assert all(z % 2 == 0 for z in decoded_members(out))


def test_translate_of_halfline():
    w = word_of(SHIFT_ACTION, "shift+1'", "shift+1'", "shift+1'")
    out = translate(NONNEG_MOIETY, w, 64)
    assert min(decoded_members(out)) == -3


def test_translate_roundtrip_on_window():
    for word_names in (("shift+1",), ("neg",), ("shift+1", "neg")):
        w = word_of(NEG_SHIFT_ACTION, *word_names)
        inverse = Word(tuple(
            (name + "'" if not name.endswith("'") else name[:-1], g, -s)
            for name, g, s in reversed(w.letters)))
        window = 64
        once = translate(EVEN_MOIETY, w, window)
        back = {n for n in range(window)
                if EVEN_MOIETY.contains(inverse.apply_inverse(
                    w.apply_inverse(decode_int(n))))}
        assert set(once.elements) == {
            n for n in range(window)
            if EVEN_MOIETY.contains(w.apply_inverse(decode_int(n)))}
        assert back == {n for n in range(window)
                        if EVEN_MOIETY.contains(decode_int(n))}


def test_word_enumeration_dedupes_inverses():
    words = enumerate_words(SHIFT_ACTION, 4, 1024)
    # shifts by -4..4 exactly, once each
    assert len(words) == 9
    labels = [w.label for w in words]
    assert labels[0] == "id"
    assert "shift+1" in labels and "shift+1'" in labels


def test_word_enumeration_neg_shift():
    words = enumerate_words(NEG_SHIFT_ACTION, 2, 1024)
    images = sorted(tuple(w.apply(z) for z in (-2, 0, 3)) for w in words)
    assert len(set(images)) == len(words)


# ---------------------------------------------------------------------------
# moiety plumbing
# ---------------------------------------------------------------------------


def test_moiety_window_check():
    EVEN_MOIETY.check_window(1000, 100)
    with pytest.raises(UsageError):
        Moiety("empty", lambda z: False).check_window(1000, 10)
    with pytest.raises(UsageError):
        Moiety("all", lambda z: True).check_window(1000, 10)


def test_parse_action_and_moiety():
    assert parse_action("shift") is SHIFT_ACTION
    assert parse_action("trivial") is TRIVIAL_ACTION
    assert parse_moiety("even") is EVEN_MOIETY
    m = parse_moiety("set:0,2,4")
    assert m.contains(0) and m.contains(1) and not m.contains(-1)
    m.check_window(1000, 50)
    with pytest.raises(UsageError):
        parse_action("rotate")
    with pytest.raises(UsageError):
        parse_moiety("set:")


# ---------------------------------------------------------------------------
# the two conditions
# ---------------------------------------------------------------------------


def test_even_shift_topology_holds():
    verdict = mekler_topology_check(EVEN_MOIETY, SHIFT_ACTION, 2, 2, 2048, 64)
    assert verdict.status == "holds"
    assert verdict.window == 2048


def test_even_shift_filter_fails_at_unit_shift():
    verdict = mekler_filter_check(EVEN_MOIETY, SHIFT_ACTION, 2, 2, 2048, 64)
    assert verdict.status == "fails"
    assert verdict.witness["words"] == ["id", "shift+1"]
    assert verdict.witness["size"] == 0


def test_nonneg_shift_filter_holds():
    verdict = mekler_filter_check(NONNEG_MOIETY, SHIFT_ACTION, 4, 4, 2048, 64)
    assert verdict.status == "holds"


def test_trivial_action_holds_both_ways():
    assert mekler_topology_check(EVEN_MOIETY, TRIVIAL_ACTION, 3, 3, 512, 50).status == "holds"
    assert mekler_filter_check(EVEN_MOIETY, TRIVIAL_ACTION, 3, 3, 512, 50).status == "holds"


def test_padded_moiety_fails_topology_with_pinned_witness():
    """A moiety with one stray point near the seam: {0, 1} plus the even
    integers from 10 up.  Its intersection with the shift-by-one translate
    is the finite nonempty {1}: 1 sits in the set and in the translate
    (0 + 1), while the tails have opposite parities.  The oracle below
    recomputes that witness directly before pinning it."""
    padded = Moiety("padded", lambda z: z in (0, 1) or (z >= 10 and z % 2 == 0))
    window = 2048

    def direct_intersection(shift):
        return sorted(
            z for z in range(-window // 2, window // 2)
            if padded.contains(z) and padded.contains(z - shift))

    assert direct_intersection(1) == [1]

    verdict = mekler_topology_check(padded, SHIFT_ACTION, 1, 2, window, 64)
    assert verdict.status == "fails"
    assert verdict.witness["words"] == ["id", "shift+1"]
    assert verdict.witness["intersection"] == [1]


def test_filter_check_stronger_than_topology_check():
    cases = [
        (EVEN_MOIETY, SHIFT_ACTION),
        (NONNEG_MOIETY, SHIFT_ACTION),
        (EVEN_MOIETY, TRIVIAL_ACTION),
        (NONNEG_MOIETY, SHIFT2_ACTION),
        (parse_moiety("set:0,2,4"), SHIFT_ACTION),
    ]
    for moiety, action in cases:
        filt = mekler_filter_check(moiety, action, 2, 2, 1024, 32)
        topo = mekler_topology_check(moiety, action, 2, 2, 1024, 32)
        if filt.status == "holds":
            assert topo.status == "holds"


def test_neg_shift_halfline_filter_fails():
    """Negation flips the half-line, so the filter condition dies: the
    set meets its own negation-translate in a bounded block only."""
    verdict = mekler_filter_check(NONNEG_MOIETY, NEG_SHIFT_ACTION, 1, 2, 2048, 200)
    assert verdict.status == "fails"
