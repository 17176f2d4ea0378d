"""Adjacency oracles: determinism, symmetry, witnesses, descriptors."""

from fractions import Fraction
from itertools import product

import pytest

from radolab.errors import UsageError
from radolab.graphs import (
    BIT_RADO,
    BernoulliGraph,
    ColouredComplete,
    FiniteMatrixGraph,
    closed_form_witness,
    colour_subgraph,
    common_neighbour,
    extension_witness,
    neighbourhood_window,
    parse_oracle,
)
from radolab.rng import SampleStream


def test_bit_adjacency():
    assert BIT_RADO.adjacent(1, 2)       # 2 = 0b10 has bit 1
    assert not BIT_RADO.adjacent(0, 2)   # 2 = 0b10 lacks bit 0
    assert not BIT_RADO.adjacent(3, 3)
    assert BIT_RADO.adjacent(2, 1)       # symmetry


def test_bit_neighbourhoods():
    assert neighbourhood_window(BIT_RADO, 0, 8).elements == (1, 3, 5, 7)
    assert neighbourhood_window(BIT_RADO, 2, 8).elements == (1, 4, 5, 6, 7)
    assert neighbourhood_window(BIT_RADO, 5, 0).elements == ()


def test_extension_witness_examples():
    assert extension_witness(BIT_RADO, {0}, {1}, 1000) == 5
    assert extension_witness(BIT_RADO, set(), set(), 1000) == 0
    assert extension_witness(BIT_RADO, {0, 1}, {2}, 1000) == 11


def test_extension_witness_rejects_overlap():
    with pytest.raises(UsageError):
        extension_witness(BIT_RADO, {0}, {0}, 10)


def test_extension_witness_falls_back_to_scan():
    # the closed form for U={2} is 2**2 + 2**3 = 12, preferred when it fits
    assert extension_witness(BIT_RADO, {2}, set(), 1000) == 12
    # under a tighter bound the scan finds 1 (bit 1 of 2 is set)
    assert extension_witness(BIT_RADO, {2}, set(), 5) == 1


def test_closed_form_witness_bits():
    z = closed_form_witness({0, 1}, {2})
    assert z == 11
    for u in (0, 1):
        assert (z >> u) & 1
    assert not (z >> 2) & 1


def test_bit_extension_property_exhaustive_small():
    for assignment in product((0, 1, 2), repeat=5):
        joined = {i for i, a in enumerate(assignment) if a == 1}
        avoided = {i for i, a in enumerate(assignment) if a == 2}
        z = extension_witness(BIT_RADO, joined, avoided, 10**4)
        assert z is not None
        assert z not in joined | avoided
        assert all(BIT_RADO.adjacent(z, u) for u in joined)
        assert not any(BIT_RADO.adjacent(z, w) for w in avoided)


def test_common_neighbour_examples():
    assert common_neighbour(BIT_RADO, {1, 2, 3}, set(), 1000) == 14
    assert common_neighbour(BIT_RADO, set(), {0}, 1000) == 1
    # neighbours of 8 below 8 are exactly {3}; exclude it and cap the scan
    assert common_neighbour(BIT_RADO, {8}, {3}, 8) is None


def test_bernoulli_symmetry_and_determinism():
    g1 = BernoulliGraph(42, Fraction(1, 2))
    g2 = BernoulliGraph(42, Fraction(1, 2))
    other = BernoulliGraph(43, Fraction(1, 2))
    stream = SampleStream(0, "pairs")
    diffs = 0
    for _ in range(2000):
        i, j = stream.below(10**6), stream.below(10**6)
        assert g1.adjacent(i, j) == g1.adjacent(j, i)
        assert not g1.adjacent(i, i)
        assert g1.adjacent(i, j) == g2.adjacent(i, j)
        if i != j and g1.adjacent(i, j) != other.adjacent(i, j):
            diffs += 1
    assert diffs > 0  # the seed genuinely matters


def test_bernoulli_density_tracks_probability():
    g = BernoulliGraph(7, Fraction(1, 4))
    edges = sum(g.adjacent(i, j) for i in range(100) for j in range(i + 1, 100))
    assert 950 < edges < 1550  # 4950 pairs at p=1/4, generous band


def test_bernoulli_probability_bounds():
    with pytest.raises(UsageError):
        BernoulliGraph(1, Fraction(3, 2))


def test_colouring_partitions_pairs():
    colouring = ColouredComplete(7, 3)
    graphs = [colour_subgraph(colouring, {c}) for c in range(3)]
    for i in range(50):
        for j in range(i + 1, 50):
            hits = [g.adjacent(i, j) for g in graphs]
            assert sum(hits) == 1


def test_colour_subgraph_monotone():
    colouring = ColouredComplete(7, 3)
    red = colour_subgraph(colouring, {0})
    redgreen = colour_subgraph(colouring, {0, 1})
    full = colour_subgraph(colouring, {0, 1, 2})
    for i in range(40):
        for j in range(40):
            if red.adjacent(i, j):
                assert redgreen.adjacent(i, j)
            if i != j:
                assert full.adjacent(i, j)


def test_colour_subgraph_extension_audit_sampled():
    """Each single-colour subgraph of a 3-colouring behaves like the
    random graph on small disjoint requirement sets."""
    colouring = ColouredComplete(11, 3)
    stream = SampleStream(11, "audit")
    for colour in range(3):
        g = colour_subgraph(colouring, {colour})
        for _ in range(10):
            picks = stream.distinct_below(4, 60)
            joined, avoided = set(picks[:2]), set(picks[2:])
            z = extension_witness(g, joined, avoided, 10**5)
            assert z is not None


def test_finite_matrix_and_periodic_lift():
    rows = [[(i < 3) != (j < 3) for j in range(6)] for i in range(6)]
    flat = FiniteMatrixGraph.from_lists(rows)
    lifted = FiniteMatrixGraph.from_lists(rows, periodic=True)
    assert flat.adjacent(0, 3) and not flat.adjacent(0, 1)
    assert not flat.adjacent(0, 100)
    assert lifted.adjacent(0, 9)      # 9 % 6 = 3, other side
    assert not lifted.adjacent(0, 6)  # same residue class side
    assert not lifted.adjacent(0, 12)


def test_matrix_validation():
    with pytest.raises(UsageError):
        FiniteMatrixGraph.from_lists([[0, 1], [0, 0]])
    with pytest.raises(UsageError):
        FiniteMatrixGraph.from_lists([[1, 0], [0, 0]])


def test_descriptor_round_trips():
    for desc in ("bitrado", "bernoulli:seed=42,p=1/2",
                 "colour:seed=7,k=3,colours=0,1"):
        assert parse_oracle(desc).descriptor() == desc


def test_descriptor_file(tmp_path):
    path = tmp_path / "k33.txt"
    rows = [[(i < 3) != (j < 3) for j in range(6)] for i in range(6)]
    path.write_text("\n".join("".join("1" if v else "0" for v in row) for row in rows))
    g = parse_oracle(f"file:{path}")
    assert g.adjacent(0, 3) and not g.adjacent(0, 1)
    lifted = parse_oracle(f"file:{path}:periodic")
    assert lifted.adjacent(0, 9)


def test_descriptor_errors():
    with pytest.raises(UsageError):
        parse_oracle("nonsense")
    with pytest.raises(UsageError):
        parse_oracle("bernoulli:seed=1")
    with pytest.raises(UsageError):
        parse_oracle("colour:seed=1,k=3,colours=0;1")
