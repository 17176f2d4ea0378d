"""Partition oracle, staged poset, extension audit, inflation."""

import pytest

from radolab.errors import UsageError
from radolab.fraisse import (
    InflatedPreorderOracle,
    StagedPoset,
    cantor_pair,
    cantor_unpair,
    extension_property_audit,
    generic_poset_stage,
    partition_class,
    partition_window,
)


# ---------------------------------------------------------------------------
# Cantor pairing
# ---------------------------------------------------------------------------


def test_unpair_inverts_pair():
    for p in range(20):
        for i in range(20):
            assert cantor_unpair(cantor_pair(p, i)) == (p, i)


def test_unpair_is_a_bijection_prefix():
    seen = {cantor_unpair(n) for n in range(500)}
    assert len(seen) == 500


def test_partition_window_class_zero():
    assert partition_window(0, 11).elements == (0, 2, 5, 9)


def test_partition_window_empty():
    assert partition_window(3, 0).elements == ()


def test_partition_classes_disjoint():
    for w in (10, 100):
        members = [set(partition_window(c, w).elements) for c in (0, 1)]
        assert not members[0] & members[1]


def test_partition_classes_grow():
    for c in range(5):
        small = len(partition_window(c, 100).elements)
        big = len(partition_window(c, 1000).elements)
        assert big > small


# ---------------------------------------------------------------------------
# staged poset
# ---------------------------------------------------------------------------


def test_stage_zero_and_one():
    assert generic_poset_stage(0, 1).m == 0
    p1 = generic_poset_stage(1, 1)
    assert p1.m == 1
    assert p1.stage_sizes == (1,)


def test_stage_two_realizes_three_types_over_one_point():
    p = generic_poset_stage(2, 1)
    assert p.m == 4
    assert p.stage_sizes == (1, 4)
    a = 0
    relations = {(p.less(a, x), p.less(x, a)) for x in range(1, 4)}
    # one point above a, one below, one incomparable
    assert relations == {(True, False), (False, True), (False, False)}


def test_stages_are_conservative():
    small = generic_poset_stage(2, 2)
    big = generic_poset_stage(3, 2)
    assert big.stage_sizes[:2] == small.stage_sizes
    for i in range(small.m):
        for j in range(small.m):
            assert small.less(i, j) == big.less(i, j)


def test_stage_sizes_are_deterministic():
    assert generic_poset_stage(3, 2).m == generic_poset_stage(3, 2).m == 16
    assert generic_poset_stage(3, 3).m == 20


def test_poset_validation():
    with pytest.raises(UsageError):
        StagedPoset(2, (0b10, 0b01), (2,))  # 0<1 and 1<0
    chain = StagedPoset.from_relations(3, [(0, 1), (1, 2)])
    assert chain.less(0, 2)  # closure


def test_audit_empty_poset():
    assert extension_property_audit(StagedPoset(0, (), ()), 0).status == "fails"
    assert extension_property_audit(generic_poset_stage(1, 1), 0).status == "holds"


def test_audit_staged_posets_hold():
    assert extension_property_audit(generic_poset_stage(2, 1), 1).status == "holds"
    p = generic_poset_stage(3, 2)
    assert extension_property_audit(p, 1).status == "holds"
    assert extension_property_audit(p, 2).status == "holds"


def test_audit_two_chain_fails():
    chain = StagedPoset.from_relations(2, [(0, 1)])
    verdict = extension_property_audit(chain, 1)
    assert verdict.status == "fails"
    witness = verdict.witness
    # some one-point type over the chain is unrealized
    assert witness["subset"] in ([0], [1])


def test_audit_antichain_fails_on_comparability():
    anti = StagedPoset.from_relations(2, [])
    verdict = extension_property_audit(anti, 1)
    assert verdict.status == "fails"
    assert verdict.witness["down"] == [0] or verdict.witness["up"] == [0]


def test_exports():
    p = generic_poset_stage(2, 1)
    dot = p.to_dot()
    assert dot.startswith("digraph poset {")
    assert dot.count("->") == len(p.covers())
    matrix = p.to_matrix_text()
    assert len(matrix.splitlines()) == p.m


# ---------------------------------------------------------------------------
# inflation
# ---------------------------------------------------------------------------


def test_inflation_of_antichain_is_equivalence():
    anti = StagedPoset.from_relations(2, [])
    oracle = InflatedPreorderOracle(anti)
    pre = oracle.materialize(3)  # points 0,1,2 decode to fibres 0,1,0
    assert pre.arrow(0, 2) and pre.arrow(2, 0)
    assert not pre.arrow(0, 1) and not pre.arrow(1, 0)


def test_inflation_of_chain_orders_fibres_one_way():
    chain = StagedPoset.from_relations(2, [(0, 1)])
    oracle = InflatedPreorderOracle(chain)
    assert oracle.arrow(0, 1) and not oracle.arrow(1, 0)   # fibre 0 below fibre 1
    assert oracle.arrow(0, 2) and oracle.arrow(2, 0)       # same fibre


def test_inflation_materializations_are_preorders():
    p = generic_poset_stage(2, 1)
    oracle = InflatedPreorderOracle(p)
    for w in (1, 5, oracle.max_window()):
        pre = oracle.materialize(w)  # Preorder validates in its constructor
        assert pre.n == w


def test_inflation_fibres_grow_with_window():
    p = generic_poset_stage(2, 1)
    oracle = InflatedPreorderOracle(p)
    for fibre in range(p.m):
        counts = [oracle.fibre_count(fibre, w) for w in (20, 60, 200)]
        assert counts == sorted(counts) and counts[-1] > counts[0]


def test_inflation_window_out_of_range_is_usage_error():
    p = generic_poset_stage(2, 1)   # 4 elements decode windows up to 10
    oracle = InflatedPreorderOracle(p)
    assert oracle.max_window() == cantor_pair(4, 0)
    with pytest.raises(UsageError):
        oracle.materialize(11)
    with pytest.raises(UsageError):
        oracle.arrow(cantor_pair(4, 0), 0)


def test_partition_class_matches_unpairing():
    for n in range(200):
        assert partition_class(n) == cantor_unpair(n)[0]
