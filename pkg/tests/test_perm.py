"""Groups: orbits, blocks, primitivity, orbitals, invariant preorders."""

from itertools import product

import pytest

from radolab.errors import ResourceLimitError, UsageError
from radolab.perm import (
    PermGroup,
    Permutation,
    alternating_group,
    c2_wreath_c2,
    cyclic_group,
    dihedral_group,
    invariant_preorders,
    invariant_topologies,
    is_primitive,
    is_strongly_primitive,
    is_transitive,
    klein_four_group,
    minimal_block,
    orbit,
    orbitals,
    parse_generators,
    parse_permutation,
    separation_witness,
    symmetric_group,
)
from radolab.topology import Preorder, separation_class


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def all_partitions(n):
    def rec(i, maxc, assign):
        if i == n:
            blocks = {}
            for x, c in enumerate(assign):
                blocks.setdefault(c, set()).add(x)
            yield list(blocks.values())
            return
        for c in range(maxc + 1):
            yield from rec(i + 1, max(maxc, c + 1), assign + [c])
    yield from rec(0, 0, [])


def invariant_partitions(group):
    """Partitions every generator maps onto themselves."""
    out = []
    for blocks in all_partitions(group.degree):
        frozen = {frozenset(b) for b in blocks}
        if all({frozenset(g[x] for x in b) for b in frozen} == frozen
               for g in group.generators):
            out.append(frozen)
    return out


def oracle_minimal_block(group, x, y):
    """Meet of all invariant partitions joining x and y: intersect their
    blocks through x."""
    block = set(range(group.degree))
    for partition in invariant_partitions(group):
        mine = next(b for b in partition if x in b)
        if y in mine:
            block &= mine
    return block


def oracle_invariant_preorders(group):
    """Brute force over all reflexive transitive matrices, kept when every
    generator preserves the relation."""
    n = group.degree
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    found = set()
    for bits in product((False, True), repeat=len(cells)):
        rel = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), v in zip(cells, bits):
            rel[i][j] = v
        if not all(not (rel[i][j] and rel[j][k]) or rel[i][k]
                   for i in range(n) for j in range(n) for k in range(n)):
            continue
        if all(rel[g[i]][g[j]] == rel[i][j]
               for g in group.generators for i in range(n) for j in range(n)):
            found.add(Preorder.from_matrix(rel).rows)
    return found


# ---------------------------------------------------------------------------
# parsing and arithmetic
# ---------------------------------------------------------------------------


def test_parse_cycles():
    p = parse_permutation("(0 1 2 3)(4 5)", 6)
    assert p.images == (1, 2, 3, 0, 5, 4)
    assert p.cycle_string() == "(0 1 2 3)(4 5)"


def test_parse_accepts_commas_inside_cycles():
    assert parse_permutation("(0, 1, 2)", 3).images == (1, 2, 0)


def test_parse_generator_list():
    gens = parse_generators("(0 1 2),(0 1)", 3)
    assert [g.images for g in gens] == [(1, 2, 0), (1, 0, 2)]


def test_parse_rejects_junk():
    with pytest.raises(UsageError):
        parse_permutation("(0 1) nonsense", 3)
    with pytest.raises(UsageError):
        parse_permutation("(0 0 1)", 3)


def test_multiplication_applies_left_to_right():
    a = parse_permutation("(0 1)", 3)
    b = parse_permutation("(1 2)", 3)
    assert (a * b)[0] == 2
    assert (a * b.inverse() * b)[0] == a[0]


# ---------------------------------------------------------------------------
# orbits, transitivity, blocks
# ---------------------------------------------------------------------------


def test_orbit_of_full_cycle():
    assert orbit(cyclic_group(4), 0).elements == (0, 1, 2, 3)


def test_orbit_identity_group():
    g = PermGroup(3, (Permutation.identity(3),))
    assert orbit(g, 2).elements == (2,)


def test_orbit_of_double_transposition():
    g = PermGroup(4, (parse_permutation("(0 1)(2 3)", 4),))
    assert orbit(g, 0).elements == (0, 1)


def test_transitivity():
    assert is_transitive(cyclic_group(4))
    assert not is_transitive(PermGroup(3, (parse_permutation("(0 1)", 3),)))
    assert is_transitive(symmetric_group(3))


@pytest.mark.parametrize("group,x,y", [
    (cyclic_group(4), 0, 2),
    (symmetric_group(3), 0, 1),
    (cyclic_group(6), 0, 3),
    (dihedral_group(4), 0, 2),
    (klein_four_group(), 0, 3),
])
def test_minimal_block_matches_partition_oracle(group, x, y):
    ours = set(minimal_block(group, x, y).elements)
    assert ours == oracle_minimal_block(group, x, y)


def test_minimal_block_examples():
    assert minimal_block(cyclic_group(4), 0, 2).elements == (0, 2)
    assert minimal_block(symmetric_group(3), 0, 1).elements == (0, 1, 2)
    assert minimal_block(cyclic_group(6), 0, 3).elements == (0, 3)


def test_minimal_block_requires_transitive():
    with pytest.raises(UsageError):
        minimal_block(PermGroup(3, (parse_permutation("(0 1)", 3),)), 0, 1)


def test_minimal_block_output_is_a_block():
    group = cyclic_group(6)
    block = set(minimal_block(group, 0, 2).elements)
    for g in group.elements():
        image = {g[x] for x in block}
        assert image == block or not (image & block)


def test_primitivity():
    assert is_primitive(cyclic_group(5))
    assert not is_primitive(cyclic_group(4))
    assert is_primitive(symmetric_group(4))


# ---------------------------------------------------------------------------
# orbitals and invariant preorders
# ---------------------------------------------------------------------------


def test_orbital_counts():
    assert len(orbitals(symmetric_group(3))) == 2
    assert len(orbitals(cyclic_group(4))) == 4
    assert len(orbitals(PermGroup(2, (Permutation.identity(2),)))) == 4


def test_orbitals_diagonal_first():
    orbs = orbitals(cyclic_group(4))
    assert all(a == b for a, b in orbs[0])
    assert all(any(a != b for a, b in o) for o in orbs[1:])


@pytest.mark.parametrize("group", [
    symmetric_group(3),
    cyclic_group(4),
    klein_four_group(),
    PermGroup(2, (Permutation.identity(2),)),
])
def test_invariant_preorders_match_brute_force(group):
    ours = {p.rows for p in invariant_preorders(group)}
    assert ours == oracle_invariant_preorders(group)


def test_invariant_preorders_c4():
    found = invariant_preorders(cyclic_group(4))
    assert len(found) == 3
    nontrivial = [p for p in found if not p.is_trivial()]
    assert len(nontrivial) == 1
    # the one non-trivial preorder is the block equivalence {0,2} | {1,3}
    p = nontrivial[0]
    assert p.arrow(0, 2) and p.arrow(2, 0) and not p.arrow(0, 1)


def test_invariant_preorders_are_invariant_and_valid():
    for group in (cyclic_group(6), dihedral_group(5), c2_wreath_c2()):
        for p in invariant_preorders(group):
            for g in group.generators:
                for i in range(group.degree):
                    for j in range(group.degree):
                        assert p.arrow(g[i], g[j]) == p.arrow(i, j)


def test_strong_primitivity():
    assert is_strongly_primitive(symmetric_group(3))
    assert not is_strongly_primitive(cyclic_group(4))
    assert is_strongly_primitive(cyclic_group(5))


def test_invariant_topologies_c4():
    tops = invariant_topologies(cyclic_group(4))
    assert len(tops) == 3
    nontrivial = [t for t in tops if not t.is_trivial()]
    assert len(nontrivial) == 1
    t0, _ = separation_class(nontrivial[0])
    assert not t0


def test_invariant_topologies_s3_all_trivial():
    assert all(t.is_trivial() for t in invariant_topologies(symmetric_group(3)))


# ---------------------------------------------------------------------------
# separation witnesses
# ---------------------------------------------------------------------------


def test_separation_witness_s3():
    g = separation_witness(symmetric_group(3), {0}, 1, 2)
    assert g is not None
    assert g[1] == 0 and g[2] != 0


def test_separation_witness_absent_for_c4_block():
    assert separation_witness(cyclic_group(4), {0, 2}, 0, 2) is None


def test_separation_witness_c5():
    g = separation_witness(cyclic_group(5), {0, 1}, 0, 1)
    assert g is not None
    assert g[0] in {0, 1} and g[1] not in {0, 1}


def test_separation_witness_matches_exhaustive_search():
    for group in (cyclic_group(4), cyclic_group(5), symmetric_group(3)):
        n = group.degree
        for delta in ({0}, {0, 1}):
            for x in range(n):
                for y in range(n):
                    if x == y:
                        continue
                    ours = separation_witness(group, delta, x, y)
                    exists = any(g[x] in delta and g[y] not in delta
                                 for g in group.elements())
                    assert (ours is not None) == exists


def test_separation_witness_rejects_trivial_delta():
    with pytest.raises(UsageError):
        separation_witness(symmetric_group(3), set(), 0, 1)
    with pytest.raises(UsageError):
        separation_witness(symmetric_group(3), {0, 1, 2}, 0, 1)


def test_primitive_groups_have_separation_property():
    for group in (cyclic_group(5), symmetric_group(4), alternating_group(4)):
        assert is_primitive(group)
        n = group.degree
        for delta in ({0}, {0, 1}, set(range(1, n))):
            for x in range(n):
                for y in range(n):
                    if x != y:
                        assert separation_witness(group, delta, x, y) is not None


def test_element_enumeration_cap():
    with pytest.raises(ResourceLimitError):
        symmetric_group(6).elements(limit=100)


def test_group_orders():
    assert symmetric_group(4).order() == 24
    assert alternating_group(5).order() == 60
    assert dihedral_group(6).order() == 12
    assert klein_four_group().order() == 4
    assert c2_wreath_c2().order() == 8
