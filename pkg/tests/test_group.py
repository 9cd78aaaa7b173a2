"""Group tests."""

import itertools

import numpy as np
import pytest
from conftest import named
from hypothesis import given, settings
from hypothesis import strategies as st

from mackey_bisets.exception import (
    GroupSpecError,
    GroupTableError,
    InputError,
    OrderCapError,
    SubgroupError,
)
from mackey_bisets.group.catalog import (
    build_group,
    cayley_invariants,
    group_from_name,
    parse_group_arg,
    spec_label,
)
from mackey_bisets.group.core import FiniteGroup, GroupHom
from mackey_bisets.group.cosets import (
    centralizer,
    conjugacy_class_index,
    conjugate_subgroup,
    conjugating_element,
    conjugation_realizing,
    double_cosets,
    enumerate_subgroups,
    left_transversal,
    normalizer,
    realizing_elements,
    subgroup_conjugacy_classes,
)


def _closed_subsets(group):
    """Brute force: every subset containing the identity closed under products and inverses."""
    others = [a for a in range(group.order) if a != group.identity]
    found = set()
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            elements = (group.identity,) + extra
            members = set(elements)
            if all(group.mul(a, b) in members for a in elements for b in elements):
                found.add(tuple(sorted(elements)))
    return found


def test_trivial_group():
    """Test the cyclic group of order one."""
    group = build_group({"kind": "cyclic", "n": 1})
    assert group.order == 1
    assert group.table.tolist() == [[0]]
    assert [H.to_list() for H in enumerate_subgroups(group)] == [[0]]


def test_catalog_orders():
    """Test the orders of the catalog groups."""
    orders = {"C6": 6, "S3": 6, "D4": 8, "Q8": 8, "V4": 4, "A4": 12, "S4": 24, "C2xS3": 12}
    for name, order in orders.items():
        assert named(name).order == order


def test_perm_generators_match_symmetric():
    """Test S3 from generators has the invariants of the catalog S3."""
    generated = build_group({"kind": "perm", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]})
    assert generated.order == 6
    assert cayley_invariants(generated) == cayley_invariants(named("S3"))


def test_product_matches_klein():
    """Test C2xC2 has the invariants of the Klein four-group."""
    assert cayley_invariants(named("C2xC2")) == cayley_invariants(named("V4"))
    assert cayley_invariants(named("C2xC2")) != cayley_invariants(named("C4"))


def test_build_group_is_cached():
    """Test identical specs give the same instance."""
    assert build_group({"kind": "dihedral", "n": 4}) is named("D4")


def test_group_from_name():
    """Test the catalog shorthand."""
    assert group_from_name("D4") == {"kind": "dihedral", "n": 4}
    assert group_from_name("Q8") == {"kind": "quaternion"}
    assert group_from_name("C2xS3") == {
        "kind": "product",
        "factors": [{"kind": "cyclic", "n": 2}, {"kind": "symmetric", "n": 3}],
    }
    with pytest.raises(GroupSpecError):
        group_from_name("X9")


def test_parse_group_arg():
    """Test JSON and shorthand group arguments."""
    assert parse_group_arg('{"kind": "cyclic", "n": 6}') == {"kind": "cyclic", "n": 6}
    assert parse_group_arg("A4") == {"kind": "alternating", "n": 4}
    assert spec_label(parse_group_arg("C2xC2")) == "C2xC2"
    with pytest.raises(GroupSpecError):
        parse_group_arg('{"kind": "cyclic"}')
    with pytest.raises(GroupSpecError):
        parse_group_arg('{"kind": "cyclic", "n": 0}')
    with pytest.raises(GroupSpecError):
        parse_group_arg("{not json")
    with pytest.raises(GroupSpecError) as e:
        parse_group_arg("@no-such-group.json")
    assert isinstance(e.value.__cause__, InputError)


def test_invalid_tables():
    """Test Cayley tables violating the group axioms."""
    with pytest.raises(GroupTableError):
        FiniteGroup([[0, 1], [0, 1]])
    with pytest.raises(GroupTableError, match="rows"):
        FiniteGroup([[0, 1], [1]])
    with pytest.raises(GroupTableError):
        FiniteGroup([[0, 1], 1])
    ragged = {"kind": "table", "table": [[0, 1], [1]]}
    with pytest.raises(GroupTableError):
        build_group({"kind": "product", "factors": [ragged, {"kind": "cyclic", "n": 2}]})
    with pytest.raises(GroupTableError):
        FiniteGroup([[0, 1, 2], [1, 2, 0], [2, 1, 0]])
    with pytest.raises(GroupTableError):
        FiniteGroup([])
    with pytest.raises(GroupTableError):
        build_group({"kind": "table", "table": [[0, 1, 2], [1, 0, 2], [2, 2, 0]]})


def test_non_associative_table():
    """Test a Latin square with identity that is not associative."""
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupTableError):
        FiniteGroup(table)


def test_order_cap():
    """Test generated groups refuse to exceed the order cap."""
    with pytest.raises(OrderCapError):
        build_group({"kind": "symmetric", "n": 9})


def test_alternating_elements_are_even():
    """Test A4 consists of the even permutations and has 10 subgroups."""
    group = named("A4")
    assert group.order == 12
    assert len(enumerate_subgroups(group)) == 10
    assert sorted(group.element_order(a) for a in range(12)) == [1] + [2] * 3 + [3] * 8


def test_subgroup_counts():
    """Test the number of subgroups of the catalog groups."""
    counts = {"S3": 6, "V4": 5, "C6": 4, "D4": 10, "Q8": 6, "S4": 30}
    for name, count in counts.items():
        assert len(enumerate_subgroups(named(name))) == count


def test_s3_subgroups(s3):
    """Test the subgroups of S3 in canonical order."""
    subs = [H.to_list() for H in enumerate_subgroups(s3)]
    assert subs == [[0], [0, 1], [0, 2], [0, 5], [0, 3, 4], [0, 1, 2, 3, 4, 5]]


@pytest.mark.parametrize("name", ["S3", "V4", "D4", "Q8", "C6"])
def test_enumerate_subgroups_against_closed_subsets(name):
    """Test subgroup enumeration against the subset closure oracle."""
    group = named(name)
    assert {H.elements for H in enumerate_subgroups(group)} == _closed_subsets(group)


def test_subgroup_validation(s3):
    """Test non-subgroups are rejected."""
    with pytest.raises(SubgroupError):
        s3.subgroup([0, 3])
    with pytest.raises(SubgroupError):
        s3.subgroup([1, 2])
    with pytest.raises(SubgroupError):
        s3.subgroup([0, 7])


def test_conjugate(s3, s3_c2):
    """Test subgroup conjugation."""
    assert s3_c2.conjugate(s3.identity) == s3_c2
    rotations = s3.subgroup([0, 3, 4])
    assert all(rotations.conjugate(g) == rotations for g in range(6))
    moved = conjugate_subgroup(s3_c2, 3)
    assert moved != s3_c2
    assert moved.order == 2
    # (1 2) conjugates (0 1) to (0 2)
    assert conjugating_element(s3_c2, s3.subgroup([0, 5])) == 1
    g = conjugating_element(s3_c2, s3.subgroup([0, 5]), ambient=rotations)
    assert g in (3, 4)
    assert conjugate_subgroup(s3_c2, g) == s3.subgroup([0, 5])
    assert conjugating_element(rotations, s3_c2) is None


def test_centralizer_and_normalizer(s3, klein):
    """Test centralizers and normalizers."""
    assert centralizer(s3.full, s3.trivial) == s3.full
    rotations = s3.subgroup([0, 3, 4])
    assert centralizer(s3.full, rotations) == rotations
    assert centralizer(s3.full, s3.full) == s3.trivial
    for H in enumerate_subgroups(klein):
        assert centralizer(klein.full, H) == klein.full
    assert normalizer(s3.full, rotations) == s3.full
    assert normalizer(s3.full, s3.subgroup([0, 2])) == s3.subgroup([0, 2])


def test_double_cosets(s3, s3_c2):
    """Test double coset decompositions."""
    whole = double_cosets(s3.full, s3.full, s3.full)
    assert whole.representatives == (0,)
    free = double_cosets(s3.full, s3.trivial, s3.trivial)
    assert len(free) == 6
    two = double_cosets(s3.full, s3_c2, s3_c2)
    assert len(two) == 2
    assert sorted(two.sizes) == [2, 4]
    assert two.representatives[0] == 0
    assert sorted(x for pos in range(2) for x in two.coset(pos)) == list(range(6))


def test_left_transversal(s3, s3_c2):
    """Test left coset representatives, identity coset first."""
    reps = left_transversal(s3.full, s3_c2)
    assert reps[0] == 0
    assert len(reps) == 3
    cosets = {frozenset(s3.mul(t, h) for h in s3_c2) for t in reps}
    assert len(cosets) == 3


def test_conjugacy_classes(s3):
    """Test conjugacy classes of subgroups."""
    classes = subgroup_conjugacy_classes(s3.full)
    assert [len(members) for members in classes] == [1, 3, 1, 1]
    index = conjugacy_class_index(s3.full)
    assert index[s3.subgroup([0, 1])] == index[s3.subgroup([0, 5])]


def test_conjugation_realizing(s3, klein):
    """Test the search for a conjugating element."""
    H = s3.subgroup([0, 3, 4])
    assert conjugation_realizing(GroupHom.identity(H)) == s3.identity
    a, b = klein.subgroup([0, 1]), klein.subgroup([0, 2])
    assert conjugation_realizing(GroupHom.from_mapping(a, b, {0: 0, 1: 2})) is None
    source, target = s3.subgroup([0, 2]), s3.subgroup([0, 5])
    gamma = GroupHom.from_mapping(source, target, {0: 0, 2: 5})
    g = conjugation_realizing(gamma)
    assert g is not None
    assert s3.conj(2, g) == 5
    assert g in realizing_elements(gamma)


def test_group_hom(s3):
    """Test homomorphism helpers."""
    H = s3.full
    c = GroupHom.conjugation(H, 3)
    assert c.check(bijective=True) is c
    assert c.compose(c.inverse()).mapping == GroupHom.identity(H).mapping
    assert c.image() == H
    assert c.preimage(s3.subgroup([0, 2])).order == 2


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["S3", "D4", "Q8", "A4"]), st.data())
def test_conjugation_is_an_action(name, data):
    """Test ``(H^a)^b = H^(ab)`` on random subgroups and elements."""
    group = named(name)
    H = data.draw(st.sampled_from(enumerate_subgroups(group)))
    a = data.draw(st.integers(0, group.order - 1))
    b = data.draw(st.integers(0, group.order - 1))
    assert H.conjugate(a).conjugate(b) == H.conjugate(group.mul(a, b))
    assert np.isin(H.conjugate(a).array, np.arange(group.order)).all()
