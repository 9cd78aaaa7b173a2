"""Biset tests."""

from collections import Counter

import numpy as np
import pytest
from conftest import iso_rep, named
from hypothesis import given, settings
from hypothesis import strategies as st

from mackey_bisets.biset.compose import (
    bruteforce_keys,
    component_embedding,
    compose_formula,
    compose_keys,
    double_coset_representatives,
    formula_matches_oracle,
    random_representatives,
)
from mackey_bisets.biset.explicit import (
    balanced_product,
    component_keys,
    compose_bruteforce,
    disjoint_union,
    explicit_empty,
    explicit_identity,
    explicit_transpose,
    find_isomorphism,
    multiplication_biset,
    orbits,
    point_of_pair,
    realize,
    standard_rep_at,
)
from mackey_bisets.biset.factor import (
    all_subgroup_pairs,
    change_point_bisets,
    classify,
    compose_all,
    conjugation_keys,
    factorize,
    indecomposable_keys,
    is_inverse_pair,
    isomorphisms,
    left_iso,
    recompose,
    right_iso,
    transpose_composition_keys,
)
from mackey_bisets.biset.standard import (
    StandardRep,
    change_base_point,
    transpose,
    transpose_key,
)
from mackey_bisets.exception import (
    AmbientMismatchError,
    BisetError,
    HomomorphismError,
    SubgroupError,
)
from mackey_bisets.group.core import GroupHom
from mackey_bisets.group.cosets import enumerate_subgroups


def _restriction(H2, H1):
    return StandardRep(H2, H1, H2, H2, GroupHom.identity(H2))


def _induction(H2, H1):
    return StandardRep(H2, H1, H1, H1, GroupHom.identity(H1))


def test_realize_sizes(s3, s3_c2):
    """Test the size of realized bisets is ``|H2||H1|/|L|``."""
    rep = StandardRep(s3.full, s3.full, s3_c2, s3_c2, GroupHom.identity(s3_c2))
    X = realize(rep)
    assert X.size == 18
    X.check()
    assert realize(StandardRep.identity(s3.full)).size == 6
    assert realize(StandardRep.free(s3.full, s3_c2)).size == 12


def test_basepoint_recovers_rep(s3_transposition_rep):
    """Test the standard representation at point 0 of a realized biset."""
    X = realize(s3_transposition_rep)
    assert standard_rep_at(X, 0) == s3_transposition_rep
    assert len(orbits(X)) == 1


def test_change_base_point_matches_realized(s3_transposition_rep):
    """Test moving the basepoint agrees with reading the realized biset at ``h2·x·h1``."""
    rep = s3_transposition_rep
    X = realize(rep)
    for h2 in rep.H2:
        for h1 in rep.H1:
            moved = change_base_point(rep, h2, h1)
            at = standard_rep_at(X, point_of_pair(X, h2, h1))
            assert moved.L == at.L
            assert moved.K == at.K
            assert moved.gamma.pairs == at.gamma.pairs
            assert moved.key == rep.key


def test_change_base_point_rejects_outsiders(s3, s3_c2):
    """Test moves must come from the ambient groups."""
    rep = StandardRep.identity(s3_c2)
    with pytest.raises(BisetError):
        change_base_point(rep, 3, 0)


def test_invalid_rep(s3, s3_c2):
    """Test ``check`` rejects bad data."""
    rotations = s3.subgroup([0, 3, 4])
    with pytest.raises(HomomorphismError):
        iso_rep(s3.full, s3.full, rotations, rotations, {0: 0, 3: 3, 4: 3})
    with pytest.raises(SubgroupError):
        StandardRep(s3_c2, s3.full, rotations, rotations, GroupHom.identity(rotations)).check()


def test_json_round_trip(s3, s3_transposition_rep):
    """Test the JSON form of a standard representation."""
    doc = s3_transposition_rep.to_json()
    assert doc["gamma"] == [[0, 0], [2, 5]]
    assert StandardRep.from_json(s3, doc) == s3_transposition_rep
    with pytest.raises(BisetError):
        StandardRep.from_json(s3, {"H2": [0]})


def test_keys_identify_isomorphic_bisets(s3, s3_c2):
    """Test conjugate data gives the same key and a biset isomorphism."""
    rep = StandardRep(s3.full, s3.full, s3_c2, s3_c2, GroupHom.identity(s3_c2))
    other = StandardRep.from_conjugation(s3.full, s3.full, s3.subgroup([0, 5]), 0)
    assert rep.key == other.key
    assert find_isomorphism(realize(rep), realize(other)) is not None
    free = StandardRep.free(s3.full, s3.full)
    assert free.key != rep.key
    assert find_isomorphism(realize(rep), realize(free)) is None


def test_key_rep_round_trip(s3):
    """Test the representation carried by a key has the same key."""
    for H2, H1 in all_subgroup_pairs(s3):
        for key in indecomposable_keys(H2, H1):
            assert key.rep.key == key


def test_indecomposable_keys_s3(s3):
    """Test counts of indecomposable bifree bisets."""
    full = s3.full
    # inversion on the 3-cycles is conjugation by a transposition
    assert len(indecomposable_keys(full, full)) == 4
    assert len(indecomposable_keys(s3.trivial, s3.trivial)) == 1
    assert len(indecomposable_keys(full, s3.trivial)) == 1
    assert len(conjugation_keys(full, full)) == 4


def test_isomorphisms(s3, klein):
    """Test the isomorphism search."""
    assert len(isomorphisms(s3.full, s3.full)) == 6
    assert len(isomorphisms(klein.full, klein.full)) == 6
    assert isomorphisms(s3.subgroup([0, 2]), s3.subgroup([0, 3, 4])) == []


def test_multiplication_biset(s3, s3_c2):
    """Test ``S3`` as an ``(S3, C2)``-biset is the induction at the identity."""
    X = multiplication_biset(s3.full, s3_c2, s3.full)
    X.check()
    assert standard_rep_at(X, 0).key == _induction(s3.full, s3_c2).key
    with pytest.raises(BisetError):
        multiplication_biset(s3.full, s3.full, s3_c2)


def test_restriction_after_induction(s3, s3_c2):
    """Test ``Res^S3_C2 ∘ Ind^S3_C2`` splits into the identity and the free biorbit."""
    res = _restriction(s3_c2, s3.full)
    ind = _induction(s3.full, s3_c2)
    expected = Counter(
        {StandardRep.identity(s3_c2).key: 1, StandardRep.free(s3_c2, s3_c2).key: 1}
    )
    assert compose_keys(res, ind) == expected
    assert bruteforce_keys(res, ind) == expected
    X = compose_bruteforce(
        multiplication_biset(s3_c2, s3.full, s3.full),
        multiplication_biset(s3.full, s3_c2, s3.full),
    )
    assert X.size == 6
    assert Counter(component_keys(X)) == expected


def test_identity_is_neutral(s3, s3_transposition_rep):
    """Test composing with identity bisets."""
    rep = s3_transposition_rep
    left = compose_formula(StandardRep.identity(s3.full), rep)
    right = compose_formula(rep, StandardRep.identity(s3.full))
    assert [c.key for c in left] == [rep.key]
    assert [c.key for c in right] == [rep.key]
    X = realize(rep)
    assert find_isomorphism(compose_bruteforce(explicit_identity(s3.full), X), X) is not None


def test_compose_ambient_mismatch(s3, s3_c2):
    """Test middle groups must agree."""
    with pytest.raises(AmbientMismatchError):
        compose_formula(StandardRep.identity(s3_c2), StandardRep.identity(s3.full))
    with pytest.raises(AmbientMismatchError):
        balanced_product(explicit_identity(s3_c2), explicit_identity(s3.full))


def test_empty_biset(s3, s3_c2):
    """Test the empty biset is absorbing for the balanced product."""
    empty = explicit_empty(s3.full, s3.full)
    assert compose_bruteforce(empty, realize(StandardRep.identity(s3.full))).size == 0
    assert component_keys(empty) == []
    union = disjoint_union(empty, realize(StandardRep.free(s3.full, s3.full)))
    assert union.size == 36


def test_disjoint_union_components(s3, s3_c2):
    """Test components of a disjoint union."""
    a = realize(StandardRep.identity(s3.full))
    b = realize(StandardRep.free(s3.full, s3.full))
    union = disjoint_union(a, b).check()
    assert Counter(component_keys(union)) == Counter(component_keys(a) + component_keys(b))
    with pytest.raises(AmbientMismatchError):
        disjoint_union(a, realize(StandardRep.identity(s3_c2)))


@pytest.mark.parametrize("name", ["C2", "V4", "C3"])
def test_formula_matches_oracle_exhaustively(name):
    """Test the double coset formula against the brute-force product on small groups."""
    group = named(name)
    subs = enumerate_subgroups(group)
    for H3 in subs:
        for H2 in subs:
            for H1 in subs:
                for b in indecomposable_keys(H3, H2):
                    for a in indecomposable_keys(H2, H1):
                        assert formula_matches_oracle(b.rep, a.rep)


def test_formula_matches_oracle_s3(s3, s3_transposition_rep, s3_c2):
    """Test the formula against the oracle on some S3 pairs."""
    rep = s3_transposition_rep
    assert formula_matches_oracle(rep, rep)
    assert formula_matches_oracle(transpose(rep), rep)
    assert formula_matches_oracle(_restriction(s3_c2, s3.full), rep)
    assert formula_matches_oracle(rep, _induction(s3.full, s3_c2))


def test_component_embedding_is_a_bijection(s3, s3_c2, s3_transposition_rep):
    """Test the components embed disjointly and cover the balanced product."""
    rep2 = _restriction(s3_c2, s3.full)
    rep1 = s3_transposition_rep
    X, _ = balanced_product(realize(rep2), realize(rep1))
    images = np.concatenate(
        [component_embedding(rep2, rep1, h) for h in double_coset_representatives(rep2, rep1)]
    )
    assert sorted(images.tolist()) == list(range(X.size))


def test_bad_representatives(s3, s3_c2):
    """Test representatives must hit every double coset once."""
    res, ind = _restriction(s3_c2, s3.full), _induction(s3.full, s3_c2)
    with pytest.raises(BisetError):
        compose_formula(res, ind, representatives=[0, 2])


@settings(max_examples=25, deadline=None)
@given(st.data(), st.integers(0, 2**32 - 1))
def test_representative_independence(data, seed):
    """Test any choice of double coset representatives gives the same components."""
    group = named("S3")
    subs = enumerate_subgroups(group)
    H3, H2, H1 = (data.draw(st.sampled_from(subs)) for _ in range(3))
    b = data.draw(st.sampled_from(indecomposable_keys(H3, H2)))
    a = data.draw(st.sampled_from(indecomposable_keys(H2, H1)))
    reps = random_representatives(b.rep, a.rep, np.random.default_rng(seed))
    moved = Counter(c.key for c in compose_formula(b.rep, a.rep, representatives=reps))
    assert moved == compose_keys(b.rep, a.rep)


def test_transpose(s3, s3_c2, s3_transposition_rep):
    """Test the transpose of standard representations and explicit bisets."""
    rep = s3_transposition_rep
    assert transpose(transpose(rep)) == rep
    assert transpose_key(transpose_key(rep.key)) == rep.key
    T = explicit_transpose(realize(rep)).check()
    assert component_keys(T) == [transpose(rep).key]
    res = _restriction(s3_c2, s3.full)
    assert transpose(res).key == _induction(s3.full, s3_c2).key


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["S3", "V4", "C6"]), st.data())
def test_transpose_is_anti_multiplicative(name, data):
    """Test ``τ(b ∘ a) = τ(a) ∘ τ(b)``."""
    group = named(name)
    subs = enumerate_subgroups(group)
    H3, H2, H1 = (data.draw(st.sampled_from(subs)) for _ in range(3))
    b = data.draw(st.sampled_from(indecomposable_keys(H3, H2)))
    a = data.draw(st.sampled_from(indecomposable_keys(H2, H1)))
    lhs, rhs = transpose_composition_keys(b.rep, a.rep)
    assert lhs == rhs


def test_classify(s3, s3_c2, s3_transposition_rep, klein_swap_rep):
    """Test restriction, induction, isomorphism and conjugation verdicts."""
    res = classify(_restriction(s3_c2, s3.full))
    assert res.restriction and not res.induction and not res.isomorphism
    ind = classify(_induction(s3.full, s3_c2))
    assert ind.induction and not ind.restriction
    ident = classify(StandardRep.identity(s3.full))
    assert ident.isomorphism and ident.conjugation and ident.realizing == 0
    transposition = classify(s3_transposition_rep)
    assert transposition.conjugation
    assert s3.conj(2, transposition.realizing) == 5
    swap = classify(klein_swap_rep)
    assert not swap.conjugation
    assert swap.realizing is None
    assert swap.to_json()["conjugation"] is False


def test_factorize_identity(s3):
    """Test the identity factors into identities."""
    identity = StandardRep.identity(s3.full)
    factors = factorize(identity)
    for part in (factors.ind, factors.iso, factors.res):
        assert part.key == identity.key
    assert recompose(factors) == Counter({identity.key: 1})


def test_factorize_transposition(s3, s3_transposition_rep):
    """Test ``ind ∘ iso ∘ res`` recovers ``[⟨(0 1)⟩, γ, ⟨(0 2)⟩]``."""
    rep = s3_transposition_rep
    factors = factorize(rep)
    assert factors.ind.H1 == s3.subgroup([0, 2])
    assert factors.iso.H2 == s3.subgroup([0, 2])
    assert factors.iso.H1 == s3.subgroup([0, 5])
    assert factors.res.H2 == s3.subgroup([0, 5])
    assert classify(factors.ind).induction
    assert classify(factors.iso).isomorphism
    assert classify(factors.res).restriction
    assert factors.realizing is not None
    assert recompose(factors) == Counter({rep.key: 1})


def test_factorize_klein_swap(klein_swap_rep):
    """Test a non-conjugation isomorphism factor."""
    factors = factorize(klein_swap_rep)
    assert factors.realizing is None
    assert not classify(factors.iso).conjugation
    assert recompose(factors) == Counter({klein_swap_rep.key: 1})


def test_factorize_every_indecomposable(s3):
    """Test recomposition over every indecomposable S3 key."""
    for H2, H1 in all_subgroup_pairs(s3):
        for key in indecomposable_keys(H2, H1):
            assert recompose(factorize(key.rep)) == Counter({key: 1})


def test_change_point_bisets(s3_transposition_rep):
    """Test the conjugation isomorphisms relating the factors at two points."""
    rep = s3_transposition_rep
    at_x = factorize(rep)
    for h2 in (0, 3, 5):
        for h1 in (0, 1, 4):
            moves = change_point_bisets(rep, h2, h1)
            at_y = factorize(moves.at_y)
            assert compose_all(at_y.ind, moves.V) == Counter({at_x.ind.key: 1})
            assert compose_all(transpose(moves.W), at_y.res) == Counter({at_x.res.key: 1})
            assert compose_all(transpose(moves.V), at_y.iso, moves.W) == Counter(
                {at_x.iso.key: 1}
            )
            assert is_inverse_pair(moves.V, transpose(moves.V))


def test_iso_bisets(s3_transposition_rep, klein_swap_rep):
    """Test the two explicit models of an isomorphism biset."""
    for rep in (s3_transposition_rep, klein_swap_rep):
        iso = factorize(rep).iso
        for X in (left_iso(rep), right_iso(rep)):
            X.check()
            assert component_keys(X) == [iso.key]
        assert is_inverse_pair(iso, transpose(iso))


def test_is_inverse_pair(s3, s3_c2):
    """Test a restriction has no inverse when the index is not one."""
    res = _restriction(s3_c2, s3.full)
    assert not is_inverse_pair(res, transpose(res))
    assert not is_inverse_pair(res, res)
