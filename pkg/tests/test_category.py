"""Burnside category tests."""

import pytest

from mackey_bisets.biset.standard import StandardRep
from mackey_bisets.category.matrix import (
    MatrixMorphism,
    direct_sum,
    matrix_add,
    matrix_compose,
    tau_matrix,
)
from mackey_bisets.category.morphism import (
    BisetMorphism,
    hom_add,
    hom_compose,
    is_in_B,
    is_induction_morphism,
    is_isomorphism_morphism,
    is_restriction_morphism,
    tau_morphism,
)
from mackey_bisets.exception import AmbientMismatchError
from mackey_bisets.group.core import GroupHom
from mackey_bisets.util import to_jsonable


def _res(H2, H1):
    return BisetMorphism.from_rep(StandardRep(H2, H1, H2, H2, GroupHom.identity(H2)))


def _ind(H2, H1):
    return BisetMorphism.from_rep(StandardRep(H2, H1, H1, H1, GroupHom.identity(H1)))


def test_additive_group(s3, s3_transposition_rep):
    """Test sums, negatives and scalar multiples."""
    a = BisetMorphism.from_rep(s3_transposition_rep)
    zero = BisetMorphism.zero(s3.full, s3.full)
    assert a + zero == a
    assert (a - a).is_zero
    assert (a + a).mapping == {s3_transposition_rep.key: 2}
    assert 3 * a == a.scale(3)
    assert hom_add(a, -a) == zero


def test_endpoints_must_match(s3, s3_c2):
    """Test sums and composites need matching endpoints."""
    with pytest.raises(AmbientMismatchError):
        hom_add(BisetMorphism.identity(s3.full), BisetMorphism.identity(s3_c2))
    with pytest.raises(AmbientMismatchError):
        hom_compose(BisetMorphism.identity(s3.full), BisetMorphism.identity(s3_c2))
    with pytest.raises(AmbientMismatchError):
        BisetMorphism.from_terms(s3.full, s3_c2, {StandardRep.identity(s3.full).key: 1})


def test_composition(s3, s3_c2, s3_transposition_rep):
    """Test identities, zero and the restriction-induction composite."""
    a = BisetMorphism.from_rep(s3_transposition_rep)
    identity = BisetMorphism.identity(s3.full)
    assert identity @ a == a
    assert a @ identity == a
    assert (BisetMorphism.zero(s3.full, s3.full) @ a).is_zero
    composite = _res(s3_c2, s3.full) @ _ind(s3.full, s3_c2)
    expected = BisetMorphism.identity(s3_c2) + BisetMorphism.from_rep(
        StandardRep.free(s3_c2, s3_c2)
    )
    assert composite == expected


def test_composition_is_bilinear(s3, s3_c2, s3_transposition_rep):
    """Test ``(a + b) ∘ c = a ∘ c + b ∘ c``."""
    a = BisetMorphism.from_rep(s3_transposition_rep)
    b = BisetMorphism.identity(s3.full)
    c = _ind(s3.full, s3_c2)
    assert (a + b) @ c == a @ c + b @ c
    assert (2 * a) @ c == 2 * (a @ c)


def test_tau(s3, s3_c2, s3_transposition_rep):
    """Test the transpose on morphisms."""
    a = BisetMorphism.from_rep(s3_transposition_rep) + BisetMorphism.identity(s3.full)
    assert tau_morphism(tau_morphism(a)) == a
    assert tau_morphism(_res(s3_c2, s3.full)) == _ind(s3.full, s3_c2)
    b = _res(s3_c2, s3.full)
    c = BisetMorphism.from_rep(s3_transposition_rep)
    assert tau_morphism(b @ c) == tau_morphism(c) @ tau_morphism(b)


def test_predicates(s3, s3_c2, s3_transposition_rep, klein_swap_rep):
    """Test membership in the conjugation subcategory and the morphism kinds."""
    assert is_in_B(BisetMorphism.identity(s3.full))
    assert is_in_B(BisetMorphism.from_rep(s3_transposition_rep))
    assert not is_in_B(BisetMorphism.from_rep(klein_swap_rep))
    assert is_in_B(BisetMorphism.zero(s3.full, s3.full))
    assert is_restriction_morphism(_res(s3_c2, s3.full))
    assert not is_restriction_morphism(_ind(s3.full, s3_c2))
    assert is_induction_morphism(_ind(s3.full, s3_c2))
    assert is_isomorphism_morphism(BisetMorphism.identity(s3.full))
    assert not is_isomorphism_morphism(2 * BisetMorphism.identity(s3.full))


def test_morphism_json(s3, s3_transposition_rep):
    """Test the JSON layout is re-keyed on load."""
    a = 2 * BisetMorphism.from_rep(s3_transposition_rep) - BisetMorphism.identity(s3.full)
    assert BisetMorphism.from_json(s3, to_jsonable(a)) == a


def test_matrix_identity(s3, s3_c2, s3_transposition_rep):
    """Test identity matrices are neutral."""
    objects = (s3.full, s3_c2)
    m = MatrixMorphism.from_rows(
        objects,
        (s3.full,),
        [[BisetMorphism.from_rep(s3_transposition_rep), _ind(s3.full, s3_c2)]],
    )
    assert MatrixMorphism.identity((s3.full,)) @ m == m
    assert m @ MatrixMorphism.identity(objects) == m
    assert (m + MatrixMorphism.zero(objects, (s3.full,))) == m
    assert m.shape == (1, 2)


def test_matrix_product_sums_over_middle(s3, s3_c2):
    """Test a row times a column sums the composites."""
    row = MatrixMorphism.from_rows(
        (s3.full, s3_c2), (s3_c2,), [[_res(s3_c2, s3.full), BisetMorphism.identity(s3_c2)]]
    )
    column = MatrixMorphism.from_rows(
        (s3_c2,), (s3.full, s3_c2), [[_ind(s3.full, s3_c2)], [BisetMorphism.identity(s3_c2)]]
    )
    product = matrix_compose(row, column)
    expected = _res(s3_c2, s3.full) @ _ind(s3.full, s3_c2) + BisetMorphism.identity(s3_c2)
    assert product[0, 0] == expected
    assert product[0, 0].mapping[StandardRep.identity(s3_c2).key] == 2


def test_matrix_errors(s3, s3_c2):
    """Test grids with the wrong shape or endpoints."""
    with pytest.raises(AmbientMismatchError):
        MatrixMorphism.from_rows((s3.full,), (s3.full,), [[]])
    with pytest.raises(AmbientMismatchError):
        MatrixMorphism.from_rows((s3_c2,), (s3.full,), [[BisetMorphism.identity(s3.full)]])
    a = MatrixMorphism.identity((s3.full,))
    with pytest.raises(AmbientMismatchError):
        matrix_add(a, MatrixMorphism.identity((s3_c2,)))
    with pytest.raises(AmbientMismatchError):
        matrix_compose(a, MatrixMorphism.identity((s3_c2,)))


def test_tau_matrix(s3, s3_c2):
    """Test the transpose of matrices."""
    m = MatrixMorphism.from_rows(
        (s3.full,), (s3_c2, s3.full), [[_res(s3_c2, s3.full)], [BisetMorphism.identity(s3.full)]]
    )
    t = tau_matrix(m)
    assert t.shape == (1, 2)
    assert t[0, 0] == _ind(s3.full, s3_c2)
    assert tau_matrix(t) == m


def test_direct_sum(s3, s3_c2):
    """Test block-diagonal sums."""
    total = direct_sum(MatrixMorphism.identity((s3.full,)), MatrixMorphism.identity((s3_c2,)))
    assert total == MatrixMorphism.identity((s3.full, s3_c2))
