"""Shared fixtures.

S3 elements are the permutations of ``0..2`` in lexicographic order: ``0`` is the identity,
``1``, ``2`` and ``5`` are the transpositions ``(1 2)``, ``(0 1)`` and ``(0 2)``, ``3`` and ``4``
the 3-cycles.
"""

import pytest

from mackey_bisets.biset.standard import StandardRep
from mackey_bisets.group.catalog import build_group, group_from_name
from mackey_bisets.group.core import GroupHom


def named(name):
    """Group from a catalog name."""
    return build_group(group_from_name(name))


def iso_rep(H2, H1, L, K, mapping):
    """Standard representation with ``gamma`` given as a dict."""
    return StandardRep(H2, H1, L, K, GroupHom.from_mapping(L, K, mapping)).check()


@pytest.fixture
def s3():
    return named("S3")


@pytest.fixture
def klein():
    return named("V4")


@pytest.fixture
def c2():
    return named("C2")


@pytest.fixture
def s3_c2(s3):
    """``⟨(0 1)⟩``."""
    return s3.subgroup([0, 2])


@pytest.fixture
def s3_transposition_rep(s3):
    """``[⟨(0 1)⟩, γ, ⟨(0 2)⟩]`` over ``(S3, S3)``."""
    return iso_rep(s3.full, s3.full, s3.subgroup([0, 2]), s3.subgroup([0, 5]), {0: 0, 2: 5})


@pytest.fixture
def klein_swap_rep(klein):
    """``[⟨a⟩, a ↦ b, ⟨b⟩]`` over ``(V4, V4)``, not a conjugation."""
    return iso_rep(
        klein.full, klein.full, klein.subgroup([0, 1]), klein.subgroup([0, 2]), {0: 0, 1: 2}
    )
