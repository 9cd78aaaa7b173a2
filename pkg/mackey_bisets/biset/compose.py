# SPDX-License-Identifier: Apache-2.0

"""Composition of standard representations by the double coset formula."""

from collections import Counter
from functools import lru_cache

import numpy as np

from mackey_bisets.biset.explicit import (
    balanced_product,
    component_keys,
    compose_bruteforce,
    point_of_pair,
    realize,
)
from mackey_bisets.biset.standard import StandardRep
from mackey_bisets.exception import AmbientMismatchError, BisetError
from mackey_bisets.group.core import GroupHom, Subgroup
from mackey_bisets.group.cosets import double_cosets
from mackey_bisets.settings import L as LOG


def _check_composable(rep2, rep1):
    if rep2.H1 != rep1.H2:
        raise AmbientMismatchError(
            f"cannot compose over different middle groups {rep2.H1} and {rep1.H2}"
        )


def component_at(rep2, rep1, h):
    """Component of ``rep2 ∘ rep1`` at the point ``[x2·h, x1]``.

    ``L = γ2⁻¹(K2 ∩ h L1 h⁻¹)``, ``γ(l) = γ1(h⁻¹ γ2(l) h)`` and ``K = γ(L)``.
    """
    group = rep2.group
    table, inv = group.table, group.inverse
    # h⁻¹ γ2(l) h for every l ∈ L2
    moved = table[table[inv[h], rep2.gamma.images], h]
    keep = rep1.L.positions[moved] >= 0
    L = Subgroup(group, tuple(int(x) for x in rep2.L.array[keep]))
    images = rep1.gamma.images[rep1.L.positions[moved[keep]]]
    K = Subgroup(group, tuple(sorted(int(k) for k in images)))
    return StandardRep(rep2.H2, rep1.H1, L, K, GroupHom.from_images(L, K, images))


def double_coset_representatives(rep2, rep1):
    """Minimal representatives of ``K2 \\ H2 / L1`` in the middle group."""
    return double_cosets(rep1.H2, rep2.K, rep1.L).representatives


def compose_formula(rep2, rep1, representatives=None):
    """Components of ``rep2 ∘ rep1``, one per double coset ``h ∈ K2 \\ H2 / L1``.

    Args:
        rep2 (StandardRep): over ``(H3, H2)``.
        rep1 (StandardRep): over ``(H2, H1)``.
        representatives (list): other double coset representatives to use, in any order.

    Raises:
        AmbientMismatchError: the middle groups differ.
    """
    _check_composable(rep2, rep1)
    decomposition = double_cosets(rep1.H2, rep2.K, rep1.L)
    if representatives is None:
        representatives = decomposition.representatives
    else:
        hit = sorted(int(decomposition.coset_of[h]) for h in representatives)
        if hit != list(range(len(decomposition))):
            raise BisetError(f"{list(representatives)} are not double coset representatives")
    LOG.debug("composing over %d double cosets", len(representatives))
    return [component_at(rep2, rep1, h) for h in representatives]


@lru_cache(maxsize=None)
def compose_keys(rep2, rep1):
    """Canonical key multiset of ``rep2 ∘ rep1`` as a Counter."""
    return Counter(rep.key for rep in compose_formula(rep2, rep1))


def bruteforce_keys(rep2, rep1):
    """Canonical key multiset of the balanced product of the realized bisets."""
    _check_composable(rep2, rep1)
    return Counter(component_keys(compose_bruteforce(realize(rep2), realize(rep1))))


def formula_matches_oracle(rep2, rep1):
    """``True`` if the formula and the brute-force balanced product give the same keys."""
    return compose_keys(rep2, rep1) == bruteforce_keys(rep2, rep1)


def random_representatives(rep2, rep1, rng):
    """A random choice of one element from every double coset ``K2 \\ H2 / L1``."""
    decomposition = double_cosets(rep1.H2, rep2.K, rep1.L)
    choices = [decomposition.coset(pos) for pos in range(len(decomposition))]
    return [int(rng.choice(members)) for members in choices]


def component_embedding(rep2, rep1, h):
    """Injection of the component at ``h`` into the balanced product of the realized bisets.

    The point ``⟨h3, h1⟩`` goes to the class of ``(⟨h3, h⟩, ⟨e, h1⟩)``. Returns the image of
    every point of ``realize(component_at(rep2, rep1, h))`` in point order.
    """
    _check_composable(rep2, rep1)
    component = component_at(rep2, rep1, h)
    X2, X1 = realize(rep2), realize(rep1)
    _, point = balanced_product(X2, X1)
    C = realize(component)
    e = rep2.group.identity
    image = np.empty(C.size, dtype=np.int64)
    for a in component.H2:
        for b in component.H1:
            c = point_of_pair(C, a, b)
            image[c] = point[point_of_pair(X2, a, h), point_of_pair(X1, e, b)]
    return image
