# SPDX-License-Identifier: Apache-2.0

"""Conjugation bisets, restriction/induction/isomorphism predicates and factorization."""

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from mackey_bisets.biset.compose import compose_formula, compose_keys
from mackey_bisets.biset.explicit import ExplicitBiset, frozen_array
from mackey_bisets.biset.standard import StandardRep, canonical_key, change_base_point, transpose
from mackey_bisets.group.core import GroupHom
from mackey_bisets.group.cosets import (
    conjugation_realizing,
    subgroup_conjugacy_classes,
    subgroups_of,
)


@dataclass(frozen=True)
class Classification:
    """Predicates on a standard representation; ``realizing`` is the minimal ``g`` or ``None``."""

    restriction: bool
    induction: bool
    isomorphism: bool
    conjugation: bool
    realizing: object = None

    def to_json(self):
        return {
            "restriction": self.restriction,
            "induction": self.induction,
            "isomorphism": self.isomorphism,
            "conjugation": self.conjugation,
            "realizing": self.realizing,
        }


def is_restriction(rep):
    """The right action is transitive: ``L = H2``."""
    return rep.L == rep.H2


def is_induction(rep):
    """The left action is transitive: ``K = H1``."""
    return rep.K == rep.H1


def is_conjugation(rep):
    """``γ = c_g`` for some ``g`` in the parent group."""
    return conjugation_realizing(rep.gamma) is not None


def classify(rep):
    """Restriction, induction, isomorphism and conjugation verdicts."""
    g = conjugation_realizing(rep.gamma)
    restriction, induction = is_restriction(rep), is_induction(rep)
    return Classification(
        restriction=restriction,
        induction=induction,
        isomorphism=restriction and induction,
        conjugation=g is not None,
        realizing=g,
    )


@dataclass(frozen=True)
class Factorization:
    """``rep ≅ ind ∘ iso ∘ res``; ``realizing`` is set when ``iso`` is a conjugation."""

    ind: StandardRep
    iso: StandardRep
    res: StandardRep
    realizing: object = None

    def to_json(self):
        return {
            "ind": self.ind,
            "iso": self.iso,
            "res": self.res,
            "realizing": self.realizing,
        }


def factorize(rep):
    """Split ``rep`` into its standard induction, isomorphism and restriction.

    ``ind = [L, id, L]`` over ``(H2, L)``, ``iso = [L, γ, K]`` over ``(L, K)`` and
    ``res = [K, id, K]`` over ``(K, H1)``.
    """
    ind = StandardRep(rep.H2, rep.L, rep.L, rep.L, GroupHom.identity(rep.L))
    iso = StandardRep(rep.L, rep.K, rep.L, rep.K, rep.gamma)
    res = StandardRep(rep.K, rep.H1, rep.K, rep.K, GroupHom.identity(rep.K))
    return Factorization(ind, iso, res, conjugation_realizing(rep.gamma))


def compose_all(*reps):
    """Key multiset of ``reps[0] ∘ reps[1] ∘ ...`` evaluated right to left."""
    current = Counter({reps[-1].key: 1})
    for left in reversed(reps[:-1]):
        composed = Counter()
        for key, coeff in current.items():
            for out, mult in compose_keys(left, key.rep).items():
                composed[out] += coeff * mult
        current = composed
    return current


def recompose(factorization):
    """Key multiset of ``ind ∘ iso ∘ res``."""
    return compose_all(factorization.ind, factorization.iso, factorization.res)


def left_iso(rep):
    """The ``(L, K)``-biset ``K`` with ``l·k = γ(l)k`` and right multiplication."""
    group = rep.group
    K = rep.K
    left = K.positions[group.table[rep.gamma.images[:, None], K.array[None, :]]]
    right = K.positions[group.table[np.ix_(K.array, K.array)]]
    return ExplicitBiset(rep.L, K, frozen_array(left), frozen_array(right))


def right_iso(rep):
    """The ``(L, K)``-biset ``L`` with left multiplication and ``l·k = l γ⁻¹(k)``."""
    group = rep.group
    L = rep.L
    inverse = rep.gamma.inverse()
    left = L.positions[group.table[np.ix_(L.array, L.array)]]
    right = L.positions[group.table[L.array[:, None], inverse.images[None, :]]]
    return ExplicitBiset(L, rep.K, frozen_array(left), frozen_array(right))


@dataclass(frozen=True)
class ChangePoint:
    """Conjugation isomorphisms relating the standard maps at ``x`` and ``y = h2·x·h1``.

    ``V`` is over ``(L_y, L_x)`` and ``W`` over ``(K_y, K_x)``.
    """

    at_x: StandardRep
    at_y: StandardRep
    V: StandardRep
    W: StandardRep


def change_point_bisets(rep, h2, h1):
    """``V = [L_y, c_{h2}, L_x]`` and ``W = [K_y, c_{h1⁻¹}, K_x]`` for ``y = h2·x·h1``.

    With these ``ind_x = ind_y ∘ V``, ``res_x = W⁻¹ ∘ res_y`` and ``iso_x = V⁻¹ ∘ iso_y ∘ W``.
    """
    moved = change_base_point(rep, h2, h1)
    group = rep.group
    V = StandardRep.from_conjugation(moved.L, rep.L, moved.L, h2)
    W = StandardRep.from_conjugation(moved.K, rep.K, moved.K, group.inv(h1))
    return ChangePoint(rep, moved, V, W)


def is_inverse_pair(rep, other):
    """``rep ∘ other`` and ``other ∘ rep`` are both identities."""
    if rep.H1 != other.H2 or rep.H2 != other.H1:
        return False
    left = compose_keys(rep, other)
    right = compose_keys(other, rep)
    return left == Counter({StandardRep.identity(rep.H2).key: 1}) and right == Counter(
        {StandardRep.identity(rep.H1).key: 1}
    )


def _generators(subgroup):
    """Greedy generating set, ascending elements not already generated."""
    group = subgroup.group
    gens, current = [], group.trivial
    for h in subgroup.elements:
        if h not in current:
            gens.append(h)
            current = group.generate(gens)
    return gens


def isomorphisms(source, target):
    """Every group isomorphism ``source → target``."""
    if source.order != target.order:
        return []
    group = source.group
    gens = _generators(source)
    orders = [group.element_order(s) for s in gens]
    candidates = [[t for t in target.elements if group.element_order(t) == o] for o in orders]
    found = []
    for images in itertools.product(*candidates):
        mapping = {group.identity: group.identity}
        frontier = [group.identity]
        consistent = True
        while frontier and consistent:
            x = frontier.pop()
            for s, t in zip(gens, images):
                y, fy = group.mul(x, s), group.mul(mapping[x], t)
                if y in mapping:
                    if mapping[y] != fy:
                        consistent = False
                        break
                else:
                    mapping[y] = fy
                    frontier.append(y)
        if not consistent or len(set(mapping.values())) != source.order:
            continue
        hom = GroupHom.from_mapping(source, target, mapping, check=False)
        if hom.is_multiplicative():
            found.append(hom)
    return found


@lru_cache(maxsize=None)
def indecomposable_keys(H2, H1):
    """Sorted canonical keys of every indecomposable bifree ``(H2, H1)``-biset."""
    keys = set()
    for (L, *_) in subgroup_conjugacy_classes(H2):
        for (K, *_) in subgroup_conjugacy_classes(H1):
            for gamma in isomorphisms(L, K):
                keys.add(canonical_key(StandardRep(H2, H1, L, K, gamma)))
    return tuple(sorted(keys))


@lru_cache(maxsize=None)
def conjugation_keys(H2, H1):
    """Sorted canonical keys of every indecomposable conjugation ``(H2, H1)``-biset."""
    group = H2.group
    keys = set()
    for (L, *_) in subgroup_conjugacy_classes(H2):
        for g in range(group.order):
            K = L.conjugate(g)
            if K.is_subgroup_of(H1):
                keys.add(canonical_key(StandardRep.from_conjugation(H2, H1, L, g)))
    return tuple(sorted(keys))


def all_subgroup_pairs(group):
    """Every ordered pair of subgroups of ``group``."""
    subs = subgroups_of(group.full)
    return [(a, b) for a in subs for b in subs]


def transpose_composition_keys(rep2, rep1):
    """Key multisets of ``τ(rep2 ∘ rep1)`` and ``τ(rep1) ∘ τ(rep2)``."""
    lhs = Counter(canonical_key(transpose(rep)) for rep in compose_formula(rep2, rep1))
    rhs = compose_keys(transpose(rep1), transpose(rep2))
    return lhs, rhs
