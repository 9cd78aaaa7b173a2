# SPDX-License-Identifier: Apache-2.0

"""Subgroup lattice, cosets, double cosets, centralizers and conjugation search.

Representatives are always the minimal element index of their (double) coset.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from mackey_bisets.exception import SubgroupError
from mackey_bisets.group.core import FiniteGroup, Subgroup
from mackey_bisets.settings import L


def _ambient(ambient):
    return ambient.full if isinstance(ambient, FiniteGroup) else ambient


@lru_cache(maxsize=None)
def enumerate_subgroups(group):
    """Every subgroup of ``group`` exactly once, sorted by ``(order, elements)``.

    Starts from the cyclic subgroups and joins with cyclic subgroups until nothing new appears.
    """
    cyclic = {}
    for a in range(group.order):
        sub = group.generate([a])
        cyclic.setdefault(sub, (a,))
    found = dict(cyclic)
    frontier = list(found.items())
    while frontier:
        new = []
        for sub, gens in frontier:
            for (a,) in cyclic.values():
                if a in sub:
                    continue
                joined = group.generate(gens + (a,))
                if joined not in found:
                    found[joined] = gens + (a,)
                    new.append((joined, gens + (a,)))
        frontier = new
    subgroups = sorted(found)
    L.debug("%s has %d subgroups", group.label, len(subgroups))
    return tuple(subgroups)


def subgroups_of(ambient):
    """Subgroups of the parent group contained in ``ambient``, in canonical order."""
    ambient = _ambient(ambient)
    return tuple(s for s in enumerate_subgroups(ambient.group) if s.is_subgroup_of(ambient))


def conjugate_subgroup(subgroup, g):
    """Return ``H^g = g⁻¹Hg``."""
    return subgroup.conjugate(g)


def centralizer(ambient, subgroup):
    """``{g ∈ ambient : gh = hg for all h ∈ subgroup}``."""
    ambient = _ambient(ambient)
    table = ambient.group.table
    amb, sub = ambient.array, subgroup.array
    commutes = table[np.ix_(amb, sub)] == table[np.ix_(sub, amb)].T
    return Subgroup(ambient.group, tuple(int(g) for g in amb[commutes.all(axis=1)]))


def _conjugates_by(ambient, subgroup):
    """Array ``[i, j] = g_i⁻¹ h_j g_i`` over ``g_i ∈ ambient``, ``h_j ∈ subgroup``."""
    group = subgroup.group
    amb = ambient.array
    left = group.table[group.inverse[amb][:, None], subgroup.array[None, :]]
    return group.table[left, amb[:, None]]


def normalizer(ambient, subgroup):
    """``{g ∈ ambient : H^g = H}``."""
    ambient = _ambient(ambient)
    inside = np.isin(_conjugates_by(ambient, subgroup), subgroup.array).all(axis=1)
    return Subgroup(ambient.group, tuple(int(g) for g in ambient.array[inside]))


def left_transversal(ambient, subgroup):
    """Minimal representatives of the left cosets ``g·subgroup`` in ``ambient``.

    The coset of the identity comes first, the others by ascending representative.
    """
    ambient = _ambient(ambient)
    group = ambient.group
    if not subgroup.is_subgroup_of(ambient):
        raise SubgroupError(f"{subgroup} is not contained in {ambient}")
    assigned = np.zeros(group.order, dtype=bool)
    reps = []
    for g in ambient.elements:
        if assigned[g]:
            continue
        assigned[group.table[g, subgroup.array]] = True
        reps.append(g)
    identity_rep = min(subgroup.elements)
    reps.remove(identity_rep)
    return [identity_rep] + reps


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    """Partition of ``ambient`` into double cosets ``left·x·right``.

    ``coset_of`` has one entry per element of the parent group: the position of the
    double coset holding it, ``-1`` outside ``ambient``.
    """

    ambient: Subgroup
    left: Subgroup
    right: Subgroup
    representatives: tuple
    coset_of: np.ndarray
    sizes: tuple

    def __len__(self):
        return len(self.representatives)

    def coset(self, position):
        """Elements of the double coset at ``position``."""
        return tuple(int(x) for x in np.flatnonzero(self.coset_of == position))


def double_cosets(ambient, left, right):
    """Decompose ``ambient`` into ``left``-``right`` double cosets.

    Raises:
        SubgroupError: ``left`` or ``right`` is not contained in ``ambient``.
    """
    ambient = _ambient(ambient)
    for side in (left, right):
        if not side.is_subgroup_of(ambient):
            raise SubgroupError(f"{side} is not contained in {ambient}")
    group = ambient.group
    table = group.table
    coset_of = np.full(group.order, -1, dtype=np.int64)
    reps, sizes = [], []
    for x in ambient.elements:
        if coset_of[x] >= 0:
            continue
        members = np.unique(table[table[left.array, x][:, None], right.array[None, :]])
        coset_of[members] = len(reps)
        reps.append(x)
        sizes.append(len(members))
    coset_of.flags.writeable = False
    return DoubleCosetDecomposition(ambient, left, right, tuple(reps), coset_of, tuple(sizes))


def realizing_elements(gamma, ambient=None):
    """All ``g`` (ascending) in ``ambient`` with ``g⁻¹hg = gamma(h)`` for every ``h``."""
    group = gamma.domain.group
    ambient = group.full if ambient is None else _ambient(ambient)
    matches = (_conjugates_by(ambient, gamma.domain) == gamma.images[None, :]).all(axis=1)
    return tuple(int(g) for g in ambient.array[matches])


def conjugation_realizing(gamma):
    """Minimal ``g`` with ``c_g = gamma`` on the domain, or ``None``.

    Raises:
        HomomorphismError: ``gamma`` is not a bijective homomorphism.
    """
    gamma.check(bijective=True)
    found = realizing_elements(gamma)
    if not found:
        return None
    return found[0]


def conjugating_element(source, target, ambient=None):
    """Minimal ``g`` in ``ambient`` with ``source^g = target``, or ``None``."""
    if source.order != target.order:
        return None
    group = source.group
    ambient = group.full if ambient is None else _ambient(ambient)
    inside = np.isin(_conjugates_by(ambient, source), target.array).all(axis=1)
    hits = ambient.array[inside]
    return int(hits[0]) if len(hits) else None


@lru_cache(maxsize=None)
def subgroup_conjugacy_classes(ambient):
    """Subgroups of ``ambient`` grouped into ``ambient``-conjugacy classes.

    Each class is sorted, its first member is the class representative, and classes are
    ordered by representative.
    """
    ambient = _ambient(ambient)
    classes, seen = [], set()
    for sub in subgroups_of(ambient):
        if sub in seen:
            continue
        members = sorted({sub.conjugate(g) for g in ambient})
        seen.update(members)
        classes.append(tuple(members))
    return tuple(classes)


@lru_cache(maxsize=None)
def conjugacy_class_index(ambient):
    """Map each subgroup of ``ambient`` to the position of its ``ambient``-conjugacy class."""
    return {
        sub: pos
        for pos, members in enumerate(subgroup_conjugacy_classes(ambient))
        for sub in members
    }
