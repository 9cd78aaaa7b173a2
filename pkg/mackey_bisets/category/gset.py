# SPDX-License-Identifier: Apache-2.0

"""Finite G-sets with chosen basepoints, G-maps, the functor ``j`` and pullbacks.

A pointed G-set is the ordered list of the stabilizers ``H_i`` of its basepoints, so orbit
``i`` is ``G/H_i``. A G-map sends the basepoint of orbit ``i`` to ``g_i·b_{f(i)}``; the
witness ``g_i`` satisfies ``g_i⁻¹ H_i g_i ⊆ K_{f(i)}`` and is stored as the minimal element
of ``g_i K_{f(i)}``.
"""

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from mackey_bisets.biset.explicit import frozen_array
from mackey_bisets.biset.standard import StandardRep
from mackey_bisets.category.matrix import MatrixMorphism, tau_matrix
from mackey_bisets.category.morphism import BisetMorphism
from mackey_bisets.exception import GMapError
from mackey_bisets.group.core import FiniteGroup
from mackey_bisets.group.cosets import (
    centralizer,
    conjugacy_class_index,
    double_cosets,
    left_transversal,
)
from mackey_bisets.settings import L
from mackey_bisets.util import validate

GMAP_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["orbit_map", "witnesses"],
    "properties": {
        "orbit_map": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "witnesses": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}


@dataclass(frozen=True)
class PointedGSet:
    """Disjoint union of orbits ``G/H_i`` in a fixed order."""

    group: FiniteGroup = field(repr=False)
    orbits: tuple = ()

    @classmethod
    def single(cls, subgroup):
        """``(G/H, eH)``."""
        return cls(subgroup.group, (subgroup,))

    def __len__(self):
        return len(self.orbits)

    def __add__(self, other):
        return PointedGSet(self.group, self.orbits + other.orbits)

    @property
    def sizes(self):
        """Points per orbit."""
        return tuple(self.group.order // H.order for H in self.orbits)

    @property
    def size(self):
        """Total number of points."""
        return sum(self.sizes)

    @property
    def offsets(self):
        """Index of the first point of each orbit in :func:`realize_gset`."""
        return tuple(int(x) for x in np.cumsum((0,) + self.sizes)[:-1])

    def to_json(self):
        return {"orbits": [H.to_list() for H in self.orbits]}


@dataclass(frozen=True)
class GMap:
    """G-map between pointed G-sets; witnesses are normalized on construction.

    Raises:
        GMapError: orbit index out of range or ``g⁻¹ H_i g ⊄ K_{f(i)}``.
    """

    source: PointedGSet
    target: PointedGSet
    orbit_map: tuple
    witnesses: tuple

    def __post_init__(self):
        if self.source.group is not self.target.group:
            raise GMapError("source and target live in different groups")
        if len(self.orbit_map) != len(self.source) or len(self.witnesses) != len(self.source):
            raise GMapError("orbit_map and witnesses need one entry per source orbit")
        group = self.source.group
        normalized = []
        for i, (j, g) in enumerate(zip(self.orbit_map, self.witnesses)):
            if not 0 <= j < len(self.target):
                raise GMapError(f"orbit {i} is sent to missing target orbit {j}")
            if not 0 <= g < group.order:
                raise GMapError(f"witness {g} is not a group element")
            H, K = self.source.orbits[i], self.target.orbits[j]
            if not H.conjugate(g).is_subgroup_of(K):
                raise GMapError(f"witness {g} does not conjugate {H} into {K}")
            normalized.append(int(group.table[g, K.array].min()))
        object.__setattr__(self, "orbit_map", tuple(int(j) for j in self.orbit_map))
        object.__setattr__(self, "witnesses", tuple(normalized))

    @classmethod
    def single(cls, source, target, g):
        """``G/H → G/K``, ``eH ↦ gK``."""
        return cls(PointedGSet.single(source), PointedGSet.single(target), (0,), (g,))

    @classmethod
    def identity(cls, X):
        """Identity G-map."""
        return cls(X, X, tuple(range(len(X))), (X.group.identity,) * len(X))

    @classmethod
    def from_json(cls, source, target, doc):
        """Parse ``{"orbit_map": [...], "witnesses": [...]}``."""
        validate(doc, GMAP_SCHEMA, GMapError, what="G-map")
        return cls(source, target, tuple(doc["orbit_map"]), tuple(doc["witnesses"]))

    @property
    def group(self):
        """Acting group."""
        return self.source.group

    def compose(self, other):
        """``self ∘ other``; the witness of orbit ``i`` is ``g'_i · g_{f'(i)}``."""
        if other.target != self.source:
            raise GMapError("cannot compose G-maps with different middle G-sets")
        table = self.group.table
        orbit_map = tuple(self.orbit_map[j] for j in other.orbit_map)
        witnesses = tuple(
            int(table[g, self.witnesses[j]]) for j, g in zip(other.orbit_map, other.witnesses)
        )
        return GMap(other.source, self.target, orbit_map, witnesses)

    def coproduct(self, other):
        """``self ⊔ other`` between the concatenated G-sets."""
        shift = len(self.target)
        return GMap(
            self.source + other.source,
            self.target + other.target,
            self.orbit_map + tuple(j + shift for j in other.orbit_map),
            self.witnesses + other.witnesses,
        )

    def to_json(self):
        return {"orbit_map": list(self.orbit_map), "witnesses": list(self.witnesses)}


@dataclass(frozen=True, eq=False)
class ExplicitGSet:
    """Finite G-set as an action table, ``action[g, x] = g·x``."""

    group: FiniteGroup
    action: np.ndarray

    def check(self):
        """Raise :class:`GMapError` unless the table is a unital associative action."""
        group, action = self.group, self.action
        if action.ndim != 2 or action.shape[0] != group.order:
            raise GMapError(f"action table must have {group.order} rows, got {action.shape}")
        n = action.shape[1]
        if n and (action.min() < 0 or action.max() >= n):
            raise GMapError("action table has points out of range")
        if not np.array_equal(action[group.identity], np.arange(n)):
            raise GMapError("identity does not act trivially")
        # (ab)·x against a·(b·x)
        if not np.array_equal(action[group.table], action[:, action]):
            raise GMapError("action table is not associative")
        return self

    @property
    def size(self):
        """Number of points."""
        return self.action.shape[1]


def decompose_pointed(X):
    """Orbits ordered by minimal point; the basepoint of each is its minimal point."""
    X.check()
    group = X.group
    seen = np.zeros(X.size, dtype=bool)
    stabilizers = []
    for p in range(X.size):
        if seen[p]:
            continue
        column = X.action[:, p]
        seen[column] = True
        stabilizers.append(group.subgroup(np.flatnonzero(column == p), check=False))
    return PointedGSet(group, tuple(stabilizers))


def _coset_index(subgroup):
    """Transversal of ``G/H`` and the coset position of every group element."""
    group = subgroup.group
    reps = left_transversal(group.full, subgroup)
    index = np.empty(group.order, dtype=np.int64)
    for pos, t in enumerate(reps):
        index[group.table[t, subgroup.array]] = pos
    return reps, index


def coset_gset(subgroup):
    """``G/H`` with point ``i`` the coset ``t_i H``; point 0 is ``eH``."""
    group = subgroup.group
    reps, index = _coset_index(subgroup)
    action = index[group.table[:, np.asarray(reps)]]
    return ExplicitGSet(group, frozen_array(action))


def realize_gset(X):
    """Action table of the disjoint union of the orbits of ``X``."""
    group = X.group
    blocks = [coset_gset(H).action + offset for H, offset in zip(X.orbits, X.offsets)]
    action = np.hstack(blocks) if blocks else np.zeros((group.order, 0), dtype=np.int64)
    return ExplicitGSet(group, frozen_array(action))


def realize_gmap(f):
    """Point map of :func:`realize_gset` of the source into that of the target."""
    group = f.group
    image = []
    for H, j, g in zip(f.source.orbits, f.orbit_map, f.witnesses):
        K = f.target.orbits[j]
        reps, _ = _coset_index(H)
        _, index = _coset_index(K)
        # t_i H ↦ t_i g K
        image.extend(f.target.offsets[j] + index[group.table[np.asarray(reps), g]])
    return frozen_array(np.asarray(image, dtype=np.int64))


def orbit_maps(source, target):
    """Every G-map ``G/source → G/target``, one per minimal witness."""
    group = source.group
    return [
        GMap.single(source, target, g)
        for g in sorted(left_transversal(group.full, target))
        if source.conjugate(g).is_subgroup_of(target)
    ]


def j_objects(X):
    """Object of the additive completion attached to ``X``: its stabilizer tuple."""
    return X.orbits


def functor_j_lower(f):
    """Covariant part of ``j``.

    Column ``i`` holds ``[H^g, c_{g⁻¹}, H]`` over ``(K, H)`` in row ``f(i)``, zeros elsewhere.
    """
    group = f.group
    source, target = j_objects(f.source), j_objects(f.target)
    rows = [[BisetMorphism.zero(H, K) for H in source] for K in target]
    for i, (H, j, g) in enumerate(zip(source, f.orbit_map, f.witnesses)):
        K = target[j]
        rep = StandardRep.from_conjugation(K, H, H.conjugate(g), group.inv(g))
        rows[j][i] = BisetMorphism.from_rep(rep)
    return MatrixMorphism.from_rows(source, target, rows)


def functor_j_upper(f):
    """Contravariant part of ``j``: the transpose of :func:`functor_j_lower`."""
    return tau_matrix(functor_j_lower(f))


def _check_single(f, what):
    if len(f.source) != 1 or len(f.target) != 1:
        raise GMapError(f"{what} must be a map between single orbits")


def pullback(psi, phi):
    """Pullback of ``psi: G/H1 → G/K`` and ``phi: G/H2 → G/K``.

    With ``H_i' = H_i^{g_i}`` the orbits are indexed by ``x ∈ H2'\\K/H1'``; orbit ``x`` has
    basepoint ``(x g1⁻¹ H1, g2⁻¹ H2)`` and stabilizer ``H2' ∩ x H1' x⁻¹``.

    Returns:
        tuple: ``(S, Psi, Phi)`` with ``Psi: S → G/H2`` and ``Phi: S → G/H1``.
    """
    _check_single(psi, "psi")
    _check_single(phi, "phi")
    if psi.target != phi.target:
        raise GMapError("pullback needs two maps into the same orbit")
    group = psi.group
    K = psi.target.orbits[0]
    H1, H2 = psi.source.orbits[0], phi.source.orbits[0]
    g1, g2 = psi.witnesses[0], phi.witnesses[0]
    H1_, H2_ = H1.conjugate(g1), H2.conjugate(g2)
    representatives = double_cosets(K, H2_, H1_).representatives
    stabilizers = tuple(H2_.intersection(H1_.conjugate(group.inv(x))) for x in representatives)
    S = PointedGSet(group, stabilizers)
    n = len(stabilizers)
    Psi = GMap(S, phi.source, (0,) * n, (group.inv(g2),) * n)
    g1_inv = group.inv(g1)
    Phi = GMap(S, psi.source, (0,) * n, tuple(group.mul(x, g1_inv) for x in representatives))
    L.debug("pullback over %d double cosets", n)
    return S, Psi, Phi


def brute_force_pullback(psi, phi):
    """Pairs ``(p1, p2)`` of realized points with ``psi(p1) = phi(p2)`` under the diagonal action.

    Returns:
        tuple: the :class:`ExplicitGSet` and the two coordinate projections.
    """
    if psi.target != phi.target:
        raise GMapError("pullback needs two maps into the same G-set")
    X1, X2 = realize_gset(psi.source), realize_gset(phi.source)
    p1, p2 = np.nonzero(realize_gmap(psi)[:, None] == realize_gmap(phi)[None, :])
    index = np.full((X1.size, X2.size), -1, dtype=np.int64)
    index[p1, p2] = np.arange(len(p1))
    action = index[X1.action[:, p1], X2.action[:, p2]]
    return ExplicitGSet(psi.group, frozen_array(action)), p1, p2


def stabilizer_classes(X):
    """Multiset of ``G``-conjugacy classes of the orbit stabilizers."""
    classes = conjugacy_class_index(X.group.full)
    return Counter(classes[H] for H in X.orbits)


def pullbacks_agree(psi, phi):
    """Compare :func:`pullback` with :func:`brute_force_pullback`.

    Checks the stabilizer class multisets and that both squares commute as G-maps.
    """
    S, Psi, Phi = pullback(psi, phi)
    brute, _, _ = brute_force_pullback(psi, phi)
    expected = decompose_pointed(brute)
    if stabilizer_classes(S) != stabilizer_classes(expected):
        return False
    return psi.compose(Phi) == phi.compose(Psi)


def conjugation_class(f):
    """Class of ``c_{g h}: H → K`` over ``h ∈ K`` as the minimal image row on ``H``."""
    _check_single(f, "f")
    group = f.group
    H, K = f.source.orbits[0], f.target.orbits[0]
    movers = group.table[f.witnesses[0], K.array]
    left = group.table[group.inverse[movers][:, None], H.array[None, :]]
    rows = group.table[left, movers[:, None]]
    return tuple(int(x) for x in rows[np.lexsort(rows.T[::-1])[0]])


def same_conjugation_class(f1, f2):
    """``True`` if the two maps induce the same class of conjugations."""
    if f1.source != f2.source or f1.target != f2.target:
        return False
    return conjugation_class(f1) == conjugation_class(f2)


def centralizing_element(f1, f2):
    """Minimal ``h ∈ K`` with ``g1 h g2⁻¹ ∈ C_G(H)``, or ``None``."""
    _check_single(f1, "f1")
    _check_single(f2, "f2")
    group = f1.group
    H, K = f1.source.orbits[0], f1.target.orbits[0]
    C = centralizer(group.full, H)
    g1, g2 = f1.witnesses[0], f2.witnesses[0]
    for h in K.elements:
        if group.mul(group.mul(g1, h), group.inv(g2)) in C:
            return h
    return None
