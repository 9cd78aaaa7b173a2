# SPDX-License-Identifier: Apache-2.0

"""Standard representations ``[L, γ, K]`` of indecomposable bifree bisets and their keys."""

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from mackey_bisets.exception import BisetError, HomomorphismError, SubgroupError
from mackey_bisets.group.core import GroupHom, Subgroup
from mackey_bisets.util import validate

STANDARD_REP_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["H2", "H1", "L", "K", "gamma"],
    "properties": {
        "H2": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "H1": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "L": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "K": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "gamma": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "items": {"type": "integer", "minimum": 0},
            },
        },
    },
}


@dataclass(frozen=True)
class StandardRep:
    """Indecomposable bifree ``(H2, H1)``-biset ``[L, γ, K]`` with ``γ: L ≅ K``.

    The biset is the coset space of ``H2 × H1ᵒᵖ`` by the graph of ``γ``; its basepoint ``x``
    satisfies ``l·x = x·γ(l)``.
    """

    H2: Subgroup
    H1: Subgroup
    L: Subgroup
    K: Subgroup
    gamma: GroupHom

    def __repr__(self):
        return (
            f"StandardRep(H2={self.H2.to_list()}, H1={self.H1.to_list()}, L={self.L.to_list()}, "
            f"K={self.K.to_list()}, gamma={list(self.gamma.pairs)})"
        )

    @property
    def group(self):
        """Parent group."""
        return self.H2.group

    @property
    def size(self):
        """Number of points of the realized biset."""
        return self.H2.order * self.H1.order // self.L.order

    def check(self):
        """Raise unless ``L ≤ H2``, ``K ≤ H1`` and ``γ`` is an isomorphism ``L → K``."""
        if not self.L.is_subgroup_of(self.H2):
            raise SubgroupError(f"L={self.L} is not contained in H2={self.H2}")
        if not self.K.is_subgroup_of(self.H1):
            raise SubgroupError(f"K={self.K} is not contained in H1={self.H1}")
        if self.gamma.domain != self.L or self.gamma.codomain != self.K:
            raise HomomorphismError("gamma must map L onto K")
        self.gamma.check(bijective=True)
        return self

    @cached_property
    def key(self):
        """Canonical key of the isomorphism class."""
        return canonical_key(self)

    def to_json(self):
        """JSON form with element indices."""
        return {
            "H2": self.H2.to_list(),
            "H1": self.H1.to_list(),
            "L": self.L.to_list(),
            "K": self.K.to_list(),
            "gamma": [list(p) for p in self.gamma.pairs],
        }

    @classmethod
    def from_json(cls, group, doc):
        """Parse and validate the JSON form."""
        validate(doc, STANDARD_REP_SCHEMA, BisetError, what="standard representation")
        H2, H1, L, K = (group.subgroup(doc[name]) for name in ("H2", "H1", "L", "K"))
        gamma = GroupHom.from_mapping(L, K, dict(map(tuple, doc["gamma"])), check=False)
        return cls(H2, H1, L, K, gamma).check()

    @classmethod
    def from_conjugation(cls, H2, H1, L, g):
        """``[L, c_g, L^g]`` over ``(H2, H1)``."""
        gamma = GroupHom.conjugation(L, g)
        return cls(H2, H1, L, gamma.codomain, gamma)

    @classmethod
    def identity(cls, subgroup):
        """``[H, id, H]`` over ``(H, H)``: the identity biset."""
        return cls(subgroup, subgroup, subgroup, subgroup, GroupHom.identity(subgroup))

    @classmethod
    def free(cls, H2, H1):
        """``[{e}, id, {e}]`` over ``(H2, H1)``: the free biorbit."""
        trivial = H2.group.trivial
        return cls(H2, H1, trivial, trivial, GroupHom.identity(trivial))


@dataclass(frozen=True, order=True)
class CanonicalKey:
    """Minimal encoding ``(L, K, γ)`` over the basepoint orbit, plus the ambient pair.

    Two standard representations have equal keys iff their realized bisets are isomorphic.
    """

    L: tuple
    K: tuple
    gamma: tuple
    H2: tuple
    H1: tuple
    group: object = field(compare=False, repr=False, hash=False)

    def __repr__(self):
        return f"CanonicalKey(L={list(self.L)}, K={list(self.K)}, gamma={list(self.gamma)})"

    @cached_property
    def rep(self):
        """Standard representation carrying this encoding."""
        sub = self.group.subgroup
        L = sub(self.L, check=False)
        K = sub(self.K, check=False)
        gamma = GroupHom(L, K, tuple(zip(self.L, self.gamma)))
        return StandardRep(sub(self.H2, check=False), sub(self.H1, check=False), L, K, gamma)

    @property
    def source(self):
        """Right ambient ``H1``."""
        return self.rep.H1

    @property
    def target(self):
        """Left ambient ``H2``."""
        return self.rep.H2

    def to_json(self):
        """Same layout as :class:`StandardRep`."""
        return {
            "H2": list(self.H2),
            "H1": list(self.H1),
            "L": list(self.L),
            "K": list(self.K),
            "gamma": [[l, k] for l, k in zip(self.L, self.gamma)],
        }


def change_base_point(rep, h2, h1):
    """Standard representation of the same biset at ``y = h2·x·h1``.

    ``L_y = h2 L h2⁻¹``, ``K_y = h1⁻¹ K h1`` and ``γ_y(l) = h1⁻¹ γ(h2⁻¹ l h2) h1``.
    """
    if h2 not in rep.H2:
        raise BisetError(f"{h2} is not an element of H2={rep.H2}")
    if h1 not in rep.H1:
        raise BisetError(f"{h1} is not an element of H1={rep.H1}")
    group = rep.group
    L_y = rep.L.conjugate(group.inv(h2))
    K_y = rep.K.conjugate(h1)
    pre = group.conj_array(L_y.array, h2)
    images = group.conj_array(rep.gamma.images[rep.L.positions[pre]], h1)
    return StandardRep(rep.H2, rep.H1, L_y, K_y, GroupHom.from_images(L_y, K_y, images))


def _minimal_conjugates(ambient, subgroup, inverse=False):
    """Minimal conjugate of ``subgroup`` by ``ambient`` and the elements reaching it.

    With ``inverse`` the conjugation is ``h S h⁻¹`` instead of ``h⁻¹ S h``.
    """
    group = subgroup.group
    movers = ambient.array
    conj_by = group.inverse[movers] if inverse else movers
    # rows: conjugates of the subgroup, one per mover
    left = group.table[group.inverse[conj_by][:, None], subgroup.array[None, :]]
    rows = np.sort(group.table[left, conj_by[:, None]], axis=1)
    order = np.lexsort(rows.T[::-1])
    best = rows[order[0]]
    hits = (rows == best).all(axis=1)
    return tuple(int(x) for x in best), movers[hits]


@lru_cache(maxsize=None)
def canonical_key(rep):
    """Lexicographically minimal encoding of ``change_base_point(rep, h2, h1)`` over all moves.

    ``L_y`` depends only on ``h2`` and ``K_y`` only on ``h1``, so both are minimized
    independently before ``γ_y`` is minimized over the surviving moves.
    """
    group = rep.group
    table, inv = group.table, group.inverse
    L_min, h2s = _minimal_conjugates(rep.H2, rep.L, inverse=True)
    K_min, h1s = _minimal_conjugates(rep.H1, rep.K)
    L_arr = np.array(L_min, dtype=np.int64)
    # pre[i, j] = h2_i⁻¹ l_j h2_i, an element of L
    pre = table[table[inv[h2s][:, None], L_arr[None, :]], h2s[:, None]]
    images = rep.gamma.images[rep.L.positions[pre]]
    # moved[i, k, j] = h1_k⁻¹ γ(pre[i, j]) h1_k
    moved = table[table[inv[h1s][None, :, None], images[:, None, :]], h1s[None, :, None]]
    rows = moved.reshape(-1, len(L_min))
    best = rows[np.lexsort(rows.T[::-1])[0]]
    return CanonicalKey(
        L=L_min,
        K=K_min,
        gamma=tuple(int(k) for k in best),
        H2=rep.H2.elements,
        H1=rep.H1.elements,
        group=group,
    )


def transpose(rep):
    """``τ[L, γ, K] = [K, γ⁻¹, L]`` with the ambients swapped."""
    return StandardRep(rep.H1, rep.H2, rep.K, rep.L, rep.gamma.inverse())


def transpose_key(key):
    """Canonical key of the transpose."""
    return canonical_key(transpose(key.rep))
