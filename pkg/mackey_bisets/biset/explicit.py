# SPDX-License-Identifier: Apache-2.0

"""Bisets as explicit action tables.

``left_action[i, x]`` is ``H2.elements[i] · x`` and ``right_action[x, j]`` is
``x · H1.elements[j]``.
"""

from dataclasses import dataclass

import numpy as np

from mackey_bisets.biset.standard import StandardRep
from mackey_bisets.exception import AmbientMismatchError, BisetError
from mackey_bisets.group.core import GroupHom
from mackey_bisets.settings import L as LOG


@dataclass(frozen=True, eq=False)
class ExplicitBiset:
    """Finite ``(H2, H1)``-biset with commuting left and right actions."""

    left_group: object
    right_group: object
    left_action: np.ndarray
    right_action: np.ndarray

    def __repr__(self):
        return (
            f"ExplicitBiset(H2={self.left_group.to_list()}, H1={self.right_group.to_list()}, "
            f"size={self.size})"
        )

    @property
    def size(self):
        """Number of points."""
        return self.left_action.shape[1]

    def left(self, h2, x):
        """``h2 · x``."""
        return int(self.left_action[self.left_group.index(h2), x])

    def right(self, x, h1):
        """``x · h1``."""
        return int(self.right_action[x, self.right_group.index(h1)])

    def check(self, bifree=True):
        """Raise :class:`BisetError` unless the actions are unital, associative and commute."""
        H2, H1 = self.left_group, self.right_group
        if H2.group is not H1.group:
            raise BisetError("acting groups live in different parent groups")
        size = self.size
        if self.left_action.shape != (H2.order, size) or self.right_action.shape != (
            size,
            H1.order,
        ):
            raise BisetError("action tables have inconsistent shapes")
        table = H2.group.table
        points = np.arange(size)
        if size == 0:
            return self
        for acting, name in ((self.left_action, "left"), (self.right_action.T, "right")):
            if acting.min() < 0 or acting.max() >= size:
                raise BisetError(f"{name} action leaves the point set")
            if not (np.sort(acting, axis=1) == points).all():
                raise BisetError(f"{name} action is not by permutations")
        e = H2.group.identity
        if not np.array_equal(self.left_action[H2.index(e)], points):
            raise BisetError("left action is not unital")
        if not np.array_equal(self.right_action[:, H1.index(e)], points):
            raise BisetError("right action is not unital")
        # (ab)·x = a·(b·x)
        prod2 = H2.positions[table[np.ix_(H2.array, H2.array)]]
        if not np.array_equal(self.left_action[prod2], self.left_action[:, self.left_action]):
            raise BisetError("left action is not associative")
        # x·(ab) = (x·a)·b
        prod1 = H1.positions[table[np.ix_(H1.array, H1.array)]]
        if not np.array_equal(self.right_action[:, prod1], self.right_action[self.right_action]):
            raise BisetError("right action is not associative")
        # (a·x)·b = a·(x·b)
        if not np.array_equal(
            self.right_action[self.left_action], self.left_action[:, self.right_action]
        ):
            raise BisetError("left and right actions do not commute")
        if bifree:
            nontrivial2 = np.arange(H2.order) != H2.index(e)
            nontrivial1 = np.arange(H1.order) != H1.index(e)
            if (self.left_action[nontrivial2] == points).any():
                raise BisetError("left action is not free")
            if (self.right_action[:, nontrivial1] == points[:, None]).any():
                raise BisetError("right action is not free")
        return self

    def to_json(self):
        """Action tables with the acting subgroups."""
        return {
            "H2": self.left_group.to_list(),
            "H1": self.right_group.to_list(),
            "size": self.size,
            "left_action": self.left_action.tolist(),
            "right_action": self.right_action.tolist(),
        }


def frozen_array(array):
    """Read-only contiguous int64 copy."""
    array = np.ascontiguousarray(array, dtype=np.int64)
    array.flags.writeable = False
    return array


def realize(rep):
    """Explicit biset of ``rep``; point ``0`` is the basepoint ``⟨e, e⟩``.

    Points are classes of pairs ``(a, b) ∈ H2 × H1`` with ``(a l⁻¹, γ(l) b) ~ (a, b)``,
    standing for ``a·x·b``.
    """
    rep.check()
    group = rep.group
    table, inv = group.table, group.inverse
    H2, H1, Lsub = rep.H2, rep.H1, rep.L
    n1 = H1.order
    # a_pos[a, l] = position of a·l⁻¹ in H2, b_pos[l, b] = position of γ(l)·b in H1
    a_pos = H2.positions[table[H2.array[:, None], inv[Lsub.array][None, :]]]
    b_pos = H1.positions[table[rep.gamma.images[:, None], H1.array[None, :]]]
    codes = a_pos[:, None, :] * n1 + b_pos.T[None, :, :]
    canon = codes.min(axis=2)
    base = canon[H2.index(group.identity), H1.index(group.identity)]
    labels = np.unique(canon)
    labels = np.concatenate(([base], labels[labels != base]))
    point_of = np.empty(canon.max() + 1, dtype=np.int64)
    point_of[labels] = np.arange(len(labels))
    rep_a, rep_b = labels // n1, labels % n1
    # g·⟨a, b⟩ = ⟨ga, b⟩ and ⟨a, b⟩·g = ⟨a, bg⟩
    left_a = H2.positions[table[H2.array[:, None], H2.array[rep_a][None, :]]]
    left = point_of[canon[left_a, rep_b[None, :]]]
    right_b = H1.positions[table[H1.array[rep_b][:, None], H1.array[None, :]]]
    right = point_of[canon[rep_a[:, None], right_b]]
    return ExplicitBiset(H2, H1, frozen_array(left), frozen_array(right))


def point_of_pair(X, a, b):
    """Point ``a·x₀·b`` of a realized biset with basepoint ``0``."""
    return X.left(a, X.right(0, b))


def standard_rep_at(X, x):
    """Standard representation ``[L_x, φ_x, K_x]`` of ``X`` at the point ``x``.

    ``L_x = {h2 : h2·x ∈ x·H1}`` and ``φ_x(h2)`` is the unique ``h1`` with ``h2·x = x·h1``.
    """
    H2, H1 = X.left_group, X.right_group
    orbit = X.right_action[x]
    moved = X.left_action[:, x]
    mapping = {}
    for i, y in enumerate(moved):
        hits = np.flatnonzero(orbit == y)
        if len(hits) > 1:
            raise BisetError(f"right action is not free at point {x}")
        if len(hits) == 1:
            mapping[H2.elements[i]] = H1.elements[hits[0]]
    group = H2.group
    Lx = group.subgroup(mapping, check=False)
    Kx = group.subgroup(mapping.values(), check=False)
    if Kx.order != Lx.order:
        raise BisetError(f"left action is not free at point {x}")
    gamma = GroupHom.from_mapping(Lx, Kx, mapping, check=False)
    return StandardRep(H2, H1, Lx, Kx, gamma)


def orbits(X):
    """Orbits of the combined two-sided action as sorted point arrays, by minimal point."""
    label = np.full(X.size, -1, dtype=np.int64)
    found = []
    for start in range(X.size):
        if label[start] >= 0:
            continue
        # the orbit of x is H2·x·H1
        members = np.unique(X.right_action[X.left_action[:, start]])
        label[members] = len(found)
        found.append(members)
    return found


def components(X):
    """One ``(StandardRep, basepoint)`` per orbit, basepoint the minimal point of the orbit."""
    return [(standard_rep_at(X, int(members[0])), int(members[0])) for members in orbits(X)]


def component_keys(X):
    """Sorted canonical keys of the components of ``X``."""
    return sorted(rep.key for rep, _ in components(X))


def balanced_product(X2, X1):
    """Balanced product with the class of every pair ``(x2, x1)``.

    Returns the biset and an array ``point[x2, x1]``.
    """
    if X2.right_group != X1.left_group:
        raise AmbientMismatchError(
            f"middle groups differ: {X2.right_group} and {X1.left_group}"
        )
    H3, H2, H1 = X2.left_group, X2.right_group, X1.right_group
    s2, s1 = X2.size, X1.size
    if s2 == 0 or s1 == 0:
        empty = explicit_empty(H3, H1)
        return empty, np.zeros((s2, s1), dtype=np.int64)
    inv_pos = H2.positions[H2.group.inverse[H2.array]]
    # codes[x2, x1, h] = code of (x2·h, h⁻¹·x1)
    codes = X2.right_action[:, None, :] * s1 + X1.left_action[inv_pos].T[None, :, :]
    canon = codes.min(axis=2)
    labels = np.unique(canon)
    point = np.searchsorted(labels, canon)
    rep2, rep1 = labels // s1, labels % s1
    left = point[X2.left_action[:, rep2], rep1[None, :]]
    right = point[rep2[:, None], X1.right_action[rep1]]
    LOG.debug("balanced product of sizes %d, %d has %d points", s2, s1, len(labels))
    return ExplicitBiset(H3, H1, frozen_array(left), frozen_array(right)), point


def compose_bruteforce(X2, X1):
    """``X2 ×_{H2} X1``: quotient of ``X2 × X1`` by ``(x2·h, x1) ~ (x2, h·x1)``."""
    return balanced_product(X2, X1)[0]


def explicit_identity(subgroup):
    """The identity biset ``H`` with multiplication on both sides."""
    table = subgroup.group.table
    mult = subgroup.positions[table[np.ix_(subgroup.array, subgroup.array)]]
    return ExplicitBiset(subgroup, subgroup, frozen_array(mult), frozen_array(mult))


def multiplication_biset(left_group, right_group, carrier):
    """``carrier`` with ``left_group`` and ``right_group`` acting by multiplication."""
    table = carrier.group.table
    left = carrier.positions[table[np.ix_(left_group.array, carrier.array)]]
    right = carrier.positions[table[np.ix_(carrier.array, right_group.array)]]
    if (left < 0).any() or (right < 0).any():
        raise BisetError(f"{carrier} is not closed under the acting groups")
    return ExplicitBiset(left_group, right_group, frozen_array(left), frozen_array(right))


def explicit_empty(left_group, right_group):
    """Empty biset, the zero element."""
    return ExplicitBiset(
        left_group,
        right_group,
        frozen_array(np.zeros((left_group.order, 0))),
        frozen_array(np.zeros((0, right_group.order))),
    )


def disjoint_union(*bisets):
    """Disjoint union, points of later bisets shifted after earlier ones."""
    if not bisets:
        raise BisetError("disjoint union needs at least one biset")
    H2, H1 = bisets[0].left_group, bisets[0].right_group
    lefts, rights, offset = [], [], 0
    for X in bisets:
        if X.left_group != H2 or X.right_group != H1:
            raise AmbientMismatchError("disjoint union of bisets over different groups")
        lefts.append(X.left_action + offset)
        rights.append(X.right_action + offset)
        offset += X.size
    return ExplicitBiset(
        H2,
        H1,
        frozen_array(np.concatenate(lefts, axis=1)),
        frozen_array(np.concatenate(rights, axis=0)),
    )


def explicit_transpose(X):
    """``τX``: same points, ``h1·x = x·h1⁻¹`` and ``x·h2 = h2⁻¹·x``."""
    H2, H1 = X.left_group, X.right_group
    inv = H2.group.inverse
    left = X.right_action[:, H1.positions[inv[H1.array]]].T
    right = X.left_action[H2.positions[inv[H2.array]]].T
    return ExplicitBiset(H1, H2, frozen_array(left), frozen_array(right))


def _extend(X, Y, x, y, mapping, used):
    """Grow ``mapping`` from ``x ↦ y`` over the orbit of ``x``; ``None`` on conflict."""
    trial = dict(mapping)
    trial[x] = y
    stack = [x]
    claimed = set(used) | {y}
    while stack:
        p = stack.pop()
        q = trial[p]
        for p2, q2 in zip(
            np.concatenate((X.left_action[:, p], X.right_action[p])),
            np.concatenate((Y.left_action[:, q], Y.right_action[q])),
        ):
            p2, q2 = int(p2), int(q2)
            if p2 in trial:
                if trial[p2] != q2:
                    return None
            elif q2 in claimed:
                return None
            else:
                trial[p2] = q2
                claimed.add(q2)
                stack.append(p2)
    return trial, claimed


def find_isomorphism(X, Y):
    """Biset isomorphism ``X → Y`` as a list of images, or ``None``.

    Backtracks over the image of each orbit's basepoint.
    """
    if X.left_group != Y.left_group or X.right_group != Y.right_group or X.size != Y.size:
        return None
    bases = [int(members[0]) for members in orbits(X)]

    def search(index, mapping, used):
        if index == len(bases):
            return mapping
        x = bases[index]
        for y in range(Y.size):
            if y in used:
                continue
            grown = _extend(X, Y, x, y, mapping, used)
            if grown is None:
                continue
            found = search(index + 1, *grown)
            if found is not None:
                return found
        return None

    found = search(0, {}, set())
    if found is None:
        return None
    return [found[p] for p in range(X.size)]
