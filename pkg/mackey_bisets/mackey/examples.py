# SPDX-License-Identifier: Apache-2.0

"""Built-in Mackey functors: Burnside rings, fixed points of a module, zero and constant."""

import numpy as np

from mackey_bisets.exception import AbelianGroupError
from mackey_bisets.group.catalog import build_group, parse_group_arg
from mackey_bisets.group.cosets import (
    conjugacy_class_index,
    double_cosets,
    enumerate_subgroups,
    left_transversal,
    subgroup_conjugacy_classes,
)
from mackey_bisets.mackey.abelian import AbHom, FgAbelianGroup, kernel
from mackey_bisets.mackey.data import MackeyData
from mackey_bisets.settings import L


def _group(spec):
    spec = parse_group_arg(spec)
    return spec, build_group(spec)


def _inclusions(subgroups):
    return [(H, K) for K in subgroups for H in subgroups if H.is_subgroup_of(K)]


def burnside_example(spec):
    """Burnside functor: ``M(H)`` is free on the ``H``-conjugacy classes of subgroups of ``H``.

    ``res^K_H [K/L] = Σ_{x ∈ H\\K/L} [H/(H ∩ xLx⁻¹)]``, ``ind^K_H [H/L] = [K/L]`` and
    ``con(g, H) [H/L] = [H^g/L^g]``.
    """
    spec, group = _group(spec)
    subs = enumerate_subgroups(group)
    basis = {H: [members[0] for members in subgroup_conjugacy_classes(H)] for H in subs}
    values = {H: FgAbelianGroup((0,) * len(basis[H])) for H in subs}
    res, ind, con = {}, {}, {}
    for H, K in _inclusions(subs):
        classes_H, classes_K = conjugacy_class_index(H), conjugacy_class_index(K)
        restriction = np.zeros((len(basis[H]), len(basis[K])), dtype=np.int64)
        for col, M in enumerate(basis[K]):
            for x in double_cosets(K, H, M).representatives:
                restriction[classes_H[H.intersection(M.conjugate(group.inv(x)))], col] += 1
        induction = np.zeros((len(basis[K]), len(basis[H])), dtype=np.int64)
        for col, M in enumerate(basis[H]):
            induction[classes_K[M], col] = 1
        res[(H, K)] = AbHom(values[K], values[H], restriction, check=False)
        ind[(H, K)] = AbHom(values[H], values[K], induction, check=False)
    for H in subs:
        for g in range(group.order):
            Hg = H.conjugate(g)
            classes = conjugacy_class_index(Hg)
            conjugation = np.zeros((len(basis[Hg]), len(basis[H])), dtype=np.int64)
            for col, M in enumerate(basis[H]):
                conjugation[classes[M.conjugate(g)], col] = 1
            con[(g, H)] = AbHom(values[H], values[Hg], conjugation, check=False)
    L.debug("burnside functor on %s: %d subgroups", group.label, len(subs))
    return MackeyData(group, spec, values, res, ind, con)


def check_action(group, module, action):
    """Validate ``action[g]`` as a left action of ``group`` on ``module`` by AbHoms.

    Raises:
        AbelianGroupError: a matrix is ill defined, or the maps do not form an action.
    """
    homs = [AbHom(module, module, np.asarray(action[g])) for g in range(group.order)]
    if not homs[group.identity].is_identity:
        raise AbelianGroupError("identity does not act trivially")
    for a in range(group.order):
        for b in range(group.order):
            if homs[a] @ homs[b] != homs[group.mul(a, b)]:
                raise AbelianGroupError(f"action is not multiplicative at ({a}, {b})")
    return homs


def fixed_point_example(spec, module, action):
    """Fixed points ``M(H) = N^H`` of a ``G``-module ``N``.

    Restriction is inclusion, induction the transfer ``Σ_{t ∈ K/H} t·`` and ``con(g, H)`` the
    action of ``g⁻¹``.

    Args:
        spec: group spec or catalog name.
        module (FgAbelianGroup): ``N``.
        action: ``action[g]`` is the matrix of ``g`` acting on ``N``.
    """
    spec, group = _group(spec)
    homs = check_action(group, module, action)
    identity = AbHom.identity(module)
    subs = enumerate_subgroups(group)
    fixed = {
        H: kernel(module, [homs[h] - identity for h in H if h != group.identity]) for H in subs
    }
    values = {H: fixed[H].group for H in subs}
    res, ind, con = {}, {}, {}
    for H, K in _inclusions(subs):
        res[(H, K)] = fixed[H].restrict_to(fixed[K].inclusion)
        transfer = AbHom.zero(module, module)
        for t in left_transversal(K, H):
            transfer = transfer + homs[t]
        ind[(H, K)] = fixed[K].restrict_to(transfer @ fixed[H].inclusion)
    for H in subs:
        for g in range(group.order):
            moved = homs[group.inv(g)] @ fixed[H].inclusion
            con[(g, H)] = fixed[H.conjugate(g)].restrict_to(moved)
    return MackeyData(group, spec, values, res, ind, con)


def negation_example():
    """``C2`` acting on ``Z/3`` by negation: Mackey, but not conjugation invariant."""
    return fixed_point_example("C2", FgAbelianGroup((3,)), {0: [[1]], 1: [[-1]]})


def constant_example(spec, module):
    """Fixed points of the trivial action on ``module``."""
    _, group = _group(spec)
    eye = np.eye(module.rank, dtype=np.int64)
    return fixed_point_example(spec, module, {g: eye for g in range(group.order)})


def zero_example(spec):
    """Zero functor."""
    spec, group = _group(spec)
    subs = enumerate_subgroups(group)
    zero = FgAbelianGroup()
    values = {H: zero for H in subs}
    res = {pair: AbHom.zero(zero, zero) for pair in _inclusions(subs)}
    ind = dict(res)
    con = {(g, H): AbHom.zero(zero, zero) for H in subs for g in range(group.order)}
    return MackeyData(group, spec, values, res, ind, con)

