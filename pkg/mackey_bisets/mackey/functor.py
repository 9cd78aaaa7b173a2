# SPDX-License-Identifier: Apache-2.0

"""Factorization of a conjugation invariant Mackey functor through conjugation bisets.

On a conjugation biset ``[L, c_g, K]`` over ``(H2, H1)`` the functor is
``ind^{H2}_L ∘ con(g⁻¹, K) ∘ res^{H1}_K``; it extends additively to morphisms and matrices.
"""

import numpy as np

from mackey_bisets.biset.compose import compose_keys
from mackey_bisets.biset.factor import change_point_bisets, conjugation_keys, factorize
from mackey_bisets.biset.standard import CanonicalKey, transpose
from mackey_bisets.category.gset import GMap, functor_j_lower, functor_j_upper, orbit_maps
from mackey_bisets.category.matrix import MatrixMorphism
from mackey_bisets.category.morphism import BisetMorphism, hom_compose
from mackey_bisets.exception import NotConjugationBisetError, NotConjugationInvariantError
from mackey_bisets.group.cosets import conjugation_realizing, realizing_elements
from mackey_bisets.mackey.abelian import AbHom, FgAbelianGroup
from mackey_bisets.mackey.check import (
    CheckReport,
    check_conjugation_invariance,
    contravariant,
    covariant,
)
from mackey_bisets.mackey.data import MackeyData
from mackey_bisets.settings import L


class AdditiveFunctor:
    """Additive functor on the conjugation bisets determined by Mackey data."""

    def __init__(self, data):
        self.data = data
        self._cache = {}

    @property
    def evaluated(self):
        """Number of canonical keys evaluated so far."""
        return len(self._cache)

    def value(self, subgroup):
        """Value on an object."""
        return self.data.value(subgroup)

    def along(self, rep, g):
        """Three-factor formula for ``rep`` with an explicit realizing element ``g``."""
        data = self.data
        return (
            data.induction(rep.L, rep.H2)
            @ data.conjugation(data.group.inv(g), rep.K)
            @ data.restriction(rep.K, rep.H1)
        )

    def on_rep(self, rep):
        """Value on a standard representation, through the minimal realizing element.

        Raises:
            NotConjugationBisetError: ``rep`` is not a conjugation biset.
        """
        g = conjugation_realizing(rep.gamma)
        if g is None:
            raise NotConjugationBisetError(f"{rep} is not a conjugation biset")
        return self.along(rep, g)

    def on_key(self, key):
        """Value on a canonical key, cached."""
        if key not in self._cache:
            self._cache[key] = self.on_rep(key.rep)
        return self._cache[key]

    def on_morphism(self, morphism):
        """Additive extension to a :class:`BisetMorphism`."""
        total = AbHom.zero(self.value(morphism.source), self.value(morphism.target))
        for key, coeff in morphism.terms:
            total = total + coeff * self.on_key(key)
        return total

    def on_matrix(self, matrix):
        """Matricial extension to a :class:`MatrixMorphism`."""
        domain_parts = [self.value(s) for s in matrix.source]
        codomain_parts = [self.value(t) for t in matrix.target]
        domain = FgAbelianGroup().direct_sum(*domain_parts)
        codomain = FgAbelianGroup().direct_sum(*codomain_parts)
        out = np.zeros((codomain.rank, domain.rank), dtype=np.int64)
        row = 0
        for i, part in enumerate(codomain_parts):
            col = 0
            for j, source_part in enumerate(domain_parts):
                block = self.on_morphism(matrix[i, j]).matrix
                out[row : row + part.rank, col : col + source_part.rank] = block
                col += source_part.rank
            row += part.rank
        return AbHom(domain, codomain, out, check=False)

    def __call__(self, value):
        if isinstance(value, MatrixMorphism):
            return self.on_matrix(value)
        if isinstance(value, BisetMorphism):
            return self.on_morphism(value)
        if isinstance(value, CanonicalKey):
            return self.on_key(value)
        return self.on_rep(value)


def build_F(data):  # pylint: disable=invalid-name
    """Additive functor through which ``data`` factors.

    Raises:
        NotConjugationInvariantError: some ``z ∈ C_G(H)`` acts nontrivially on ``M(H)``.
    """
    report = check_conjugation_invariance(data)
    if not report.passed:
        first = report.failures[0]
        L.warning("refusing factorization: %s at %s", first.axiom, first.instance)
        raise NotConjugationInvariantError(
            f"not conjugation invariant: {first.axiom} fails at {_describe(first.instance)}",
            report=report,
        )
    return AdditiveFunctor(data)


def _describe(instance):
    return ", ".join(
        f"{k}={v.to_list() if hasattr(v, 'to_list') else v}" for k, v in instance.items()
    )


def _all_pairs(data):
    subs = data.subgroups
    return [(H2, H1) for H2 in subs for H1 in subs]


def verify_functoriality(functor, data):
    """``F(b ∘ a) = F(b) ∘ F(a)`` for every composable pair of conjugation keys."""
    report = CheckReport("functoriality")
    subs = data.subgroups
    for H1 in subs:
        for H2 in subs:
            lower = conjugation_keys(H2, H1)
            if not lower:
                continue
            for H3 in subs:
                for b in conjugation_keys(H3, H2):
                    for a in lower:
                        composite = hom_compose(
                            BisetMorphism.from_rep(b.rep), BisetMorphism.from_rep(a.rep)
                        )
                        left = functor.on_morphism(composite)
                        right = functor.on_key(b) @ functor.on_key(a)
                        instance = {"b": b, "a": a}
                        if left != right:
                            instance["components"] = sorted(compose_keys(b.rep, a.rep).elements())
                        report.compare("composition", instance, left, right)
    L.info("functoriality: %d pairs, %d failures", report.checked, report.failure_count)
    return report


def verify_generator_agreement(functor, data):
    """``F ∘ j`` agrees with ``data`` on single-orbit G-maps and along every factorization."""
    report = CheckReport("generator agreement")
    for H, K in _all_pairs(data):
        for f in orbit_maps(H, K):
            instance = {"H": H, "K": K, "g": f.witnesses[0]}
            report.compare("covariant", instance, functor(functor_j_lower(f)), covariant(data, f))
            report.compare(
                "contravariant", instance, functor(functor_j_upper(f)), contravariant(data, f)
            )
    for H2, H1 in _all_pairs(data):
        for key in conjugation_keys(H2, H1):
            rep = key.rep
            parts = factorize(rep)
            g = parts.realizing
            instance = {"key": key}
            report.compare("ind factor", instance, functor(parts.ind), data.induction(rep.L, H2))
            report.compare(
                "iso factor",
                instance,
                functor(parts.iso),
                data.conjugation(data.group.inv(g), rep.K),
            )
            report.compare("res factor", instance, functor(parts.res), data.restriction(rep.K, H1))
            report.compare(
                "factorization",
                instance,
                functor.on_key(key),
                functor(parts.ind) @ functor(parts.iso) @ functor(parts.res),
            )
    L.info("generator agreement: %d checks, %d failures", report.checked, report.failure_count)
    return report


def verify_g_independence(functor, data):
    """The three-factor formula gives the same map for every realizing element."""
    report = CheckReport("realizing element independence")
    for H2, H1 in _all_pairs(data):
        for key in conjugation_keys(H2, H1):
            rep = key.rep
            expected = functor.on_key(key)
            for g in realizing_elements(rep.gamma):
                instance = {"key": key, "g": g}
                report.compare("realizing element", instance, functor.along(rep, g), expected)
    return report


def verify_basepoint_independence(functor, data):
    """Factorizations at every basepoint ``y = h2·x·h1`` give the same map.

    Also checks ``ind_x = ind_y ∘ V``, ``res_x = W⁻¹ ∘ res_y`` and ``iso_x = V⁻¹ ∘ iso_y ∘ W``
    after applying the functor.
    """
    report = CheckReport("basepoint independence")
    F = functor
    for H2, H1 in _all_pairs(data):
        for key in conjugation_keys(H2, H1):
            rep = key.rep
            at_x = factorize(rep)
            expected = F.on_key(key)
            for h2 in H2:
                for h1 in H1:
                    moves = change_point_bisets(rep, h2, h1)
                    at_y = factorize(moves.at_y)
                    V, W = moves.V, moves.W
                    V_inv, W_inv = transpose(V), transpose(W)
                    instance = {"key": key, "h2": h2, "h1": h1}
                    report.compare("moved basepoint", instance, F(moves.at_y), expected)
                    report.compare("ind", instance, F(at_x.ind), F(at_y.ind) @ F(V))
                    report.compare("res", instance, F(at_x.res), F(W_inv) @ F(at_y.res))
                    report.compare("iso", instance, F(at_x.iso), F(V_inv) @ F(at_y.iso) @ F(W))
    return report


def mackey_from_functor(functor):
    """Mackey data of ``F ∘ j``: res, ind and con read off the images of G-maps."""
    data = functor.data
    group = data.group
    values = {H: functor.value(H) for H in data.subgroups}
    res, ind, con = {}, {}, {}
    for K in data.subgroups:
        for H in data.subgroups:
            if not H.is_subgroup_of(K):
                continue
            inclusion = GMap.single(H, K, group.identity)
            ind[(H, K)] = functor(functor_j_lower(inclusion))
            res[(H, K)] = functor(functor_j_upper(inclusion))
    for H in data.subgroups:
        for g in range(group.order):
            con[(g, H)] = functor(functor_j_lower(GMap.single(H, H.conjugate(g), g)))
    return MackeyData(group, data.spec, values, res, ind, con)


def differences(first, second):
    """Labels of the maps on which two Mackey data differ."""
    out = []
    for name in ("res", "ind", "con"):
        left, right = getattr(first, name), getattr(second, name)
        for key in sorted(set(left) | set(right), key=repr):
            if left.get(key) != right.get(key):
                out.append(f"{name}:{key}")
    return out
