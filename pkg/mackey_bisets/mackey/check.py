# SPDX-License-Identifier: Apache-2.0

"""Checkers for the Mackey axioms, structural consistency and conjugation invariance.

Axiom failures never raise: they are collected as counterexamples in a :class:`CheckReport`.
"""

from dataclasses import dataclass, field

import numpy as np

from mackey_bisets.category.gset import (
    GMap,
    PointedGSet,
    centralizing_element,
    orbit_maps,
    pullback,
    same_conjugation_class,
)
from mackey_bisets.exception import GMapError, MissingMapError
from mackey_bisets.group.cosets import centralizer, double_cosets
from mackey_bisets.mackey.abelian import AbHom, FgAbelianGroup
from mackey_bisets.settings import M1_SQUARES, MAX_FAILURES, SEED, L
from mackey_bisets.util import subgroup_label


@dataclass(frozen=True)
class Failure:
    """One counterexample: the axiom, the instance and both sides of the identity."""

    axiom: str
    instance: dict
    left: object = None
    right: object = None

    def to_json(self):
        return {
            "axiom": self.axiom,
            "instance": self.instance,
            "left": self.left,
            "right": self.right,
        }


@dataclass
class CheckReport:
    """Verdict of one checker; only the first ``max_failures`` counterexamples are kept."""

    name: str
    checked: int = 0
    failure_count: int = 0
    failures: list = field(default_factory=list)
    max_failures: int = MAX_FAILURES

    @property
    def passed(self):
        """``True`` without counterexamples."""
        return self.failure_count == 0

    @property
    def verdict(self):
        """``"pass"`` or ``"fail"``."""
        return "pass" if self.passed else "fail"

    def record(self, ok, axiom, instance, left=None, right=None):
        """Count one instance and keep it as a counterexample unless ``ok``."""
        self.checked += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < self.max_failures:
                self.failures.append(Failure(axiom, instance, left, right))
        return ok

    def compare(self, axiom, instance, left, right):
        """Record whether two homomorphisms agree."""
        return self.record(left == right, axiom, instance, left, right)

    def extend(self, other):
        """Merge another report into this one."""
        self.checked += other.checked
        self.failure_count += other.failure_count
        room = self.max_failures - len(self.failures)
        self.failures.extend(other.failures[: max(room, 0)])
        return self

    def to_json(self):
        return {
            "name": self.name,
            "verdict": self.verdict,
            "checked": self.checked,
            "failure_count": self.failure_count,
            "failures": self.failures,
        }


def _inclusions(data):
    """Pairs ``(H, K)`` with ``H ≤ K``."""
    subs = data.subgroups
    return [(H, K) for K in subs for H in subs if H.is_subgroup_of(K)]


def validate_structure(data):
    """Identities, transitivity, conjugation functoriality and compatibility.

    Raises:
        MissingMapError: a required res, ind or con entry is absent.
    """
    missing = data.missing()
    if missing:
        raise MissingMapError(f"{len(missing)} entries missing, first {missing[0]}")
    report = CheckReport("structure")
    group = data.group
    subs = data.subgroups
    for H in subs:
        ident = AbHom.identity(data.value(H))
        instance = {"H": H}
        report.compare("res identity", instance, data.restriction(H, H), ident)
        report.compare("ind identity", instance, data.induction(H, H), ident)
        for h in H:
            report.compare("con trivial on H", {"H": H, "h": h}, data.conjugation(h, H), ident)

    for K in subs:
        for H in subs:
            if not H.is_subgroup_of(K):
                continue
            for M in subs:
                if not K.is_subgroup_of(M):
                    continue
                instance = {"H": H, "K": K, "L": M}
                report.compare(
                    "res transitivity",
                    instance,
                    data.restriction(H, K) @ data.restriction(K, M),
                    data.restriction(H, M),
                )
                report.compare(
                    "ind transitivity",
                    instance,
                    data.induction(K, M) @ data.induction(H, K),
                    data.induction(H, M),
                )

    for H in subs:
        for g1 in range(group.order):
            first = data.conjugation(g1, H)
            moved = H.conjugate(g1)
            for g2 in range(group.order):
                report.compare(
                    "con functoriality",
                    {"H": H, "g1": g1, "g2": g2},
                    data.conjugation(g2, moved) @ first,
                    data.conjugation(group.mul(g1, g2), H),
                )

    for H, K in _inclusions(data):
        for g in range(group.order):
            Hg, Kg = H.conjugate(g), K.conjugate(g)
            instance = {"H": H, "K": K, "g": g}
            report.compare(
                "con res compatibility",
                instance,
                data.conjugation(g, H) @ data.restriction(H, K),
                data.restriction(Hg, Kg) @ data.conjugation(g, K),
            )
            report.compare(
                "con ind compatibility",
                instance,
                data.conjugation(g, K) @ data.induction(H, K),
                data.induction(Hg, Kg) @ data.conjugation(g, H),
            )
    L.info("structure: %d checks, %d failures", report.checked, report.failure_count)
    return report


def covariant_along(data, H, K, g):
    """``ind^K_{H^g} ∘ con(g, H)`` for the G-map ``G/H → G/K``, ``eH ↦ gK``."""
    return data.induction(H.conjugate(g), K) @ data.conjugation(g, H)


def contravariant_along(data, H, K, g):
    """``con(g⁻¹, H^g) ∘ res^K_{H^g}`` for the G-map ``G/H → G/K``, ``eH ↦ gK``."""
    Hg = H.conjugate(g)
    return data.conjugation(data.group.inv(g), Hg) @ data.restriction(Hg, K)


def _single(f):
    if len(f.source) != 1 or len(f.target) != 1:
        raise GMapError("expected a map between single orbits")
    return f.source.orbits[0], f.target.orbits[0], f.witnesses[0]


def covariant(data, f):
    """``M_*(f)`` of a single-orbit G-map."""
    return covariant_along(data, *_single(f))


def contravariant(data, f):
    """``M^*(f)`` of a single-orbit G-map."""
    return contravariant_along(data, *_single(f))


def value_of(data, X):
    """``M(X) = ⊕ M(H_i)``; the empty G-set has the zero group."""
    return FgAbelianGroup().direct_sum(*(data.value(H) for H in X.orbits))


def _assemble(domain_parts, codomain_parts, blocks):
    """Block matrix over the given summands; ``blocks[(row, col)]`` holds the nonzero blocks."""
    domain = FgAbelianGroup().direct_sum(*domain_parts)
    codomain = FgAbelianGroup().direct_sum(*codomain_parts)
    matrix = np.zeros((codomain.rank, domain.rank), dtype=np.int64)
    row_offsets = np.cumsum([0] + [p.rank for p in codomain_parts])
    col_offsets = np.cumsum([0] + [p.rank for p in domain_parts])
    for (i, j), hom in blocks.items():
        rows = slice(row_offsets[i], row_offsets[i + 1])
        cols = slice(col_offsets[j], col_offsets[j + 1])
        matrix[rows, cols] += hom.matrix
    return AbHom(domain, codomain, matrix, check=False)


def additive_covariant(data, f):
    """``M_*(f): M(X) → M(Y)`` for a G-map between arbitrary pointed G-sets."""
    blocks = {}
    for i, (H, j, g) in enumerate(zip(f.source.orbits, f.orbit_map, f.witnesses)):
        blocks[(j, i)] = covariant_along(data, H, f.target.orbits[j], g)
    return _assemble(
        [data.value(H) for H in f.source.orbits], [data.value(K) for K in f.target.orbits], blocks
    )


def additive_contravariant(data, f):
    """``M^*(f): M(Y) → M(X)`` for a G-map between arbitrary pointed G-sets."""
    blocks = {}
    for i, (H, j, g) in enumerate(zip(f.source.orbits, f.orbit_map, f.witnesses)):
        blocks[(i, j)] = contravariant_along(data, H, f.target.orbits[j], g)
    return _assemble(
        [data.value(K) for K in f.target.orbits], [data.value(H) for H in f.source.orbits], blocks
    )


def _inclusion_maps(parts):
    """Summand inclusions ``X_k → X_1 ⊔ ... ⊔ X_n``."""
    total = PointedGSet(parts[0].group, sum((p.orbits for p in parts), ()))
    maps, offset = [], 0
    for part in parts:
        n = len(part)
        maps.append(
            GMap(part, total, tuple(range(offset, offset + n)), (part.group.identity,) * n)
        )
        offset += n
    return total, maps


def check_M2(data, rng=None, samples=20):  # pylint: disable=invalid-name
    """Additivity: restrictions to the summands of a disjoint union form the identity matrix.

    Covers the empty G-set, every single orbit, every pair of orbits and ``samples`` random
    three-orbit unions.
    """
    report = CheckReport("M2")
    group = data.group
    subs = data.subgroups
    empty = PointedGSet(group, ())
    report.record(value_of(data, empty).rank == 0, "empty G-set", {}, value_of(data, empty), [])
    unions = [[PointedGSet.single(H)] for H in subs]
    unions += [[PointedGSet.single(H), PointedGSet.single(K)] for H in subs for K in subs]
    if rng is not None:
        for _ in range(samples):
            picks = rng.choice(len(subs), size=3)
            unions.append([PointedGSet.single(subs[int(p)]) for p in picks])
    for parts in unions:
        total, inclusions = _inclusion_maps(parts)
        ident = AbHom.identity(value_of(data, total))
        instance = {"orbits": [subgroup_label(H) for H in total.orbits]}
        restrictions = [additive_contravariant(data, m) for m in inclusions]
        stacked = AbHom(
            ident.domain, ident.codomain, np.vstack([r.matrix for r in restrictions]), check=False
        )
        report.compare("restrictions to summands", instance, stacked, ident)
        summed = AbHom.zero(ident.domain, ident.codomain)
        for m, r in zip(inclusions, restrictions):
            summed = summed + additive_covariant(data, m) @ r
        report.compare("sum of summand projections", instance, summed, ident)
    L.info("M2: %d checks, %d failures", report.checked, report.failure_count)
    return report


def m1_generator_sides(data, H1, H2, K):
    """Both sides of the double coset form of (M1) for ``H1, H2 ≤ K``.

    ``res^K_{H2} ∘ ind^K_{H1}`` against the sum over ``x ∈ H2\\K/H1`` of
    ``ind^{H2}_{H2 ∩ xH1x⁻¹} ∘ con(x⁻¹, H1 ∩ H2^x) ∘ res^{H1}_{H1 ∩ H2^x}``.
    """
    group = data.group
    left = data.restriction(H2, K) @ data.induction(H1, K)
    right = AbHom.zero(data.value(H1), data.value(H2))
    for x in double_cosets(K, H2, H1).representatives:
        inner = H1.intersection(H2.conjugate(x))
        outer = inner.conjugate(group.inv(x))
        right = right + (
            data.induction(outer, H2)
            @ data.conjugation(group.inv(x), inner)
            @ data.restriction(inner, H1)
        )
    return left, right


def check_M1(data, rng=None, samples=M1_SQUARES):  # pylint: disable=invalid-name
    """(M1) on every triple ``H1, H2 ≤ K`` in generator form, plus ``samples`` random squares.

    Without ``rng`` the squares are drawn from a generator seeded with the default seed.
    """
    report = CheckReport("M1")
    subs = data.subgroups
    for K in subs:
        inside = [H for H in subs if H.is_subgroup_of(K)]
        for H1 in inside:
            for H2 in inside:
                left, right = m1_generator_sides(data, H1, H2, K)
                report.compare("double coset formula", {"H1": H1, "H2": H2, "K": K}, left, right)
    if samples:
        if rng is None:
            rng = np.random.default_rng(SEED)
        report.extend(check_m1_squares(data, rng, samples))
    L.info("M1: %d checks, %d failures", report.checked, report.failure_count)
    return report


def check_m1_squares(data, rng, samples):
    """Full (M1), ``φ^* ∘ ψ_* = Ψ_* ∘ Φ^*``, on random pullback squares of transitive G-sets."""
    report = CheckReport("M1 squares")
    subs = data.subgroups
    attempts = 0
    while report.checked < samples and attempts < 20 * samples:
        attempts += 1
        H1, H2, K = (subs[int(i)] for i in rng.choice(len(subs), size=3))
        psis, phis = orbit_maps(H1, K), orbit_maps(H2, K)
        if not psis or not phis:
            continue
        psi = psis[int(rng.integers(len(psis)))]
        phi = phis[int(rng.integers(len(phis)))]
        _, Psi, Phi = pullback(psi, phi)
        left = contravariant(data, phi) @ covariant(data, psi)
        right = additive_covariant(data, Psi) @ additive_contravariant(data, Phi)
        instance = {"psi": psi, "phi": phi, "H1": H1, "H2": H2, "K": K}
        report.compare("pullback square", instance, left, right)
    return report


def check_conjugation_invariance(data):
    """``con(z, H) = id`` for every ``z ∈ C_G(H)``, and the orbit-category consequence.

    Maps ``G/H1 → G/H2`` inducing the same conjugation class must induce equal maps.
    """
    report = CheckReport("conjugation invariance")
    group = data.group
    subs = data.subgroups
    for H in subs:
        ident = AbHom.identity(data.value(H))
        for z in centralizer(group.full, H):
            instance = {"H": H, "z": z}
            report.compare("centralizer acts trivially", instance, data.conjugation(z, H), ident)
    for H1 in subs:
        for H2 in subs:
            maps = orbit_maps(H1, H2)
            for a, f1 in enumerate(maps):
                for f2 in maps[a + 1 :]:
                    if not same_conjugation_class(f1, f2):
                        continue
                    instance = {"f1": f1, "f2": f2, "H1": H1, "H2": H2}
                    report.compare(
                        "equal conjugation, covariant",
                        instance,
                        covariant(data, f1),
                        covariant(data, f2),
                    )
                    report.compare(
                        "equal conjugation, contravariant",
                        instance,
                        contravariant(data, f1),
                        contravariant(data, f2),
                    )
    L.info("conjugation invariance: %d checks, %d failures", report.checked, report.failure_count)
    return report


def check_orbit_lemma(group, subgroups):
    """On every pair of maps: ``c_{f1} = c_{f2}`` iff some ``g1 h g2⁻¹`` centralizes the source."""
    report = CheckReport("orbit lemma")
    for H1 in subgroups:
        for H2 in subgroups:
            maps = orbit_maps(H1, H2)
            for f1 in maps:
                for f2 in maps:
                    same = same_conjugation_class(f1, f2)
                    found = centralizing_element(f1, f2) is not None
                    report.record(same == found, "lemma", {"f1": f1, "f2": f2}, same, found)
    L.info("orbit lemma on %s: %d pairs", group.label, report.checked)
    return report
