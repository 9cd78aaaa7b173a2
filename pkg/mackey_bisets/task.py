# SPDX-License-Identifier: Apache-2.0

"""Verification sweeps as luigi tasks.

**Usage**:

.. code-block:: bash

    luigi --module mackey_bisets.task AcceptanceSuite --local-scheduler

Every task writes a JSON report under ``path-prefix``; a report with counterexamples is written
next to the target with a ``.failed`` suffix and the task fails with :class:`SweepFailure`.
"""

import itertools
from collections import Counter
from pathlib import Path

import numpy as np
from luigi import BoolParameter, Config, IntParameter, LocalTarget, Parameter, Task, WrapperTask
from luigi.util import inherits

from mackey_bisets.biset.compose import compose_formula, formula_matches_oracle
from mackey_bisets.biset.factor import (
    all_subgroup_pairs,
    conjugation_keys,
    factorize,
    indecomposable_keys,
    is_conjugation,
    recompose,
    transpose_composition_keys,
)
from mackey_bisets.biset.standard import transpose_key
from mackey_bisets.category.gset import orbit_maps, pullbacks_agree
from mackey_bisets.exception import NotConjugationInvariantError, SweepFailure
from mackey_bisets.group.catalog import build_group, parse_group_arg, spec_label
from mackey_bisets.group.cosets import enumerate_subgroups
from mackey_bisets.mackey.check import (
    CheckReport,
    check_conjugation_invariance,
    check_M1,
    check_M2,
    check_orbit_lemma,
    validate_structure,
)
from mackey_bisets.mackey.examples import burnside_example, negation_example
from mackey_bisets.mackey.functor import (
    build_F,
    differences,
    mackey_from_functor,
    verify_functoriality,
    verify_generator_agreement,
)
from mackey_bisets.parameter import GroupSpecParameter
from mackey_bisets.settings import (
    CLOSURE_GROUPS,
    EXHAUSTIVE_GROUPS,
    FACTORIZATION_GROUPS,
    FUNCTORIALITY_GROUPS,
    INVOLUTION_GROUPS,
    LEMMA_GROUPS,
    M1_SQUARES,
    MACKEY_GROUPS,
    PULLBACK_GROUPS,
    PULLBACK_MAX_ORDER,
    REPORT_JSON,
    SAMPLED_GROUPS,
    SEED,
    L,
)
from mackey_bisets.util import to_str


class OutputCfg(Config):
    """Common configuration for tasks producing output at the specified file system location."""

    path_prefix = Parameter(
        config_path={"section": "DEFAULT", "name": "path-prefix"},
        description="Default value can be provided in the `DEFAULT` cfg file section.",
    )  #:


class SweepCfg(Config):
    """Sampling configuration shared by the sweeps."""

    seed = IntParameter(
        default=SEED,
        config_path={"section": "SweepCfg", "name": "seed"},
        description="Seed of the sampled sweeps.",
    )  #:
    sample_pairs = IntParameter(
        default=1000,
        config_path={"section": "SweepCfg", "name": "sample_pairs"},
        description="Composable pairs drawn when a sweep is not exhaustive.",
    )  #:
    sample_squares = IntParameter(
        default=M1_SQUARES,
        config_path={"section": "SweepCfg", "name": "sample_squares"},
        description="Random pullback squares for M1.",
    )  #:
    max_exhaustive_order = IntParameter(
        default=8,
        config_path={"section": "SweepCfg", "name": "max_exhaustive_order"},
        description="Groups up to this order are swept exhaustively.",
    )  #:


def composable_pairs(group, exhaustive, rng=None, samples=0, keys=indecomposable_keys):
    """Pairs ``(b, a)`` of canonical keys with ``b ∘ a`` defined.

    Every pair over every subgroup triple when ``exhaustive``, else ``samples`` random ones.
    """
    subs = enumerate_subgroups(group)
    if exhaustive:
        for H3, H2, H1 in itertools.product(subs, repeat=3):
            right = keys(H2, H1)
            for b in keys(H3, H2):
                for a in right:
                    yield b, a
        return
    drawn = 0
    while drawn < samples:
        H3, H2, H1 = (subs[int(i)] for i in rng.choice(len(subs), size=3))
        left, right = keys(H3, H2), keys(H2, H1)
        if not left or not right:
            continue
        drawn += 1
        yield left[int(rng.integers(len(left)))], right[int(rng.integers(len(right)))]


@inherits(OutputCfg, SweepCfg)
class ReportTask(Task):
    """Base of the sweeps: run :meth:`sweep` and write its :class:`CheckReport`."""

    def label(self):
        """Directory name of the report."""
        return "default"

    def sweep(self):
        """Compute the report."""
        raise NotImplementedError

    def run(self):
        """"""
        report = self.sweep()
        doc = to_str({"task": self.task_id, "report": report}, indent=2)
        path = Path(self.output().path)
        path.parent.mkdir(parents=True, exist_ok=True)
        if not report.passed:
            failed = path.with_suffix(".failed.json")
            failed.write_text(doc, encoding="utf-8")
            L.warning("%s: %d failures, see %s", self.task_id, report.failure_count, failed)
            raise SweepFailure(f"{self.task_id}: {report.failure_count} failures")
        with self.output().open("w") as fd:
            fd.write(doc)

    def output(self):
        """:class:`LocalTarget<luigi.LocalTarget>` under ``path_prefix``."""
        return LocalTarget(
            str(Path(self.path_prefix) / self.get_task_family() / self.label() / REPORT_JSON)
        )


class GroupSweep(ReportTask):
    """Sweep over one group."""

    group = GroupSpecParameter(description="GroupSpec JSON or catalog name.")  #:

    def label(self):
        """Catalog label of the group."""
        return spec_label(self.group)

    @property
    def finite_group(self):
        """Group the sweep runs on."""
        return build_group(self.group)

    @property
    def exhaustive(self):
        """``True`` when the group is small enough to sweep every pair."""
        return self.finite_group.order <= self.max_exhaustive_order

    def rng(self):
        """Fresh generator seeded from the configuration."""
        return np.random.default_rng(self.seed)


class CompositionSweep(GroupSweep):
    """Double coset formula against the balanced product of the realized bisets."""

    def sweep(self):
        """"""
        report = CheckReport("composition")
        pairs = composable_pairs(self.finite_group, self.exhaustive, self.rng(), self.sample_pairs)
        for b, a in pairs:
            report.record(formula_matches_oracle(b.rep, a.rep), "composition", {"b": b, "a": a})
        L.info("composition on %s: %d pairs", self.label(), report.checked)
        return report


class FactorizationSweep(GroupSweep):
    """Recomposing ``ind ∘ iso ∘ res`` gives back every indecomposable key."""

    def sweep(self):
        """"""
        report = CheckReport("factorization")
        for H2, H1 in all_subgroup_pairs(self.finite_group):
            for key in indecomposable_keys(H2, H1):
                recomposed = recompose(factorize(key.rep))
                report.record(recomposed == Counter({key: 1}), "recompose", {"key": key})
        return report


class InvolutionSweep(GroupSweep):
    """``τ ∘ τ = id`` and ``τ(b ∘ a) = τ(a) ∘ τ(b)`` on keys."""

    def sweep(self):
        """"""
        report = CheckReport("involution")
        for H2, H1 in all_subgroup_pairs(self.finite_group):
            for key in indecomposable_keys(H2, H1):
                report.record(transpose_key(transpose_key(key)) == key, "double", {"key": key})
        pairs = composable_pairs(self.finite_group, self.exhaustive, self.rng(), self.sample_pairs)
        for b, a in pairs:
            lhs, rhs = transpose_composition_keys(b.rep, a.rep)
            report.record(lhs == rhs, "anti-multiplicative", {"b": b, "a": a})
        return report


class PullbackSweep(GroupSweep):
    """Double coset pullback against the brute-force fibre product, over all orbit maps."""

    def sweep(self):
        """"""
        report = CheckReport("pullback")
        subs = enumerate_subgroups(self.finite_group)
        for H1, H2, K in itertools.product(subs, repeat=3):
            phis = orbit_maps(H2, K)
            for psi in orbit_maps(H1, K):
                for phi in phis:
                    report.record(pullbacks_agree(psi, phi), "pullback", {"psi": psi, "phi": phi})
        L.info("pullbacks on %s: %d squares", self.label(), report.checked)
        return report


class OrbitLemmaSweep(GroupSweep):
    """Equal conjugation classes iff a centralizing element exists."""

    def sweep(self):
        """"""
        return check_orbit_lemma(self.finite_group, enumerate_subgroups(self.finite_group))


class ConjugationClosureSweep(GroupSweep):
    """Composites of conjugation bisets are sums of conjugation bisets."""

    def sweep(self):
        """"""
        report = CheckReport("conjugation closure")
        for b, a in composable_pairs(self.finite_group, True, keys=conjugation_keys):
            for rep in compose_formula(b.rep, a.rep):
                report.record(is_conjugation(rep), "closed", {"b": b, "a": a, "component": rep})
        return report


class MackeyVerification(GroupSweep):
    """Burnside functor: structure, M1, M2, conjugation invariance and, optionally, ``F``."""

    functoriality = BoolParameter(
        default=False, description="Also build F and check functoriality and agreement."
    )  #:

    def sweep(self):
        """"""
        data = burnside_example(self.group)
        rng = self.rng()
        report = CheckReport("mackey")
        report.extend(validate_structure(data))
        report.extend(check_M2(data, rng))
        report.extend(check_M1(data, rng, samples=self.sample_squares))
        report.extend(check_conjugation_invariance(data))
        if self.functoriality and report.passed:
            functor = build_F(data)
            report.extend(verify_functoriality(functor, data))
            report.extend(verify_generator_agreement(functor, data))
            round_trip = differences(mackey_from_functor(functor), data)
            report.record(not round_trip, "round trip", {"differences": round_trip})
        return report


class NegationControl(ReportTask):
    """``C2`` on ``Z/3`` by negation: Mackey, not conjugation invariant, refused."""

    def label(self):
        """"""
        return "C2-Z3"

    def sweep(self):
        """"""
        data = negation_example()
        report = CheckReport("negation control")
        report.extend(validate_structure(data))
        report.extend(check_M2(data))
        report.extend(check_M1(data))
        invariance = check_conjugation_invariance(data)
        report.record(not invariance.passed, "invariance fails", {}, invariance.failures)
        try:
            build_F(data)
            refused = False
        except NotConjugationInvariantError:
            refused = True
        report.record(refused, "factorization refused", {})
        return report


class AcceptanceSuite(WrapperTask):
    """Every acceptance sweep over the configured groups."""

    def requires(self):
        """"""
        small = [
            name
            for name in PULLBACK_GROUPS
            if build_group(parse_group_arg(name)).order <= PULLBACK_MAX_ORDER
        ]
        return (
            [CompositionSweep(group=name) for name in EXHAUSTIVE_GROUPS + SAMPLED_GROUPS]
            + [FactorizationSweep(group=name) for name in FACTORIZATION_GROUPS]
            + [InvolutionSweep(group=name) for name in INVOLUTION_GROUPS]
            + [PullbackSweep(group=name) for name in small]
            + [OrbitLemmaSweep(group=name) for name in LEMMA_GROUPS]
            + [ConjugationClosureSweep(group=name) for name in CLOSURE_GROUPS]
            + [
                MackeyVerification(group=name, functoriality=name in FUNCTORIALITY_GROUPS)
                for name in MACKEY_GROUPS
            ]
            + [NegationControl()]
        )
