"""Task tests."""

import json
from collections import Counter

import luigi
import numpy as np
from luigi import Task
from luigi_tools.util import set_luigi_config

from mackey_bisets.group.catalog import build_group
from mackey_bisets.mackey.check import CheckReport
from mackey_bisets.parameter import GroupSpecParameter
from mackey_bisets.task import (
    AcceptanceSuite,
    CompositionSweep,
    ConjugationClosureSweep,
    FactorizationSweep,
    GroupSweep,
    InvolutionSweep,
    MackeyVerification,
    NegationControl,
    OrbitLemmaSweep,
    PullbackSweep,
    composable_pairs,
)


class _FailingSweep(GroupSweep):
    def sweep(self):
        report = CheckReport("always fails")
        report.record(False, "forced", {"group": self.label()})
        return report


def _report(path):
    return json.loads(path.read_text(encoding="utf-8"))["report"]


def test_group_spec_param_with_cfg():
    """Test group specs given by name or JSON in cfg."""

    class _TestTask(Task):
        group = GroupSpecParameter()

    with set_luigi_config({"_TestTask": {"group": "C2xC2"}}, configfile="tmp_luigi.cfg"):
        task = _TestTask()
        assert task.group["kind"] == "product"
        assert [f["n"] for f in task.group["factors"]] == [2, 2]
    with set_luigi_config(
        {"_TestTask": {"group": '{"n": 3, "kind": "cyclic"}'}}, configfile="tmp_luigi.cfg"
    ):
        task = _TestTask()
        assert task.group == {"kind": "cyclic", "n": 3}
        assert GroupSpecParameter().serialize(task.group) == '{"kind": "cyclic", "n": 3}'


def test_composable_pairs():
    """Test exhaustive and sampled enumeration of composable pairs."""
    c2 = build_group({"kind": "cyclic", "n": 2})
    pairs = list(composable_pairs(c2, True))
    # one key over (e,e), (C2,e) and (e,C2), two over (C2,C2)
    assert len(pairs) == 2 * 2 + 3 * 3
    for b, a in pairs:
        assert b.H1 == a.H2
    sampled = list(composable_pairs(c2, False, np.random.default_rng(0), 7))
    assert len(sampled) == 7


def test_sweeps(tmp_path):
    """Test the sweeps on small groups write passing reports."""
    with set_luigi_config({"DEFAULT": {"path-prefix": str(tmp_path)}}, configfile="tmp_luigi.cfg"):
        tasks = [
            CompositionSweep(group="C2"),
            FactorizationSweep(group="S3"),
            InvolutionSweep(group="C2xC2"),
            PullbackSweep(group="C2"),
            OrbitLemmaSweep(group="S3"),
            ConjugationClosureSweep(group="C2"),
            MackeyVerification(group="C2", functoriality=True),
            NegationControl(),
        ]
        assert luigi.build(tasks, local_scheduler=True)
    report = _report(tmp_path / "CompositionSweep" / "C2" / "report.json")
    assert report["verdict"] == "pass"
    assert report["checked"] == 13
    negation = _report(tmp_path / "NegationControl" / "C2-Z3" / "report.json")
    assert negation["failure_count"] == 0


def test_sampled_sweep(tmp_path):
    """Test groups above the exhaustive order are sampled."""
    with set_luigi_config(
        {
            "DEFAULT": {"path-prefix": str(tmp_path)},
            "SweepCfg": {"max_exhaustive_order": "2", "sample_pairs": "5", "seed": "7"},
        },
        configfile="tmp_luigi.cfg",
    ):
        task = CompositionSweep(group="S3")
        assert not task.exhaustive
        assert luigi.build([task], local_scheduler=True)
    assert _report(tmp_path / "CompositionSweep" / "S3" / "report.json")["checked"] == 5


def test_failing_sweep(tmp_path):
    """Test counterexamples are written next to the target and the task fails."""
    with set_luigi_config({"DEFAULT": {"path-prefix": str(tmp_path)}}, configfile="tmp_luigi.cfg"):
        task = _FailingSweep(group="C2")
        assert not luigi.build([task], local_scheduler=True)
        assert not task.complete()
    failed = tmp_path / "_FailingSweep" / "C2" / "report.failed.json"
    report = _report(failed)
    assert report["failure_count"] == 1
    assert report["failures"][0]["instance"] == {"group": "C2"}


def test_acceptance_pullbacks_cover_small_groups(tmp_path):
    """Test the pullback sweeps cover every isomorphism type up to order 12."""
    with set_luigi_config({"DEFAULT": {"path-prefix": str(tmp_path)}}, configfile="tmp_luigi.cfg"):
        sweeps = [t for t in AcceptanceSuite().requires() if isinstance(t, PullbackSweep)]
    labels = {t.label() for t in sweeps}
    assert {"C12", "D5", "D6", "C2xC6", "C3xC3", "C2xC2xC2", "perm7"} <= labels
    orders = Counter(t.finite_group.order for t in sweeps)
    assert orders == {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5}
    dicyclic = next(t.finite_group for t in sweeps if t.label() == "perm7")
    involutions = [g for g in range(12) if dicyclic.element_order(g) == 2]
    assert len(involutions) == 1
