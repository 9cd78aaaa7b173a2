# SPDX-License-Identifier: Apache-2.0

"""Command line interface.

Exit codes: 0 ok, 2 malformed input, 3 oracle mismatch, 4 not conjugation invariant,
5 axiom failure.
"""

import functools
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import click
import numpy as np
import pandas as pd

from mackey_bisets import __version__
from mackey_bisets.biset.compose import bruteforce_keys, compose_formula, formula_matches_oracle
from mackey_bisets.biset.factor import classify, factorize, indecomposable_keys, recompose
from mackey_bisets.biset.standard import StandardRep, transpose
from mackey_bisets.category.gset import GMap, pullback, pullbacks_agree
from mackey_bisets.exception import MackeyBisetsError, NotConjugationInvariantError
from mackey_bisets.group.catalog import build_group, cayley_invariants, parse_group_arg, spec_label
from mackey_bisets.group.cosets import (
    centralizer,
    conjugacy_class_index,
    enumerate_subgroups,
    subgroup_conjugacy_classes,
)
from mackey_bisets.mackey.check import (
    CheckReport,
    check_conjugation_invariance,
    check_M1,
    check_M2,
    validate_structure,
)
from mackey_bisets.mackey.data import dump_mackey, load_mackey
from mackey_bisets.mackey.examples import burnside_example, negation_example, zero_example
from mackey_bisets.mackey.functor import (
    build_F,
    differences,
    mackey_from_functor,
    verify_functoriality,
    verify_generator_agreement,
)
from mackey_bisets.settings import M1_SQUARES, SEED, L
from mackey_bisets.util import load_json_arg, parse_subgroup_label, to_jsonable, to_str

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_ORACLE = 3
EXIT_NOT_INVARIANT = 4
EXIT_AXIOM = 5

EXAMPLES = ("burnside", "fixedpoint-c2-z3", "zero")


@dataclass(frozen=True)
class Options:
    """Global options shared by every subcommand."""

    fmt: str = "json"
    oracle: bool = False
    seed: int = SEED


def _guard(func):
    """Map domain exceptions to exit codes."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except NotConjugationInvariantError as e:
            click.echo(f"Error: {e}", err=True)
            ctx.exit(EXIT_NOT_INVARIANT)
        except (MackeyBisetsError, ValueError) as e:
            click.echo(f"Error: {e}", err=True)
            ctx.exit(EXIT_MALFORMED)
        return None

    return wrapper


def _emit(payload, rows=None):
    """JSON by default; ``rows`` rendered through pandas with ``--format table``."""
    options = click.get_current_context().find_object(Options)
    if options is not None and options.fmt == "table" and rows is not None:
        click.echo(pd.DataFrame(to_jsonable(rows)).to_string(index=False))
    else:
        click.echo(to_str(payload, indent=2))


def _group(value):
    spec = parse_group_arg(value)
    return spec, build_group(spec)


def _rep(group, value):
    return StandardRep.from_json(group, load_json_arg(value))


def _subgroup(group, value):
    return group.subgroup(parse_subgroup_label(value))


def _rep_payload(rep):
    return {"rep": rep, "key": rep.key}


def _report_rows(reports):
    return [
        {
            "check": r.name,
            "verdict": r.verdict,
            "checked": r.checked,
            "failures": r.failure_count,
        }
        for r in reports
    ]


@click.group()
@click.version_option(__version__)
@click.option(
    "--format", "fmt", type=click.Choice(["json", "table"]), default="json", show_default=True
)
@click.option("--oracle", is_flag=True, help="Cross-check against brute-force oracles.")
@click.option("--seed", type=int, default=SEED, show_default=True, help="Seed of sampled sweeps.")
@click.pass_context
def cli(ctx, fmt, oracle, seed):
    """Finite group bisets, the Burnside category and Mackey functors."""
    ctx.obj = Options(fmt, oracle, seed)


@cli.command("group")
@click.argument("spec")
@_guard
def cmd_group(spec):
    """Order, subgroups with centralizers and conjugacy classes of subgroups of SPEC."""
    spec, group = _group(spec)
    classes = subgroup_conjugacy_classes(group.full)
    index = conjugacy_class_index(group.full)
    subgroups = [
        {
            "elements": H,
            "order": H.order,
            "centralizer": centralizer(group.full, H),
            "normal": H.is_normal_in(group.full),
            "class": index[H],
        }
        for H in enumerate_subgroups(group)
    ]
    payload = {
        "group": spec_label(spec),
        "spec": spec,
        **cayley_invariants(group),
        "subgroups": subgroups,
        "conjugacy_classes": [list(members) for members in classes],
        "class_count": len(classes),
    }
    _emit(payload, subgroups)


@cli.command("subgroups")
@click.argument("spec")
@_guard
def cmd_subgroups(spec):
    """Subgroups of SPEC in canonical order."""
    _, group = _group(spec)
    index = conjugacy_class_index(group.full)
    rows = [
        {"elements": H, "order": H.order, "class": index[H]} for H in enumerate_subgroups(group)
    ]
    _emit(rows, rows)


def _sweep(group, samples, seed):
    """Random composable pairs of indecomposable keys checked against the balanced product."""
    rng = np.random.default_rng(seed)
    subs = enumerate_subgroups(group)
    report = CheckReport("composition oracle")
    for _ in range(samples):
        H3, H2, H1 = (subs[int(i)] for i in rng.choice(len(subs), size=3))
        left, right = indecomposable_keys(H3, H2), indecomposable_keys(H2, H1)
        b = left[int(rng.integers(len(left)))]
        a = right[int(rng.integers(len(right)))]
        report.record(formula_matches_oracle(b.rep, a.rep), "composition", {"rep2": b, "rep1": a})
    L.info("composition sweep on %s: %d pairs", group.label, report.checked)
    return report


@cli.command("compose")
@click.option("--group", "group_arg", required=True, help="GroupSpec JSON or catalog name.")
@click.option("--sweep", type=int, default=None, help="Run a random oracle sweep of N pairs.")
@click.argument("rep2", required=False)
@click.argument("rep1", required=False)
@click.pass_obj
@_guard
def cmd_compose(options, group_arg, sweep, rep2, rep1):
    """Components of REP2 ∘ REP1 by the double coset formula."""
    _, group = _group(group_arg)
    if sweep is not None:
        report = _sweep(group, sweep, options.seed)
        _emit(report, _report_rows([report]))
        if not report.passed:
            click.get_current_context().exit(EXIT_ORACLE)
        return
    if rep2 is None or rep1 is None:
        raise click.UsageError("compose needs REP2 and REP1 unless --sweep is given")
    second, first = _rep(group, rep2), _rep(group, rep1)
    components = compose_formula(second, first)
    payload = {"components": [_rep_payload(rep) for rep in components]}
    agree = True
    if options.oracle:
        expected = bruteforce_keys(second, first)
        agree = Counter(rep.key for rep in components) == expected
        payload["oracle"] = agree
    _emit(payload, [{"L": r.L, "K": r.K, "key": r.key} for r in components])
    if not agree:
        click.get_current_context().exit(EXIT_ORACLE)


@cli.command("factorize")
@click.option("--group", "group_arg", required=True, help="GroupSpec JSON or catalog name.")
@click.argument("rep")
@_guard
def cmd_factorize(group_arg, rep):
    """Induction, isomorphism and restriction factors of REP."""
    _, group = _group(group_arg)
    rep = _rep(group, rep)
    parts = factorize(rep)
    factors = {}
    for name in ("ind", "iso", "res"):
        factor = getattr(parts, name)
        verdict = classify(factor)
        factors[name] = {
            **_rep_payload(factor),
            "classification": verdict,
            "verdict": "conjugation" if verdict.conjugation else "not conjugation",
        }
    recomposes = recompose(parts) == Counter({rep.key: 1})
    payload = {
        **_rep_payload(rep),
        "factors": factors,
        "realizing": parts.realizing,
        "recomposes": recomposes,
    }
    rows = [
        {"factor": name, "key": f["key"], "verdict": f["verdict"]} for name, f in factors.items()
    ]
    _emit(payload, rows)
    if not recomposes:
        click.get_current_context().exit(EXIT_AXIOM)


@cli.command("transpose")
@click.option("--group", "group_arg", required=True, help="GroupSpec JSON or catalog name.")
@click.argument("rep")
@_guard
def cmd_transpose(group_arg, rep):
    """Opposite biset of REP."""
    _, group = _group(group_arg)
    rep = _rep(group, rep)
    opposite = transpose(rep)
    payload = {**_rep_payload(opposite), "involution": transpose(opposite).key == rep.key}
    _emit(payload, [{"key": opposite.key}])


@cli.command("pullback")
@click.option("--group", "group_arg", required=True, help="GroupSpec JSON or catalog name.")
@click.option("--h1", required=True, help="Source of psi, as [i,j,...].")
@click.option("--h2", required=True, help="Source of phi, as [i,j,...].")
@click.option("--k", "k", required=True, help="Common target, as [i,j,...].")
@click.option("--g1", type=int, default=None, help="Witness of psi, identity by default.")
@click.option("--g2", type=int, default=None, help="Witness of phi, identity by default.")
@click.pass_obj
@_guard
def cmd_pullback(options, group_arg, h1, h2, k, g1, g2):
    """Pullback of psi: G/H1 → G/K and phi: G/H2 → G/K."""
    _, group = _group(group_arg)
    H1, H2, K = (_subgroup(group, value) for value in (h1, h2, k))
    psi = GMap.single(H1, K, group.identity if g1 is None else g1)
    phi = GMap.single(H2, K, group.identity if g2 is None else g2)
    S, Psi, Phi = pullback(psi, phi)
    payload = {
        "orbits": list(S.orbits),
        "sizes": list(S.sizes),
        "points": S.size,
        "Psi": Psi,
        "Phi": Phi,
    }
    agree = True
    if options.oracle:
        agree = pullbacks_agree(psi, phi)
        payload["oracle"] = agree
    _emit(payload, [{"stabilizer": H, "size": n} for H, n in zip(S.orbits, S.sizes)])
    if not agree:
        click.get_current_context().exit(EXIT_ORACLE)


def _mackey_data(data, example, group_arg):
    """Mackey data from a built-in example or a JSON document."""
    if example == "burnside":
        return burnside_example(group_arg)
    if example == "fixedpoint-c2-z3":
        return negation_example()
    if example == "zero":
        return zero_example(group_arg)
    if data is None:
        raise click.UsageError("give a DATA document or --example")
    if not data.startswith(("@", "{")) and Path(data).exists():
        data = "@" + data
    return load_mackey(load_json_arg(data))


def _mackey_options(func):
    func = click.option(
        "--group", "group_arg", default="S3", show_default=True, help="Group of the example."
    )(func)
    func = click.option("--example", type=click.Choice(EXAMPLES), default=None)(func)
    return click.argument("data", required=False)(func)


@cli.group("mackey")
def cmd_mackey():
    """Mackey functor verification."""


@cmd_mackey.command("check")
@_mackey_options
@click.option(
    "--squares",
    type=int,
    default=M1_SQUARES,
    show_default=True,
    help="Random pullback squares for M1.",
)
@click.pass_obj
@_guard
def cmd_mackey_check(options, data, example, group_arg, squares):
    """Structure, M1, M2 and conjugation invariance of DATA."""
    data = _mackey_data(data, example, group_arg)
    rng = np.random.default_rng(options.seed)
    axioms = [
        validate_structure(data),
        check_M2(data, rng),
        check_M1(data, rng, samples=squares),
    ]
    invariance = check_conjugation_invariance(data)
    reports = axioms + [invariance]
    if not all(r.passed for r in axioms):
        verdict, code = "axiom failure", EXIT_AXIOM
    elif not invariance.passed:
        verdict, code = "not conjugation invariant", EXIT_NOT_INVARIANT
    else:
        verdict, code = "pass", EXIT_OK
    payload = {"group": spec_label(data.spec), "verdict": verdict, "reports": reports}
    _emit(payload, _report_rows(reports))
    if code:
        click.get_current_context().exit(code)


@cmd_mackey.command("factor")
@_mackey_options
@_guard
def cmd_mackey_factor(data, example, group_arg):
    """Factor DATA through conjugation bisets and verify the factorization."""
    data = _mackey_data(data, example, group_arg)
    try:
        functor = build_F(data)
    except NotConjugationInvariantError as e:
        payload = {"verdict": "refused", "reason": str(e), "report": e.report}
        _emit(payload, _report_rows([e.report]))
        click.echo(f"Error: {e}", err=True)
        click.get_current_context().exit(EXIT_NOT_INVARIANT)
        return
    reports = [verify_functoriality(functor, data), verify_generator_agreement(functor, data)]
    round_trip = differences(mackey_from_functor(functor), data)
    passed = all(r.passed for r in reports) and not round_trip
    payload = {
        "group": spec_label(data.spec),
        "verdict": "pass" if passed else "fail",
        "keys_evaluated": functor.evaluated,
        "pairs_checked": reports[0].checked,
        "agreement_checked": reports[1].checked,
        "round_trip_differences": round_trip,
        "reports": reports,
    }
    _emit(payload, _report_rows(reports))
    if not passed:
        click.get_current_context().exit(EXIT_AXIOM)


@cli.group("burnside")
def cmd_burnside():
    """Burnside functor."""


@cmd_burnside.command("emit")
@click.option("--group", "group_arg", required=True, help="GroupSpec JSON or catalog name.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@_guard
def cmd_burnside_emit(group_arg, output):
    """Mackey data JSON of the Burnside functor."""
    text = to_str(dump_mackey(burnside_example(group_arg)), indent=2)
    if output is None:
        click.echo(text)
    else:
        Path(output).write_text(text, encoding="utf-8")
        L.info("Burnside data written to %s", output)


def main():
    """Console entry point."""
    cli()  # pylint: disable=no-value-for-parameter
