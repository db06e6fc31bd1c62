"""Command-line interface: measurement construction, criterion sweeps,
noise thresholds, and partition bound tables.

Every output artifact carries the resolved configuration (a `# config =`
comment line in CSV, a "config" field in JSON), and numeric output uses
12 significant digits, so repeated runs diff cleanly.
"""

from __future__ import annotations

import json
import sys
from typing import Optional

import click
import numpy as np

from .basis import InformationalCompletenessError, gell_mann_basis
from .criteria import (
    NonMonotoneIndicatorError,
    evaluate,
    threshold_p,
)
from .infoquant import VARIANCE, MonotoneFunctionSpec
from .partitions import (
    BoundInputs,
    bound_i,
    bound_v,
    closed_form_m,
    enumerate_kstretch,
    max_sum_squares,
    young_diagram,
)
from .povm import PositivityError, build_stpovm, certification_residuals, r_range, \
    build_b_operators
from .states import antisymmetric_state, ghz_qudit, load_state_file

CSV_HEADER = ("N,k,d,s,t,r,f,p,lhs_skew,i_bound,violated_skew,"
              "lhs_var,v_bound,violated_var,m_source")


def fmt(x) -> str:
    """Fixed 12-significant-digit numeric formatting; empty for None."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def parse_f(value: str) -> list:
    """Parse --f into a list of quantities (specs and/or VARIANCE)."""
    if value == "all":
        return [MonotoneFunctionSpec("qfi"), MonotoneFunctionSpec("wyd", 0.5),
                VARIANCE]
    if value == "qfi":
        return [MonotoneFunctionSpec("qfi")]
    if value.startswith("wyd"):
        omega = float(value.split(":", 1)[1]) if ":" in value else 0.5
        return [MonotoneFunctionSpec("wyd", omega)]
    if value == VARIANCE:
        return [VARIANCE]
    raise click.BadParameter(f"unknown quantity {value!r}")


def _apply_config(ctx: click.Context, config_path: Optional[str]) -> None:
    """Flags left at their defaults are overridden by the config file."""
    if config_path is None:
        return
    with open(config_path) as fh:
        overrides = json.load(fh)
    for name, value in overrides.items():
        if name == "config":
            continue
        if name not in ctx.params:
            raise click.BadParameter(f"unknown config key {name!r}")
        source = ctx.get_parameter_source(name)
        if source is click.core.ParameterSource.DEFAULT:
            if isinstance(ctx.params[name], tuple) and not isinstance(value, (list, tuple)):
                value = (value,)
            elif isinstance(value, list):
                value = tuple(value)
            ctx.params[name] = value


def _config_echo(params: dict) -> dict:
    return {k: (list(v) if isinstance(v, tuple) else v)
            for k, v in sorted(params.items()) if k != "config"}


def _build_measurement(d: int, s: int, t: int, r: str):
    basis = gell_mann_basis(d)
    r_val = r if r == "max" else float(r)
    return build_stpovm(basis, s, t, r_val)


def _family(name: str, d: int, n: int, state_file: Optional[str]):
    if name == "ghz":
        return ghz_qudit(d, n)
    if name == "antisym":
        return antisymmetric_state(n)
    if name == "file":
        if state_file is None:
            raise click.BadParameter("--state-file is required for --family file")
        return load_state_file(state_file)
    raise click.BadParameter(f"unknown family {name!r}")


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@click.group()
def main():
    """Symmetric-measurement construction and k-nonstretchability detection."""


@main.command("povm")
@click.option("--d", type=int, required=True)
@click.option("--s", type=int, required=True)
@click.option("--t", type=int, required=True)
@click.option("--r", default="max", show_default=True)
@click.option("--output", type=click.Path(), default=None,
              help="Write the measurement as JSON to this path.")
@click.option("--config", "config", type=click.Path(exists=True), default=None)
@click.pass_context
def cmd_povm(ctx, d, s, t, r, output, config):
    """Build an informationally complete (s,t)-POVM and certify it."""
    _apply_config(ctx, config)
    d, s, t, r = ctx.params["d"], ctx.params["s"], ctx.params["t"], ctx.params["r"]
    output = ctx.params["output"]
    try:
        basis = gell_mann_basis(d)
        from .basis import group_basis
        grouped = group_basis(basis, s, t)
        b_ops = build_b_operators(grouped)
        r_neg, r_pos = r_range(b_ops)
        m = _build_measurement(d, s, t, r)
    except (InformationalCompletenessError, PositivityError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    click.echo(f"(s,t)-POVM d={d} s={s} t={t} r={fmt(m.r)} chi={fmt(m.chi)}")
    click.echo(f"r range: [{fmt(r_neg)}, {fmt(r_pos)}]")
    click.echo("certification:")
    failed = False
    res = certification_residuals(m)
    for key, val in res.items():
        ok = val >= -1e-10 if key == "min_effect_eigenvalue" else val <= 1e-10
        failed |= not ok
        click.echo(f"  {key:24s} {fmt(val):>18s}  {'pass' if ok else 'FAIL'}")
    if output:
        doc = m.to_json_dict()
        doc["config"] = _config_echo(ctx.params)
        with open(output, "w") as fh:
            json.dump(doc, fh)
        click.echo(f"wrote {output}")
    sys.exit(1 if failed else 0)


def _p_values(p: tuple[float, ...], p_range: Optional[str]) -> list[float]:
    if p_range:
        start, stop, count = p_range.split(":")
        return [float(x) for x in np.linspace(float(start), float(stop), int(count))]
    if p:
        return sorted(float(x) for x in p)
    raise click.BadParameter("provide --p or --p-range")


@main.command("criteria")
@click.option("--family", type=click.Choice(["ghz", "antisym", "file"]), default="ghz",
              show_default=True)
@click.option("--state-file", type=click.Path(exists=True), default=None)
@click.option("--d", type=int, default=3, show_default=True)
@click.option("--n", "--N", "n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--s", type=int, default=1, show_default=True)
@click.option("--t", type=int, default=9, show_default=True)
@click.option("--r", default="max", show_default=True)
@click.option("--p", type=float, multiple=True)
@click.option("--p-range", default=None, help="START:STOP:COUNT grid of p values.")
@click.option("--f", "f_choice", default="all", show_default=True,
              help="qfi | wyd[:omega] | variance | all")
@click.option("--m-source", type=click.Choice(["enumeration", "closed_form"]),
              default="enumeration", show_default=True)
@click.option("--format", "out_format", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.option("--output", type=click.Path(), default=None)
@click.option("--config", "config", type=click.Path(exists=True), default=None)
@click.pass_context
def cmd_criteria(ctx, family, state_file, d, n, k, s, t, r, p, p_range, f_choice,
                 m_source, out_format, output, config):
    """Evaluate both detection inequalities over a sweep of noise values."""
    _apply_config(ctx, config)
    pr = ctx.params
    try:
        fam = _family(pr["family"], pr["d"], pr["n"], pr["state_file"])
        m = _build_measurement(fam.d, pr["s"], pr["t"], pr["r"])
        quantities = parse_f(pr["f_choice"])
        p_values = _p_values(pr["p"], pr["p_range"])
    except (InformationalCompletenessError, PositivityError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    reports = []
    for p_val in p_values:
        for quantity in quantities:
            f_spec = None if quantity == VARIANCE else quantity
            reports.append(evaluate(fam, m, f_spec, pr["k"], p=p_val,
                                    m_source=pr["m_source"]))
    cfg = _config_echo(pr)
    if pr["out_format"] == "json":
        text = json.dumps({"config": cfg,
                           "rows": [rep.to_json_dict() for rep in reports]},
                          indent=2) + "\n"
    else:
        lines = [f"# config = {json.dumps(cfg)}", CSV_HEADER]
        for rep in reports:
            lines.append(",".join([
                fmt(rep.n), fmt(rep.k), fmt(rep.d), fmt(rep.s), fmt(rep.t),
                fmt(rep.r), rep.f_label, fmt(rep.p), fmt(rep.lhs_skew),
                fmt(rep.i_bound), fmt(rep.violated_skew), fmt(rep.lhs_var),
                fmt(rep.v_bound), fmt(rep.violated_var), rep.m_source,
            ]))
        text = "\n".join(lines) + "\n"
    _emit(text, pr["output"])
    sys.exit(0)


@main.command("threshold")
@click.option("--family", type=click.Choice(["ghz", "antisym", "file"]), default="ghz",
              show_default=True)
@click.option("--state-file", type=click.Path(exists=True), default=None)
@click.option("--d", type=int, default=3, show_default=True)
@click.option("--n", "--N", "n", type=int, multiple=True, required=True)
@click.option("--k", type=int, default=None,
              help="Stretchability parameter; defaults to 3-N per sweep entry.")
@click.option("--s", type=int, default=1, show_default=True)
@click.option("--t", type=int, default=9, show_default=True)
@click.option("--r", default="max", show_default=True)
@click.option("--f", "f_choice", default="all", show_default=True)
@click.option("--m-source", type=click.Choice(["enumeration", "closed_form"]),
              default="enumeration", show_default=True)
@click.option("--format", "out_format", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.option("--output", type=click.Path(), default=None)
@click.option("--config", "config", type=click.Path(exists=True), default=None)
@click.pass_context
def cmd_threshold(ctx, family, state_file, d, n, k, s, t, r, f_choice, m_source,
                  out_format, output, config):
    """Solve for the smallest detectable noise weight per (N, criterion)."""
    _apply_config(ctx, config)
    pr = ctx.params
    rows = []
    try:
        quantities = parse_f(pr["f_choice"])
        for n_val in sorted(pr["n"]):
            fam = _family(pr["family"], pr["d"], n_val, pr["state_file"])
            m = _build_measurement(fam.d, pr["s"], pr["t"], pr["r"])
            k_val = pr["k"] if pr["k"] is not None else 3 - n_val
            for quantity in quantities:
                label = VARIANCE if quantity == VARIANCE else quantity.label
                criterion = "variance" if quantity == VARIANCE else "skew"
                p_star = threshold_p(fam, m, quantity, k_val,
                                     m_source=pr["m_source"])
                rows.append((n_val, k_val, label, criterion, p_star))
    except NonMonotoneIndicatorError as exc:
        click.echo(f"error: {exc}; grid = {exc.grid}", err=True)
        sys.exit(1)
    except (InformationalCompletenessError, PositivityError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    cfg = _config_echo(pr)
    if pr["out_format"] == "json":
        text = json.dumps({
            "config": cfg,
            "rows": [{"N": nv, "k": kv, "f": lb, "criterion": cr,
                      "p_star": ps} for nv, kv, lb, cr, ps in rows],
        }, indent=2) + "\n"
    else:
        lines = [f"# config = {json.dumps(cfg)}", "N,k,f,criterion,p_star"]
        for nv, kv, lb, cr, ps in rows:
            lines.append(",".join([fmt(nv), fmt(kv), lb, cr,
                                   fmt(ps) if ps is not None else "NONE"]))
        text = "\n".join(lines) + "\n"
    _emit(text, pr["output"])
    sys.exit(0)


@main.command("partitions")
@click.option("--n", "--N", "n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--d", type=int, default=3, show_default=True)
@click.option("--s", type=int, default=1, show_default=True)
@click.option("--t", type=int, default=9, show_default=True)
@click.option("--r", default="max", show_default=True)
@click.option("--diagrams", is_flag=True, default=False)
@click.option("--config", "config", type=click.Path(exists=True), default=None)
@click.pass_context
def cmd_partitions(ctx, n, k, d, s, t, r, diagrams, config):
    """Enumerate k-stretchable partitions and print the detection bounds."""
    _apply_config(ctx, config)
    pr = ctx.params
    n, k = pr["n"], pr["k"]
    parts_list = enumerate_kstretch(n, k)
    click.echo(f"# config = {json.dumps(_config_echo(pr))}")
    click.echo(f"{len(parts_list)} {k}-stretchable partition(s) of {n}")
    if not parts_list:
        sys.exit(0)
    m_enum = max_sum_squares(n, k)
    m_closed = closed_form_m(n, min(k, n - 1))
    agreement = ("n/a" if m_closed is None
                 else "agree" if m_closed == m_enum else "DISAGREE")
    click.echo(f"max sum of squared block sizes (enumeration): {m_enum}")
    click.echo(f"closed-form bracket: {m_closed if m_closed is not None else 'n/a'}"
               f" ({agreement})")
    try:
        m = _build_measurement(pr["d"], pr["s"], pr["t"], pr["r"])
        inputs = BoundInputs.from_measurement(m, n, min(k, n - 1))
        click.echo(f"I bound: {fmt(bound_i(inputs))}")
        click.echo(f"V bound: {fmt(bound_v(inputs))}")
    except (InformationalCompletenessError, PositivityError, ValueError) as exc:
        click.echo(f"bounds unavailable: {exc}")
    if pr["diagrams"]:
        for parts in parts_list:
            click.echo("")
            click.echo(young_diagram(parts))
    sys.exit(0)


if __name__ == "__main__":
    main()
