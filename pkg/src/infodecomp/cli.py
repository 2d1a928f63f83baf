"""Command-line front end.

Every measure in the library is reachable from one subcommand; output is a
stable key-ordered report (or TSV) so runs diff cleanly.  Exit codes:
0 success, 1 validation error, 2 optimizer non-convergence.
"""

from __future__ import annotations

import functools
import os
import sys

import click
import numpy as np

from . import battery as battery_mod
from . import bottleneck, common_info, core_prob, info_lattice, pid
from . import secrecy_opt, zero_error
from .core_prob import (InfoValueError, JointPMF, PMFValidationError,
                        format_pmf, load_pmf, marginalize,
                        mutual_information)
from .info_lattice import LatticeError


def _load(path: str) -> JointPMF:
    if not os.path.exists(path):
        corpus_path = os.path.join(battery_mod.corpus_dir(), f"{path}.pmf")
        if os.sep not in path and os.path.exists(corpus_path):
            path = corpus_path
        else:
            raise PMFValidationError(f"input file not found: {path}")
    return load_pmf(path)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _emit(pairs, fmt: str):
    sep = "\t" if fmt == "tsv" else ": "
    for k, v in pairs:
        click.echo(f"{k}{sep}{_fmt(v)}")


def _emit_matrix(title: str, labels_in, labels_out, rows, fmt: str):
    if fmt == "report":
        click.echo(f"{title}:")
    for i, lab in enumerate(labels_in):
        vals = "\t".join(f"{v:.12g}" for v in rows[i])
        click.echo(f"{lab}\t{vals}")


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (PMFValidationError, LatticeError, InfoValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
    return wrapper


fmt_opt = click.option("--format", "fmt", type=click.Choice(["tsv", "report"]),
                       default="report", show_default=True)
input_opt = click.option("--input", "path", required=True,
                         help="pmf file (or a corpus distribution name)")
seed_opt = click.option("--seed", default=0, show_default=True, type=int)
restarts_opt = click.option("--restarts", default=None, type=int,
                            help="optimizer restarts (measure-specific default)")


@click.group()
def main():
    """Information-decomposition measures over finite joint pmfs."""


@main.command()
@input_opt
@fmt_opt
@_handle_errors
def entropy(path, fmt):
    """Joint entropy H of all variables in the pmf, in bits."""
    p = _load(path)
    _emit([("arity", p.arity), ("entropy_bits", core_prob.joint_entropy(p))], fmt)


@main.command()
@input_opt
@fmt_opt
@_handle_errors
def mi(path, fmt):
    """Mutual information I(X;Y) of a two-variable pmf."""
    p = _load(path)
    _emit([("mi_bits", mutual_information(p))], fmt)


@main.command()
@input_opt
@fmt_opt
@_handle_errors
def cmi(path, fmt):
    """Conditional mutual information I(A;B|C), pmf indexed (A,B,C)."""
    p = _load(path)
    _emit([("cmi_bits", core_prob.conditional_mutual_information(p))], fmt)


@main.command()
@input_opt
@fmt_opt
@_handle_errors
def gk(path, fmt):
    """Gacs-Korner common information (graph path, exact)."""
    p = _load(path)
    if p.arity == 2:
        dec = common_info.mdc_decompose(common_info.bipartite_graph(p), p)
        pairs = [
            ("c_gk_bits", common_info.gk_common_information(p)),
            ("mi_bits", mutual_information(p)),
            ("residual_bits", common_info.residual_information(p)),
            ("num_components", dec.k),
            ("component_masses",
             ",".join(f"{m:.12g}" for m in dec.masses())),
            ("zic_flags",
             ",".join(str(common_info.is_zic(i, p)).lower()
                      for i in range(dec.k))),
            ("perfectly_resolvable", common_info.is_perfectly_resolvable(p)),
        ]
    else:
        pairs = [("c_gk_bits", common_info.gk_common_information_k(p)),
                 ("arity", p.arity)]
    _emit(pairs, fmt)


@main.command()
@input_opt
@seed_opt
@restarts_opt
@click.option("--q-card", default=None, type=int)
@fmt_opt
@_handle_errors
def wyner(path, seed, restarts, q_card, fmt):
    """Wyner common information upper bound (multi-restart descent)."""
    p = _load(path)
    rep = common_info.wyner_common_information(
        p, q_card=q_card, restarts=restarts or 32, seed=seed)
    _emit([("seed", seed), ("value_bits", rep.value),
           ("bound_kind", rep.bound_kind), ("restarts", rep.restarts_run),
           ("converged", rep.converged),
           ("marginal_deviation", rep.diagnostics["marginal_deviation"])], fmt)
    if fmt == "report" and rep.achiever is not None:
        click.echo("achiever:")
        click.echo(format_pmf(rep.achiever), nl=False)
    if not rep.converged:
        sys.exit(2)


@main.command()
@input_opt
@seed_opt
@restarts_opt
@click.option("--q-card", default=None, type=int)
@fmt_opt
@_handle_errors
def cmin(path, seed, restarts, q_card, fmt):
    """Minimum assisted common information upper bound."""
    p = _load(path)
    rep = common_info.min_assisted_common_information(
        p, q_card=q_card, restarts=restarts or 32, seed=seed)
    _emit([("seed", seed), ("value_bits", rep.value),
           ("bound_kind", rep.bound_kind), ("restarts", rep.restarts_run),
           ("converged", rep.converged)], fmt)
    if not rep.converged:
        sys.exit(2)


@main.command()
@input_opt
@seed_opt
@restarts_opt
@click.option("--q-card", default=None, type=int,
              help="cardinality of the post-processed side variable")
@click.option("--oracle", is_flag=True, help="run the grid oracle (binary Y)")
@fmt_opt
@_handle_errors
def intrinsic(path, seed, restarts, q_card, oracle, fmt):
    """Intrinsic conditional information of (X1,X2) given post-processed Y."""
    p = _load(path)
    rep = secrecy_opt.intrinsic_information(
        p, yprime_card=q_card, restarts=restarts or 16, seed=seed)
    pairs = [("seed", seed), ("value_bits", rep.value),
             ("bound_kind", rep.bound_kind), ("converged", rep.converged)]
    if oracle:
        oval = secrecy_opt.intrinsic_grid_oracle(p)
        pairs += [("oracle_bits", oval), ("oracle_delta", rep.value - oval)]
    _emit(pairs, fmt)


@main.command()
@input_opt
@seed_opt
@restarts_opt
@click.option("--oracle", is_flag=True, help="run the grid oracle (2x2x2 only)")
@fmt_opt
@_handle_errors
def union(path, seed, restarts, oracle, fmt):
    """Union information over the pairwise-marginal polytope."""
    p = _load(path)
    rep = secrecy_opt.union_information(p, restarts=restarts or 16, seed=seed)
    pairs = [("seed", seed), ("value_bits", rep.value),
             ("bound_kind", rep.bound_kind), ("converged", rep.converged)]
    if rep.converged:
        pairs.append(("marginal_deviation", rep.diagnostics["marginal_deviation"]))
    if oracle:
        oval = secrecy_opt.union_grid_oracle(p)
        pairs += [("oracle_bits", oval), ("oracle_delta", rep.value - oval)]
    _emit(pairs, fmt)
    if not rep.converged:
        sys.exit(2)


@main.command()
@input_opt
@seed_opt
@restarts_opt
@click.option("--oracle", is_flag=True,
              help="grid-oracle deltas for both routes (2x2x2 only)")
@click.option("--extended", default=None,
              help="four-variable pmf (X1,X2,Y,Y1) for the lockability check")
@fmt_opt
@_handle_errors
def synergy(path, seed, restarts, oracle, extended, fmt):
    """Whole-minus-union synergy via the intrinsic and union routes."""
    p = _load(path)
    res = secrecy_opt.synergy_gk(p, restarts=restarts or 16, seed=seed)
    pairs = [("seed", seed),
             ("via_intrinsic", res["via_intrinsic"]),
             ("via_union", res["via_union"]),
             ("gap", res["gap"]),
             ("clamped", res["clamped"])]
    if oracle:
        i_oracle = secrecy_opt.intrinsic_grid_oracle(p)
        u_oracle = secrecy_opt.union_grid_oracle(p)
        cmi_v = core_prob.conditional_mutual_information(p)
        n1, n2, ny = p.shape
        whole = mutual_information(JointPMF.from_array(
            p.mass.reshape(n1 * n2, ny)))
        pairs += [
            ("oracle_via_intrinsic", cmi_v - i_oracle),
            ("oracle_via_union", whole - u_oracle),
            ("oracle_delta_intrinsic", res["via_intrinsic"] - (cmi_v - i_oracle)),
            ("oracle_delta_union", res["via_union"] - (whole - u_oracle)),
        ]
    if extended:
        lock = secrecy_opt.lockability_bound_check(
            p, _load(extended), restarts=restarts or 8, seed=seed)
        pairs += [(f"lock_{k}", v) for k, v in lock.items()]
    _emit(pairs, fmt)


@main.command(name="pid")
@input_opt
@fmt_opt
@_handle_errors
def pid_cmd(path, fmt):
    """Bivariate PID atoms using the meet-based zero-error redundancy."""
    p = _load(path)
    red = pid.gk_redundancy(p)["i_bits"]
    atoms = pid.pid_atoms(p, red)
    _emit([("measure", "gk_meet_redundancy"),
           ("redundant", atoms.redundant),
           ("unique1", atoms.unique1),
           ("unique2", atoms.unique2),
           ("synergistic", atoms.synergistic),
           ("negative_synergy", atoms.negative_synergy),
           ("total", atoms.total())], fmt)


@main.command(name="redundancy-gk")
@input_opt
@fmt_opt
@_handle_errors
def redundancy_gk(path, fmt):
    """Meet-based zero-error redundancy of the predictors about the target."""
    p = _load(path)
    res = pid.gk_redundancy(p)
    _emit([("c_bits", res["c_bits"]), ("i_bits", res["i_bits"])], fmt)


@main.command(name="cond-gk")
@input_opt
@seed_opt
@restarts_opt
@click.option("--q-card", default=4, show_default=True, type=int)
@fmt_opt
@_handle_errors
def cond_gk(path, seed, restarts, q_card, fmt):
    """Conditional GK unique information for both predictors, (X1,X2,Y) pmf."""
    p = _load(path)
    u1 = pid.unique_from_conditional_gk(p, 1, q_card=q_card,
                                        restarts=restarts or 8, seed=seed)
    u2 = pid.unique_from_conditional_gk(p, 2, q_card=q_card,
                                        restarts=restarts or 8, seed=seed)
    i1 = mutual_information(marginalize(p, [0, 2]))
    i2 = mutual_information(marginalize(p, [1, 2]))
    _emit([("seed", seed), ("unique1", u1), ("unique2", u2),
           ("consistency_residual", abs(i1 + u2 - i2 - u1))], fmt)


@main.command()
@input_opt
@fmt_opt
@_handle_errors
def coloring(path, fmt):
    """Characteristic graph and an exact minimal coloring."""
    p = _load(path)
    g = zero_error.characteristic_graph(p)
    col = zero_error.chromatic_color(g)
    _emit([("vertices", len(g.vertices)),
           ("edges", ";".join(f"{a},{b}" for a, b in g.edge_labels())),
           ("chromatic_number", col.num_colors),
           ("coloring", ",".join(str(c) for c in col.color_of))], fmt)


@main.command()
@input_opt
@fmt_opt
@_handle_errors
def witsenhausen(path, fmt):
    """Minimal-coloring private information of X with respect to Y."""
    p = _load(path)
    res = zero_error.witsenhausen_private(p)
    pairs = [("num_colors", res["num_colors"]),
             ("partition", res["partition"].notation()),
             ("num_minimal", len(res["all_minimal"]))]
    pairs += [(f"minimal_{i}", part.notation())
              for i, part in enumerate(res["all_minimal"])]
    _emit(pairs, fmt)


@main.command(name="hexner-yo")
@click.option("--input", "path", default=None,
              help="partition file: points line, then X and Y block notation")
@click.option("--space", default=None, help="point labels, e.g. 012345")
@click.option("--x-part", default=None, help="X block notation, e.g. 0|12|3|45")
@click.option("--y-part", default=None, help="Y block notation, e.g. 01|2|34|5")
@fmt_opt
@_handle_errors
def hexner_yo(path, space, x_part, y_part, fmt):
    """All minimal partitions P with P join (X meet Y) = X."""
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
        if len(lines) != 3:
            raise PMFValidationError(
                "partition file needs three lines: points, X blocks, Y blocks")
        space, x_part, y_part = lines
    if not (space and x_part and y_part):
        raise PMFValidationError(
            "provide --input or all of --space/--x-part/--y-part")
    sp = info_lattice.SampleSpace(tuple(space))
    x = info_lattice.Partition.from_notation(sp, x_part)
    y = info_lattice.Partition.from_notation(sp, y_part)
    sols = zero_error.hexner_yo_private(x, y)
    pairs = [("meet", info_lattice.meet(x, y).notation()),
             ("num_minimal", len(sols))]
    pairs += [(f"minimal_{i}", s.notation()) for i, s in enumerate(sols)]
    _emit(pairs, fmt)


@main.command()
@input_opt
@seed_opt
@restarts_opt
@click.option("--t-card", default=None, type=int)
@click.option("--beta", default=1.0, show_default=True, type=float)
@fmt_opt
@_handle_errors
def cib(path, seed, restarts, t_card, beta, fmt):
    """Conditional information bottleneck at a single beta."""
    p = _load(path)
    sol = bottleneck.cib_optimize(p, t_card=t_card, beta=beta,
                                  restarts=restarts or 8, seed=seed)
    p4 = bottleneck.four_variable_joint(p, sol.encoder)
    marg_dev = float(np.abs(p4.mass.sum(axis=3) - p.mass).max())
    _emit([("seed", seed), ("beta", sol.beta),
           ("compression", sol.compression), ("relevance", sol.relevance),
           ("objective", sol.objective), ("converged", sol.converged),
           ("marginal_deviation", marg_dev)], fmt)
    _emit_matrix("encoder p(t|y)", sol.encoder.input.labels,
                 sol.encoder.output.labels, sol.encoder.rows, fmt)
    if not sol.converged:
        sys.exit(2)


@main.command()
@input_opt
@seed_opt
@restarts_opt
@click.option("--t-card", default=None, type=int)
@click.option("--betas", default="0,0.5,1,2,5,10,100", show_default=True,
              help="comma-separated ascending beta values")
@fmt_opt
@_handle_errors
def sweep(path, seed, restarts, t_card, betas, fmt):
    """Information curve: one row per beta, warm-started annealing."""
    p = _load(path)
    try:
        beta_values = [float(s) for s in betas.split(",") if s.strip()]
    except ValueError:
        raise PMFValidationError(f"bad --betas value {betas!r}") from None
    sols = bottleneck.beta_sweep(p, t_card=t_card, betas=beta_values,
                                 restarts=restarts or 8, seed=seed)
    if fmt == "report":
        click.echo(f"seed: {seed}")
    click.echo("beta\tcompression\trelevance\tobjective")
    for sol in sols:
        click.echo(f"{sol.beta:.12g}\t{sol.compression:.12g}"
                   f"\t{sol.relevance:.12g}\t{sol.objective:.12g}")
    last = sols[-1]
    _emit_matrix("final encoder p(t|y)", last.encoder.input.labels,
                 last.encoder.output.labels, last.encoder.rows, fmt)


@main.command(name="battery")
@fmt_opt
@_handle_errors
def battery_cmd(fmt):
    """List the corpus distributions and verify the shipped files."""
    rows = battery_mod.verify_corpus()
    failures = 0
    for nd, row in zip(battery_mod.corpus_distributions(), rows):
        status = "ok" if row["ok"] else f"FAIL({row['reason']})"
        shape = "x".join(str(n) for n in nd.pmf.shape)
        click.echo(f"{nd.name}\t{shape}\t{nd.provenance}\t{status}")
        failures += not row["ok"]
    if failures:
        sys.exit(1)


@main.command()
@click.option("--input", "path", default=None,
              help="check the ordering chain on one pmf instead of the suite")
@seed_opt
@click.option("--axioms", is_flag=True,
              help="also check the Williams-Beer axioms of the meet redundancy")
@click.option("--witness", is_flag=True,
              help="also search for a consistency-condition violation witness")
@fmt_opt
@_handle_errors
def check(path, seed, axioms, witness, fmt):
    """Golden suite: recompute every tagged expectation in the corpus."""
    if path is not None:
        p = _load(path)
        res = common_info.check_ci_ordering(p, seed=seed)
        pairs = [("seed", seed)]
        pairs += [(k, v) for k, v in res.items()
                  if isinstance(v, (int, float, bool))]
        _emit(pairs, fmt)
        if not res["ordering_ok"]:
            sys.exit(2)
        return
    click.echo(f"seed: {seed}")
    rows = battery_mod.run_expectations(seed=seed)
    failures = 0
    for r in rows:
        status = "pass" if r["ok"] else "FAIL"
        arg = r["arg"] or "-"
        click.echo(f"{r['distribution']}\t{r['measure']}\t{arg}"
                   f"\t{_fmt(r['expected'])}\t{_fmt(r['got'])}"
                   f"\t{_fmt(r['tol'])}\t{status}")
        failures += not r["ok"]
    if axioms:
        arity3 = [nd.pmf for nd in battery_mod.corpus_distributions()
                  if nd.pmf.arity == 3]
        violations = pid.check_wb_axioms(pid.gk_redundancy_measure(), arity3)
        click.echo(f"axiom_violations\t{len(violations)}")
        failures += len(violations)
    if witness:
        found = pid.find_consistency_witness(seed=seed)
        if found is None:
            click.echo("witness\tnot-found")
            failures += 1
        else:
            _, residual = found
            click.echo(f"witness_residual\t{residual:.12g}")
    if failures:
        sys.exit(1)


if __name__ == "__main__":
    main()
