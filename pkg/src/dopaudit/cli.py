"""Command-line entry point.

Exit codes: 0 for a PASS or NOT_APPLICABLE verdict and for informational
commands, 1 for FAIL, violated hypotheses or an oracle contradiction, 2 for
usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .admissibility import full_admissibility
from .errors import (
    DegenerateMetric, DopError, ModelSyntaxError, NeedsExtension, NotSquarefree, StructuralError, UnknownFixture,
)
from .modelio import fixture_model, fixture_names, load_model, render_model
from .modelio.fixtures import FIXTURES
from .modelio.report import (
    SCHEMA, ReportConfig, admissibility_section, build_report, degree_audit_section, expectation_mismatches,
    render_machine, render_report, singularity_section, tree_section,
)
from .oracle import CONVERGENT_MAX_RATIO, DIVERGENT_MIN_RATIO
from .resolve2d import resolve_model_boundary
from .structure import decompose
from .tensorcalc import curvature_bundle, degree_audit

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, data: dict, human: str):
    if args.format == "machine":
        sys.stdout.write(render_machine({"schema": SCHEMA, "command": args.command, **data}))
    else:
        sys.stdout.write(human if human.endswith("\n") else human + "\n")


def _load(source: str):
    m = load_model(source)
    return m, m.cometric()


def _bool(b) -> str:
    return str(bool(b)).lower()


# ---------------------------------------------------------------- subcommands

def cmd_audit(args) -> int:
    m, g = _load(args.model)
    adm = full_admissibility(g)
    sec = admissibility_section(adm, g.names)
    lines = [f"boundary D = {sec['boundary']}",
             f"boundary_degree = {sec['boundary_degree']} (maximal {_bool(sec['boundary_degree_maximal'])})",
             f"entry_degree_ok = {_bool(sec['entry_degree_ok'])}",
             f"squarefree_ok = {_bool(sec['squarefree_ok'])}",
             f"condition2_ok = {_bool(sec['condition2_ok'])}"]
    if sec["quotients"]:
        lines.append("quotients = (" + ", ".join(sec["quotients"]) + ")")
    lines.append("unverified = " + ", ".join(sec["unverified"]))
    _emit(args, {"admissibility": sec}, "\n".join(lines))
    return EXIT_OK if adm.admissible else EXIT_FAIL


def cmd_curvature(args) -> int:
    m, g = _load(args.model)
    try:
        b = curvature_bundle(g)
    except DegenerateMetric as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    audit = degree_audit(g, b)
    d = g.d
    names = g.names

    def fmt(r):
        return r.to_string(names)

    gam = {f"{k + 1}{i + 1}{j + 1}": fmt(b.christoffel[k][i][j])
           for k in range(d) for i in range(d) for j in range(i, d) if not b.christoffel[k][i][j].is_zero}
    ric = {f"{i + 1}{j + 1}": fmt(b.ricci[i][j]) for i in range(d) for j in range(i, d)}
    raised = {f"{i + 1}{j + 1}": fmt(b.raised[i][j]) for i in range(d) for j in range(i, d)}
    sym = b.symmetry_report()
    sec = degree_audit_section(audit)
    lines = ["christoffel (nonzero, Gamma^k_ij with i <= j):"]
    lines += [f"  Gamma^{k[0]}_{k[1:]} = {v}" for k, v in gam.items()] or ["  none"]
    lines.append("ricci R_ij:")
    lines += [f"  R_{k} = {v}" for k, v in ric.items()]
    lines.append("raised ricci R^ij:")
    lines += [f"  R^{k} = {v}" for k, v in raised.items()]
    lines.append("symmetries: " + ", ".join(f"{k} {_bool(v)}" for k, v in sym.items()))
    lines.append(f"degree audit {sec['status']}: " + ", ".join(
        f"{k} {v} (bound {sec['bounds'][k]})" for k, v in sec["degrees"].items()))
    _emit(args, {"christoffel": gam, "ricci": ric, "raised_ricci": raised, "symmetries": sym,
                 "degree_audit": sec}, "\n".join(lines))
    return EXIT_FAIL if audit.status == "FAIL" or not all(sym.values()) else EXIT_OK


def _tree_lines(tree, indent=""):
    out = []
    g = tree.cometric
    if tree.is_leaf:
        v = tree.verdict
        tail = ""
        if v is not None:
            tail = f", einstein {v.status}" + (f" lambda = {v.lam}" if v.lam is not None else "")
        out.append(f"{indent}leaf ({', '.join(g.names)}): commutant {tree.commutant_dim}, D = "
                   f"{tree.boundary.to_string(g.names)}{tail}")
        return out
    out.append(f"{indent}split: commutant {tree.commutant_dim}, eigenvalues {', '.join(map(str, tree.eigenvalues))}")
    out.append(f"{indent}  basis change {[[str(c) for c in row] for row in tree.basis_change]}")
    for (block, sub), sep in zip(tree.blocks, tree.separation):
        out.append(f"{indent}  block ({', '.join(g.names[i] for i in block.variables)}), separated {_bool(sep)}")
        if sub is not None:
            out += _tree_lines(sub, indent + "    ")
    return out


def cmd_decompose(args) -> int:
    m, g = _load(args.model)
    try:
        tree = decompose(g, with_verdicts=False)
    except NeedsExtension as exc:
        print(f"needs extension: {exc}", file=sys.stderr)
        return EXIT_FAIL
    lines = _tree_lines(tree)
    lines.append(f"block dimensions {tree.block_dimensions()}; separated {_bool(tree.separated)}")
    _emit(args, {"decomposition": tree_section(tree), "block_dims": tree.block_dimensions()}, "\n".join(lines))
    return EXIT_OK if tree.separated else EXIT_FAIL


def cmd_einstein(args) -> int:
    m, g = _load(args.model)
    try:
        tree = decompose(g)
    except NeedsExtension as exc:
        print(f"needs extension: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rows = []
    ok = tree.separated
    for leaf in tree.leaves():
        v = leaf.verdict
        ok = ok and v.ok
        rows.append({"variables": list(leaf.cometric.names), "status": v.status,
                     "lambda": None if v.lam is None else str(v.lam),
                     "witness": None if v.witness is None else [i + 1 for i in v.witness]})
    lines = [f"block ({', '.join(r['variables'])}): {r['status']}"
             + (f" lambda = {r['lambda']}" if r["lambda"] is not None else "")
             + (f" witness R^{r['witness'][0]}{r['witness'][1]}" if r["witness"] else "") for r in rows]
    lines.append("lambdas [" + ", ".join(r["lambda"] or "-" for r in rows) + "]")
    _emit(args, {"blocks": rows}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_resolve(args) -> int:
    m, g = _load(args.model)
    if g.d != 2:
        raise UsageError("resolve needs a two-dimensional model")
    try:
        res = resolve_model_boundary(g)
    except NotSquarefree as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_FAIL
    sec = singularity_section(res)
    lines = []
    for p in sec["points"]:
        lines.append(f"({', '.join(p['point'])}) {'real' if p['real'] else 'complex'}: {p['kind']}, "
                     f"angle {p['angle']}, integrable {_bool(p['integrable'])}, "
                     f"ledger {p['exceptional_multiplicities']}")
    if not lines:
        lines.append("no singular points")
    if not res.complete:
        lines.append("warning: search incomplete")
    _emit(args, {"singularities": sec}, "\n".join(lines))
    return EXIT_FAIL if res.scope_violations else EXIT_OK


def _config(args) -> ReportConfig:
    return ReportConfig(oracle=not args.no_oracle, samples=args.samples, levels=args.levels, seed=args.seed)


def cmd_check(args) -> int:
    m, g = _load(args.model)
    rep = build_report(g, m.name or "", _config(args))
    sys.stdout.write(render_report(rep, args.format))
    return rep.exit_code


def cmd_report(args) -> int:
    from .plotting import plot_boundary, plot_shell_ratios

    m, g = _load(args.model)
    rep = build_report(g, m.name or "", _config(args))
    os.makedirs(args.out, exist_ok=True)
    written = []

    def path(name):
        p = os.path.join(args.out, name)
        written.append(p)
        return p

    with open(path("report.json"), "w", encoding="utf-8") as fh:
        fh.write(render_report(rep, "machine"))
    with open(path("report.txt"), "w", encoding="utf-8") as fh:
        fh.write(render_report(rep, "human"))
    sing = rep.data.get("singularities")
    if sing is not None:
        with open(path("singularities.tsv"), "w", encoding="utf-8") as fh:
            fh.write("point\treal\tkind\tangle\tintegrable\tmilnor\tledger\n")
            for p in sing["points"]:
                fh.write("\t".join([" ".join(p["point"]), _bool(p["real"]), p["kind"], p["angle"],
                                    _bool(p["integrable"]), str(p["milnor"]),
                                    ",".join(map(str, p["exceptional_multiplicities"]))]) + "\n")
    if g.d == 2:
        plot_boundary(g, rep.extras.get("resolution"), path("boundary.png"), title=m.name or "")
    findings = rep.extras.get("oracle")
    if findings is not None and findings.integrability:
        plot_shell_ratios(findings.integrability, path("shell_ratios.png"), CONVERGENT_MAX_RATIO,
                          DIVERGENT_MIN_RATIO)
    for p in written:
        print(p)
    return rep.exit_code


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for n in fixture_names():
            print(f"{n}\t{FIXTURES[n].description}")
        return EXIT_OK
    if not args.name:
        raise UsageError("fixtures emit needs a fixture name")
    sys.stdout.write(render_model(fixture_model(args.name)))
    return EXIT_OK


# ---------------------------------------------------------------- batch

BATCH_COLUMNS = ("source", "name", "status", "exit", "lambdas", "blocks", "singularities", "expected", "detail")


def batch_row(source: str, config: ReportConfig) -> dict:
    """One batch row; errors become rows, never exceptions."""
    row = dict.fromkeys(BATCH_COLUMNS, "")
    row["source"] = source
    try:
        m = load_model(source)
        g = m.cometric()
    except (ModelSyntaxError, FileNotFoundError, UnknownFixture, StructuralError, OSError) as exc:
        row.update(status="ERROR", exit=EXIT_USAGE, detail=str(exc))
        return row
    try:
        rep = build_report(g, m.name or "", config)
    except DopError as exc:
        row.update(name=m.name or "", status="ERROR", exit=EXIT_FAIL, detail=f"{type(exc).__name__}: {exc}")
        return row
    v = rep.data["verdict"]
    sing = rep.data.get("singularities")
    mism = expectation_mismatches(rep.data, m.expect)
    row.update(
        name=m.name or "",
        status=v["status"],
        exit=rep.exit_code,
        lambdas=",".join(l or "-" for l in v["lambdas"]) or "-",
        blocks=",".join(map(str, v["block_dims"])) or "-",
        singularities=",".join(p["kind"] for p in sing["points"] if p["real"]) if sing else "-",
        expected=("mismatch" if mism else "ok") if m.expect else "-",
        detail="; ".join(mism + rep.data["oracle"]["contradictions"]),
    )
    return row


def run_batch(sources, jobs: int, config: ReportConfig) -> list[dict]:
    if jobs <= 1:
        return [batch_row(s, config) for s in sources]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(batch_row, sources, [config] * len(sources)))


def format_batch(rows) -> str:
    out = ["\t".join(BATCH_COLUMNS)]
    for r in rows:
        out.append("\t".join(str(r[c]) if r[c] != "" else "-" for c in BATCH_COLUMNS))
    counts = {}
    for r in rows:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    unexpected = sum(1 for r in rows if r["expected"] == "mismatch")
    out.append("# totals: " + ", ".join(f"{k} {counts[k]}" for k in sorted(counts)) + f"; unexpected {unexpected}")
    return "\n".join(out) + "\n"


def cmd_batch(args) -> int:
    sources = list(args.models)
    if args.fixtures:
        sources += fixture_names()
    if not sources:
        raise UsageError("batch needs at least one model")
    rows = run_batch(sources, args.jobs, _config(args))
    if args.format == "machine":
        sys.stdout.write(json.dumps({"schema": SCHEMA, "command": "batch", "rows": rows}, sort_keys=True,
                                    indent=2) + "\n")
    else:
        sys.stdout.write(format_batch(rows))
    if any(r["exit"] == EXIT_USAGE for r in rows):
        return EXIT_USAGE
    if any(r["exit"] == EXIT_FAIL or r["expected"] == "mismatch" for r in rows):
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dopaudit", description="Audit polynomial cometrics of diffusion operators.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def model_cmd(name, helptext, fn, oracle=False):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("model", help="model file path or fixture name (also fixture:NAME)")
        sp.add_argument("--format", choices=("human", "machine"), default="human")
        if oracle:
            _oracle_flags(sp)
        sp.set_defaults(func=fn)
        return sp

    model_cmd("audit", "admissibility checks", cmd_audit)
    model_cmd("curvature", "Christoffel symbols, Ricci tensors and the degree audit", cmd_curvature)
    model_cmd("decompose", "commutant and block decomposition", cmd_decompose)
    model_cmd("einstein", "Einstein constant of each irreducible block", cmd_einstein)
    model_cmd("resolve", "classify singular boundary points (d = 2)", cmd_resolve)
    model_cmd("check", "full pipeline with oracle cross-checks", cmd_check, oracle=True)
    rp = model_cmd("report", "write JSON, text, TSV and figures to a directory", cmd_report, oracle=True)
    rp.add_argument("--out", required=True, help="output directory")

    fx = sub.add_parser("fixtures", help="list or print built-in models")
    fx.add_argument("action", choices=("list", "emit"))
    fx.add_argument("name", nargs="?")
    fx.set_defaults(func=cmd_fixtures)

    bt = sub.add_parser("batch", help="run check over many models, one summary row each")
    bt.add_argument("models", nargs="*")
    bt.add_argument("--fixtures", action="store_true", help="append every built-in fixture")
    bt.add_argument("--jobs", type=int, default=1)
    bt.add_argument("--format", choices=("human", "machine"), default="human")
    _oracle_flags(bt)
    bt.set_defaults(func=cmd_batch)
    return p


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _levels(text):
    v = int(text)
    if v < 4:
        raise argparse.ArgumentTypeError("at least four refinement levels are required")
    return v


def _oracle_flags(sp):
    sp.add_argument("--no-oracle", action="store_true", help="skip numeric cross-checks")
    sp.add_argument("--samples", type=_positive, default=10, help="finite-difference sample points")
    sp.add_argument("--levels", type=_levels, default=5, help="dyadic shells for the integrability estimate")
    sp.add_argument("--seed", type=int, default=0, help="sampling seed")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except (ModelSyntaxError, FileNotFoundError, UnknownFixture, UsageError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownFixture) else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except StructuralError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
