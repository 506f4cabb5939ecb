"""Analysis reports and their renderings.

The machine format is JSON with sorted keys.  Schema ``dopaudit.report/1``:

``schema``
    the string ``"dopaudit.report/1"``.
``model``
    ``{"name", "dim", "vars", "cometric": [[str]]}``.
``admissibility``
    ``{"entry_degree_ok", "boundary", "boundary_degree", "boundary_degree_maximal",
    "squarefree_ok", "condition2_ok", "quotients": [str] | null, "unverified": [str]}``.
``degree_audit``
    ``{"status", "applicable", "degrees": {tensor: int | "-inf"}, "bounds", "flags",
    "raised_polynomial"}``; absent when the metric is degenerate.
``decomposition``
    tree node ``{"criterion", "commutant_dim", "boundary", "basis_change", "eigenvalues",
    "separation", "blocks": [{"variables", "cometric", "boundary", "tree"}], "einstein"}``.
``verdict``
    ``{"status", "reason", "lambdas": [str], "block_dims": [int]}``.
``singularities``
    ``{"complete", "points": [{"point": [str], "real", "kind", "integrable", "angle",
    "milnor", "exceptional_multiplicities": [int]}]}``; only for d = 2.
``oracle``
    ``{"enabled", "curvature": [...], "integrability": [...], "contradictions": [str],
    "notes": [str]}``.
``exit_code``
    0, 1 or 2 with the meaning documented for the command line.

Reports are pure functions of the model and the :class:`ReportConfig`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from ..admissibility import AdmissibilityReport
from ..cometric import Cometric
from ..errors import DegenerateMetric, IllConditioned, NotSquarefree
from ..oracle import (
    CONVERGENT_MAX_RATIO, DIVERGENT_MIN_RATIO, OracleFindings, compare_ricci, integrability_estimate,
    sample_points,
)
from ..resolve2d import BoundaryResolution, format_point, resolve_model_boundary
from ..structure import IRREDUCIBILITY_CRITERION, DecompositionTree, MainTheoremVerdict, main_theorem_check
from ..tensorcalc import DEGREE_BOUNDS, CurvatureBundle, DegreeAudit, curvature_bundle, degree_audit

SCHEMA = "dopaudit.report/1"
PASSING = ("PASS", "NOT_APPLICABLE")


@dataclass(frozen=True)
class ReportConfig:
    oracle: bool = True
    samples: int = 10
    levels: int = 5
    seed: int = 0


@dataclass
class Report:
    data: dict
    exit_code: int
    name: str = ""
    extras: dict = field(default_factory=dict)  # non-serialized objects for plotting


def _num(c) -> str:
    return str(c)


def _degree(v):
    return "-inf" if v == float("-inf") else int(v)


def admissibility_section(adm: AdmissibilityReport, names) -> dict:
    return {
        "entry_degree_ok": adm.entry_degree_ok,
        "boundary": adm.boundary_poly.to_string(names),
        "boundary_degree": _degree(adm.boundary_degree),
        "boundary_degree_maximal": adm.boundary_degree_maximal,
        "squarefree_ok": adm.squarefree_ok,
        "condition2_ok": adm.condition2_ok,
        "quotients": [q.to_string(names) for q in adm.quotients] if adm.quotients else None,
        "unverified": list(adm.unverified),
    }


def degree_audit_section(audit: DegreeAudit) -> dict:
    return {
        "status": audit.status,
        "applicable": audit.applicable,
        "degrees": {k: _degree(v) for k, v in audit.degrees.items()},
        "bounds": dict(DEGREE_BOUNDS),
        "flags": audit.flags,
        "raised_polynomial": audit.raised_polynomial,
    }


def tree_section(tree: DecompositionTree) -> dict:
    g = tree.cometric
    node = {
        "criterion": IRREDUCIBILITY_CRITERION,
        "commutant_dim": tree.commutant_dim,
        "boundary": tree.boundary.to_string(g.names),
        "basis_change": [[_num(c) for c in row] for row in tree.basis_change] if tree.basis_change else None,
        "eigenvalues": [_num(c) for c in tree.eigenvalues] if tree.eigenvalues else None,
        "separation": list(tree.separation),
        "blocks": [],
        "einstein": None,
    }
    for block, sub in tree.blocks:
        node["blocks"].append({
            "variables": [g.names[i] for i in block.variables],
            "cometric": block.cometric.to_rows() if block.cometric else None,
            "boundary": block.boundary.to_string(block.cometric.names) if block.cometric else None,
            "tree": tree_section(sub) if sub is not None else None,
        })
    if tree.verdict is not None:
        v = tree.verdict
        node["einstein"] = {
            "status": v.status,
            "lambda": _num(v.lam) if v.lam is not None else None,
            "witness": [i + 1 for i in v.witness] if v.witness else None,
        }
    return node


def verdict_section(main: MainTheoremVerdict) -> dict:
    return {
        "status": main.status,
        "reason": main.reason,
        "lambdas": [_num(l) if l is not None else None for l in main.lambdas],
        "block_dims": main.block_dimensions,
    }


def singularity_section(res: BoundaryResolution) -> dict:
    pts = []
    for bp in res.points:
        v = bp.verdict
        pts.append({
            "point": [str(c) for c in bp.point],
            "real": bp.real,
            "kind": v.label,
            "integrable": v.integrable,
            "angle": v.angle_text(),
            "milnor": v.milnor,
            "exceptional_multiplicities": v.exceptional_multiplicities,
        })
    return {"complete": res.complete, "points": pts}


def run_oracle(g: Cometric, bundle: CurvatureBundle, res: BoundaryResolution | None,
               config: ReportConfig) -> OracleFindings:
    out = OracleFindings()
    try:
        plan = sample_points(g, config.samples, seed=config.seed)
    except IllConditioned as exc:
        out.notes.append(f"curvature check skipped: {exc}")
        plan = None
    if plan is not None:
        for p in plan.points:
            c = compare_ricci(g, bundle.ricci, p, plan.step)
            out.curvature.append(c)
            label = format_point(p)
            if c.relative > plan.tolerance:
                out.contradictions.append(f"Ricci at {label}: relative deviation {c.relative:.3e}")
            r = c.halving_ratio
            if r is not None and not 3.0 <= r <= 5.0 and c.deviation > 1e-30:
                out.contradictions.append(f"Ricci at {label}: step-halving ratio {r:.3f} is not about 4")
    if res is not None:
        for bp in res.real_points:
            est = integrability_estimate(g.boundary, None, config.levels, center=bp.point)
            out.integrability.append((format_point(bp.point), bp.verdict.integrable, est))
            expected = "CONVERGENT" if bp.verdict.integrable else "DIVERGENT"
            if est.verdict == "INCONCLUSIVE":
                out.notes.append(f"integrability at {format_point(bp.point)} inconclusive")
            elif est.verdict != expected:
                out.contradictions.append(
                    f"integrability at {format_point(bp.point)}: ledger says {expected}, estimate {est.verdict}")
    return out


def oracle_section(findings: OracleFindings | None) -> dict:
    if findings is None:
        return {"enabled": False, "curvature": [], "integrability": [], "contradictions": [], "notes": []}
    return {
        "enabled": True,
        "curvature": [
            {"point": [str(c) for c in cmp.point], "relative_deviation": float(f"{cmp.relative:.6e}"),
             "halving_ratio": None if cmp.halving_ratio is None else round(cmp.halving_ratio, 4)}
            for cmp in findings.curvature
        ],
        "integrability": [
            {"point": label, "ledger_integrable": integ, "estimate": est.verdict,
             "ratios": [round(r, 4) if math.isfinite(r) else None for r in est.ratios],
             "thresholds": [CONVERGENT_MAX_RATIO, DIVERGENT_MIN_RATIO]}
            for label, integ, est in findings.integrability
        ],
        "contradictions": list(findings.contradictions),
        "notes": list(findings.notes),
    }


def expectation_mismatches(data: dict, expect: dict) -> list[str]:
    """Compare a report against ``expect`` metadata; multisets for list-valued keys."""
    def split(v):
        return sorted(x for x in v.split(",") if x and x != "-")

    actual = {
        "verdict": data["verdict"]["status"],
        "lambdas": sorted(l for l in data["verdict"]["lambdas"] if l is not None),
        "blocks": sorted(str(b) for b in data["verdict"]["block_dims"]),
    }
    sing = data.get("singularities")
    if sing is not None:
        actual["singularities"] = sorted(p["kind"] for p in sing["points"] if p["real"])
    out = []
    for key, want in sorted(expect.items()):
        if key not in actual:
            continue
        got = actual[key]
        wanted = want if key == "verdict" else split(want)
        if got != wanted:
            out.append(f"{key}: expected {want}, got {got if key == 'verdict' else ','.join(got) or '-'}")
    return out


def exit_code_for(status: str, contradiction: bool = False) -> int:
    if contradiction:
        return 1
    return 0 if status in PASSING else 1


def build_report(g: Cometric, name: str = "", config: ReportConfig = ReportConfig()) -> Report:
    """Full pipeline: admissibility, degree audit, decomposition, singularities, oracle."""
    main = main_theorem_check(g)
    adm = main.admissibility
    data = {
        "schema": SCHEMA,
        "model": {"name": name, "dim": g.d, "vars": list(g.names), "cometric": g.to_rows()},
        "admissibility": admissibility_section(adm, g.names),
        "verdict": verdict_section(main),
        "decomposition": tree_section(main.tree) if main.tree else None,
    }
    extras = {"cometric": g}
    bundle = None
    try:
        bundle = curvature_bundle(g)
        data["degree_audit"] = degree_audit_section(degree_audit(g, bundle))
    except DegenerateMetric:
        data["degree_audit"] = None
    res = None
    if g.d == 2:
        try:
            res = resolve_model_boundary(g)
            data["singularities"] = singularity_section(res)
            extras["resolution"] = res
        except NotSquarefree:
            data["singularities"] = None
    status = main.status
    if status == "PASS" and res is not None and res.scope_violations:
        status = "FAIL"
        data["verdict"]["status"] = status
        data["verdict"]["reason"] = "boundary singularity outside the A-series"
    findings = run_oracle(g, bundle, res, config) if (config.oracle and bundle is not None) else None
    data["oracle"] = oracle_section(findings)
    extras["oracle"] = findings
    code = exit_code_for(status, findings is not None and findings.contradiction)
    data["exit_code"] = code
    return Report(data, code, name, extras)


def render_machine(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def render_report(report: Report, fmt: str = "human") -> str:
    if fmt == "machine":
        return render_machine(report.data)
    if fmt != "human":
        raise ValueError(f"unknown report format {fmt!r}")
    return render_human(report.data)


def _human_tree(node: dict, indent: str, out: list):
    if node["einstein"] is not None:
        e = node["einstein"]
        lam = e["lambda"] if e["lambda"] is not None else "-"
        out.append(f"{indent}irreducible block, D = {node['boundary']}: einstein {e['status']} lambda = {lam}")
        return
    out.append(f"{indent}commutant dimension {node['commutant_dim']}, eigenvalues {', '.join(node['eigenvalues'])}")
    for b, sep in zip(node["blocks"], node["separation"] or [None] * len(node["blocks"])):
        out.append(f"{indent}  block ({', '.join(b['variables'])}) separated={sep}")
        if b["tree"] is not None:
            _human_tree(b["tree"], indent + "    ", out)


def render_human(data: dict) -> str:
    out = []
    m = data["model"]
    out.append(f"model {m['name'] or '(unnamed)'}: dim {m['dim']}, vars {' '.join(m['vars'])}")
    a = data["admissibility"]
    out.append(f"boundary D = {a['boundary']} (degree {a['boundary_degree']}, "
               f"maximal {str(a['boundary_degree_maximal']).lower()})")
    out.append(f"entry degrees ok {str(a['entry_degree_ok']).lower()}; squarefree {str(a['squarefree_ok']).lower()}; "
               f"divisibility {str(a['condition2_ok']).lower()}")
    if a["quotients"] is not None:
        out.append(f"quotients q = ({', '.join(a['quotients'])})")
    out.append(f"unverified: {', '.join(a['unverified'])}")
    audit = data.get("degree_audit")
    if audit:
        degs = ", ".join(f"{k} {v}" for k, v in audit["degrees"].items())
        out.append(f"degree audit {audit['status']}: {degs}")
    if data.get("decomposition"):
        _human_tree(data["decomposition"], "", out)
    sing = data.get("singularities")
    if sing is not None:
        if not sing["points"]:
            out.append("no singular boundary points")
        for p in sing["points"]:
            where = "real" if p["real"] else "complex"
            out.append(f"singular point ({', '.join(p['point'])}) [{where}]: {p['kind']}, angle {p['angle']}, "
                       f"integrable {str(p['integrable']).lower()}")
        if not sing["complete"]:
            out.append("warning: singular point search incomplete (higher-degree algebraic points)")
    o = data["oracle"]
    if o["enabled"]:
        if o["curvature"]:
            worst = max(c["relative_deviation"] for c in o["curvature"])
            out.append(f"oracle curvature: {len(o['curvature'])} points, worst relative deviation {worst:.2e}")
        for it in o["integrability"]:
            out.append(f"oracle integrability at {it['point']}: {it['estimate']}")
        for n in o["notes"]:
            out.append(f"oracle note: {n}")
        for c in o["contradictions"]:
            out.append(f"CONTRADICTION: {c}")
    v = data["verdict"]
    lam = ", ".join(l if l is not None else "-" for l in v["lambdas"])
    reason = f" ({v['reason']})" if v["reason"] else ""
    out.append(f"verdict {v['status']}{reason}; lambdas [{lam}]; blocks {v['block_dims']}")
    return "\n".join(out) + "\n"

