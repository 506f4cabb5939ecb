"""Acceptance suite: one check per criterion, each printing a pass/fail line.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from collections import Counter
from fractions import Fraction

import pytest

from dopaudit.admissibility import condition2_check, full_admissibility
from dopaudit.modelio import fixture_cometric, fixture_names
from dopaudit.modelio.report import ReportConfig, build_report
from dopaudit.oracle import DEFAULT_TOLERANCE, agreement, compare_ricci, integrability_estimate, sample_points
from dopaudit.polyring import Poly
from dopaudit.resolve2d import classify, curve_fixtures, resolve_model_boundary
from dopaudit.structure import decompose
from dopaudit.tensorcalc import DEGREE_BOUNDS, curvature_bundle, degree_audit

RESULTS: dict[int, tuple[bool, str]] = {}


def _rational_matrix(rng):
    """Random invertible 2 x 2 rational matrix."""
    while True:
        P = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(2)] for _ in range(2)]
        if P[0][0] * P[1][1] - P[0][1] * P[1][0] != 0:
            return P


def criterion_1():
    notes = []
    ok = True
    for name, blocks, lambdas in (("square", [1, 1], ["0", "0"]), ("deltoid", [2], ["0"])):
        t0 = time.perf_counter()
        rep = build_report(fixture_cometric(name), name, ReportConfig())
        dt = time.perf_counter() - t0
        v = rep.data["verdict"]
        good = (v["status"] == "PASS" and sorted(v["block_dims"]) == blocks and sorted(v["lambdas"]) == lambdas
                and rep.exit_code == 0 and dt < 10)
        ok &= good
        notes.append(f"{name} {v['status']} blocks {v['block_dims']} lambdas {v['lambdas']} {dt:.1f}s")
    return ok, "; ".join(notes)


def criterion_2():
    checked = []
    ok = True
    for name in fixture_names():
        g = fixture_cometric(name)
        if not full_admissibility(g).admissible_maximal:
            continue
        b = curvature_bundle(g)
        audit = degree_audit(g, b)
        good = audit.applicable and audit.raised_polynomial and all(
            audit.degrees[k] <= DEGREE_BOUNDS[k] for k in DEGREE_BOUNDS)
        good &= all(e.is_polynomial and e.num.degree <= 2 for row in b.raised for e in row)
        ok &= good
        checked.append(name)
    return ok and bool(checked), "fixtures " + ", ".join(checked)


def criterion_3():
    x, y = Poly.gens(2)
    g = fixture_cometric("disk")
    ok2, qs = condition2_check(g)
    ok = ok2 and qs == (-2 * x, -2 * y)
    rng = random.Random(20260301)
    bad = fixture_cometric("multiple_tangent")
    trials = 0
    for _ in range(20):
        P = _rational_matrix(rng)
        b = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(2)]
        ok &= condition2_check(g.transform(P, b))[0] is True
        ok &= condition2_check(bad.transform(P, b))[0] is False
        trials += 1
    return ok, f"q = ({', '.join(q.to_string(g.names) for q in qs)}); {trials} affine changes"


def criterion_4():
    ok = True
    worst = 0.0
    ratios = []
    exact = 0
    for name in fixture_names():
        g = fixture_cometric(name)
        ric = curvature_bundle(g).ricci
        for p in sample_points(g, 10, seed=4).points:
            c = compare_ricci(g, ric, p)
            worst = max(worst, c.relative)
            ok &= c.relative <= DEFAULT_TOLERANCE
            if c.deviation == 0:
                exact += 1
            else:
                ratios.append(c.halving_ratio)
                ok &= 3.0 <= c.halving_ratio <= 5.0
    ok &= bool(ratios)
    return ok, (f"worst relative {worst:.2e}; halving ratios {min(ratios):.3f}..{max(ratios):.3f}; "
                f"{exact} points exact")


def criterion_5():
    rng = random.Random(5)
    g = fixture_cometric("square")
    trials = 0
    ok = True
    for _ in range(24):
        h = g.transform(_rational_matrix(rng))
        tree = decompose(h)
        ok &= Counter(tree.block_dimensions()) == Counter([1, 1]) and tree.separated
        ok &= Counter(tree.lambdas()) == Counter([Fraction(0), Fraction(0)])
        trials += 1
    return ok, f"{trials} scrambles"


def criterion_6():
    x, y = Poly.gens(2)
    ok = True
    for n in range(1, 7):
        v = classify(y ** 2 - x ** (n + 1))
        ok &= v.label == f"A({n})" and v.corner_angle == Fraction(1, n + 1)
    ok &= classify(x * y * (x + y)).label == "D(4)"
    x9 = classify(x * y * (x + y) * (x - y))
    ok &= (not x9.integrable) and 2 in x9.exceptional_multiplicities
    return ok, f"A(1)..A(6), D(4); quadruple point ledger {x9.exceptional_multiplicities}"


def criterion_7():
    sq = resolve_model_boundary(fixture_cometric("square"))
    de = resolve_model_boundary(fixture_cometric("deltoid"))
    ok = len(sq.real_points) == 4 and all(
        p.verdict.label == "A(1)" and p.verdict.corner_angle == Fraction(1, 2) for p in sq.points)
    ok &= len(de.real_points) == 3 and len(de.points) == 3 and all(
        p.verdict.label == "A(2)" and p.verdict.corner_angle == Fraction(1, 3) for p in de.points)
    return ok, "square 4 x A(1) pi/2; deltoid 3 x A(2) pi/3"


def criterion_8():
    ok = True
    n = 0
    disagreements = []
    for name, (f, _, integrable) in sorted(curve_fixtures().items()):
        est = integrability_estimate(f, center=(0, 0))
        n += 1
        if not agreement(integrable, est):
            ok = False
            disagreements.append(f"{name} {est.verdict}")
    for name in ("square", "deltoid", "b2", "disk"):
        g = fixture_cometric(name)
        for bp in resolve_model_boundary(g).real_points:
            est = integrability_estimate(g.boundary, center=bp.point)
            n += 1
            if not agreement(bp.verdict.integrable, est):
                ok = False
                disagreements.append(f"{name} {est.verdict}")
    mt = integrability_estimate(fixture_cometric("multiple_tangent").boundary, region_seed=(0, Fraction(1, 2)))
    ok &= mt.verdict == "DIVERGENT"
    detail = f"{n} points agree; y^2(y - x^2) seeded {mt.verdict}"
    if disagreements:
        detail += "; CONTRADICTION " + ", ".join(disagreements)
    return ok, detail


def criterion_9():
    t0 = time.perf_counter()
    g = fixture_cometric("cube")
    tree = decompose(g)
    audit = degree_audit(g, curvature_bundle(g))
    dt = time.perf_counter() - t0
    ok = tree.block_dimensions() == [1, 1, 1] and tree.separated and tree.lambdas() == [0, 0, 0]
    ok &= all(leaf.verdict.ok for leaf in tree.leaves())
    ok &= g.boundary.degree == 6 and audit.applicable and audit.status == "PASS"
    ok &= dt < 30
    return ok, f"blocks {tree.block_dimensions()} lambdas {[str(l) for l in tree.lambdas()]}; {dt:.1f}s"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 10)}


def line(i: int, ok: bool, detail: str) -> str:
    return f"criterion {i}: {'PASS' if ok else 'FAIL'} - {detail}"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, detail = CRITERIA[number]()
    RESULTS[number] = (ok, detail)
    print(line(number, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for i, fn in CRITERIA.items():
        ok, detail = fn()
        failed += not ok
        print(line(i, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
