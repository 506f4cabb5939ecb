import pytest
import sympy as sp
from hypothesis import given, settings

from conftest import SYMS, to_sympy, polys
from dopaudit.cometric import Cometric
from dopaudit.errors import Condition2Violated, DegenerateMetric
from dopaudit.modelio import fixture_cometric
from dopaudit.polyring import Poly
from dopaudit.tensorcalc import DEGREE_BOUNDS, curvature_bundle, degree_audit, laplace_beltrami, raised_report

MAXIMAL = ["square", "deltoid", "cube"]


def ratfun_sympy(r, syms):
    return to_sympy(r.num, syms) / to_sympy(r.den, syms)


def sympy_ricci(g: Cometric):
    """Textbook Levi-Civita Ricci tensor of the lower metric, computed independently."""
    d = g.d
    s = SYMS[:d]
    up = sp.Matrix(d, d, lambda i, j: to_sympy(g[i, j], s))
    low = sp.simplify(up.inv())
    gam = [[[sp.cancel(sum(up[k, l] * (sp.diff(low[j, l], s[i]) + sp.diff(low[i, l], s[j])
                                        - sp.diff(low[i, j], s[l])) for l in range(d)) / 2)
             for j in range(d)] for i in range(d)] for k in range(d)]
    ric = sp.zeros(d, d)
    for j in range(d):
        for k in range(d):
            e = 0
            for a in range(d):
                e += sp.diff(gam[a][j][k], s[a]) - sp.diff(gam[a][j][a], s[k])
                for b in range(d):
                    e += gam[a][a][b] * gam[b][j][k] - gam[a][k][b] * gam[b][j][a]
            ric[j, k] = sp.cancel(e)
    return up, ric


@pytest.mark.parametrize("name", ["disk", "square", "deltoid", "b2"])
def test_ricci_matches_independent_computation(name):
    g = fixture_cometric(name)
    b = curvature_bundle(g)
    up, ref = sympy_ricci(g)
    s = SYMS[:2]
    for i in range(2):
        for j in range(2):
            assert sp.cancel(ratfun_sympy(b.ricci[i][j], s) - ref[i, j]) == 0


def test_raised_ricci_disk_is_round_sphere():
    g = fixture_cometric("disk")
    b = curvature_bundle(g)
    for i in range(2):
        for j in range(2):
            assert b.raised[i][j].is_polynomial
            assert b.raised[i][j].num == g[i, j]


def test_ball3_einstein_constant_two():
    g = fixture_cometric("ball3")
    b = curvature_bundle(g)
    assert all(b.raised[i][j].num == g[i, j] * 2 for i in range(3) for j in range(3))


@pytest.mark.parametrize("name", ["disk", "square", "deltoid", "b2", "cube", "ball3"])
def test_symmetries(name):
    sym = curvature_bundle(fixture_cometric(name)).symmetry_report()
    assert all(sym.values()), sym


@pytest.mark.parametrize("name", MAXIMAL)
def test_degree_audit_passes_on_maximal_fixtures(name):
    g = fixture_cometric(name)
    audit = degree_audit(g, curvature_bundle(g))
    assert audit.applicable and audit.status == "PASS"
    for k, bound in DEGREE_BOUNDS.items():
        assert audit.degrees[k] <= bound


def test_degree_audit_not_applicable_below_maximal_degree():
    g = fixture_cometric("disk")
    audit = degree_audit(g, curvature_bundle(g))
    assert not audit.applicable and audit.status == "NOT_APPLICABLE"
    assert raised_report(g, curvature_bundle(g)).notes


def test_degenerate_metric_raises():
    x, y = Poly.gens(2)
    with pytest.raises(DegenerateMetric):
        curvature_bundle(Cometric([[x, x], [x, x]]))


def test_flat_constant_cometric_has_zero_curvature():
    one = Poly.one(2)
    b = curvature_bundle(Cometric([[one * 2, one], [one, one]]))
    assert all(c.is_zero for row in b.ricci for c in row)


def sympy_laplacian(g: Cometric, f: Poly):
    d = g.d
    s = SYMS[:d]
    up = sp.Matrix(d, d, lambda i, j: to_sympy(g[i, j], s))
    D = up.det()
    F = to_sympy(f, s)
    grad = [sp.diff(F, v) for v in s]
    out = 0
    for i in range(d):
        flux = sum(up[i, j] * grad[j] for j in range(d))
        out += sp.diff(flux, s[i]) - sp.diff(D, s[i]) * flux / (2 * D)
    return sp.cancel(out)


@pytest.mark.parametrize("name", ["disk", "square", "deltoid"])
@settings(max_examples=15)
@given(f=polys(max_deg=3, max_terms=4))
def test_laplace_beltrami_matches_divergence_form(name, f):
    g = fixture_cometric(name)
    out, rep = laplace_beltrami(g, f)
    assert sp.expand(to_sympy(out) - sympy_laplacian(g, f)) == 0
    assert rep.first_order_degree_ok and rep.preserves_degree


def test_laplace_beltrami_rejects_divisibility_failure():
    with pytest.raises(Condition2Violated):
        laplace_beltrami(fixture_cometric("multiple_tangent"), Poly.gens(2)[0])


def test_one_dimensional_christoffel_and_riemann():
    t = Poly.gens(1)[0]
    g = Cometric([[1 - t ** 2]])
    b = curvature_bundle(g)
    assert b.christoffel[0][0][0].num * (1 - t ** 2) == t * b.christoffel[0][0][0].den
    assert b.riemann[0][0][0][0].is_zero


def test_disk_constant_sectional_curvature():
    # lowering the first index of R^l_{122} gives K det(g_low), with K = 1 on the round hemisphere
    g = fixture_cometric("disk")
    b = curvature_bundle(g)
    low = b.metric_down.entries
    R1212 = sum((low[0][l] * b.riemann[l][0][1][1] for l in range(2)), b.riemann[0][0][1][1] * 0)
    det = low[0][0] * low[1][1] - low[0][1] * low[1][0]
    assert R1212 == det


def test_product_model_ricci_flat():
    b = curvature_bundle(fixture_cometric("square"))
    assert all(c.is_zero for row in b.ricci for c in row)
