import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dopaudit.errors import IllConditioned, StructuralError
from dopaudit.modelio import fixture_cometric
from dopaudit.oracle import (
    CONVERGENT_MAX_RATIO, DEFAULT_TOLERANCE, DIVERGENT_MIN_RATIO, SAMPLE_MARGIN, agreement, compare_ricci,
    default_center, fd_ricci, fd_ricci_exact, integrability_estimate, sample_points,
)
from dopaudit.polyring import Poly
from dopaudit.resolve2d import curve_fixtures
from dopaudit.tensorcalc import curvature_bundle

x, y = Poly.gens(2)
t = Poly.gens(1)[0]


def test_sample_points_are_interior_and_reproducible():
    g = fixture_cometric("disk")
    a = sample_points(g, 10, seed=3)
    b = sample_points(g, 10, seed=3)
    assert a.points == b.points
    assert all(g.boundary.evaluate(p) >= SAMPLE_MARGIN for p in a.points)
    assert sample_points(g, 10, seed=4).points != a.points


def test_sample_points_give_up_on_empty_region():
    g = fixture_cometric("disk").scaled(-1)
    with pytest.raises(IllConditioned):
        sample_points(g, 3, max_tries=200)


@pytest.mark.parametrize("name", ["disk", "square", "deltoid", "b2", "cube"])
def test_finite_difference_ricci_agrees(name):
    g = fixture_cometric(name)
    ric = curvature_bundle(g).ricci
    for p in sample_points(g, 3, seed=1).points:
        c = compare_ricci(g, ric, p)
        assert c.relative <= DEFAULT_TOLERANCE
        # flat product blocks cancel exactly in rational arithmetic
        assert c.deviation == 0 or 3.0 <= c.halving_ratio <= 5.0


def test_fd_ricci_float_view():
    g = fixture_cometric("disk")
    p = (Fraction(1, 4), Fraction(-1, 8))
    assert np.allclose(fd_ricci(g, p), [[float(c) for c in r] for r in fd_ricci_exact(g, p)])


def test_fd_rejects_bad_step():
    with pytest.raises(StructuralError):
        fd_ricci_exact(fixture_cometric("disk"), (0, 0), h=Fraction(0))


def test_one_dimensional_exponents_match_closed_form():
    # shell ratio of int |t|^{-k/2} over [s/2, s] is 2^{k/2 - 1}
    for k, verdict in ((1, "CONVERGENT"), (2, "DIVERGENT"), (3, "DIVERGENT")):
        est = integrability_estimate(t ** k, levels=5)
        assert all(math.isclose(r, 2 ** (k / 2 - 1), rel_tol=1e-6) for r in est.ratios)
        assert est.verdict == verdict


def test_normal_crossing_shells_match_closed_form():
    # int over box(s) minus box(s/2) of |xy|^{-1/2} is 8 s
    est = integrability_estimate(x * y, levels=4, center=(0, 0))
    for s, inc in zip(est.shell_sizes, est.increments):
        assert math.isclose(inc, 8 * s, rel_tol=1e-6)


@pytest.mark.parametrize("name", sorted(curve_fixtures()))
def test_curve_verdicts_agree_with_ledger(name):
    f, _, integrable = curve_fixtures()[name]
    est = integrability_estimate(f, levels=6, center=(0, 0))
    assert agreement(integrable, est), est.ratios


def test_multiple_tangent_seeded_region_diverges():
    D = fixture_cometric("multiple_tangent").boundary
    est = integrability_estimate(D, region_seed=(0, Fraction(1, 2)))
    assert est.verdict == "DIVERGENT"
    assert est.region_sign == 1
    assert min(est.ratios[-3:]) >= DIVERGENT_MIN_RATIO


def test_seed_on_divisor_rejected():
    with pytest.raises(StructuralError):
        integrability_estimate(x * y, region_seed=(0, 1))


def test_levels_lower_bound():
    with pytest.raises(StructuralError):
        integrability_estimate(x * y, levels=3)


def test_default_center_picks_nearest_singular_point():
    D = fixture_cometric("square").boundary
    c = default_center(D, (Fraction(9, 10), Fraction(-9, 10)))
    assert tuple(c) == (1, -1)


@settings(max_examples=10)
@given(n=st.integers(1, 6), a=st.fractions(-2, 2, max_denominator=4), b=st.fractions(-2, 2, max_denominator=4))
def test_a_series_convergent_anywhere(n, a, b):
    f = (y - b) ** 2 - (x - a) ** (n + 1)
    est = integrability_estimate(f, levels=6, center=(a, b))
    assert est.verdict == "CONVERGENT"
    assert max(est.ratios[-3:]) <= CONVERGENT_MAX_RATIO


def test_partial_sums_monotone():
    est = integrability_estimate(y ** 2 - x ** 3, levels=5, center=(0, 0))
    s = est.partial_sums
    assert all(s[k] >= s[k + 1] for k in range(len(s) - 1))


def test_flat_metric_fd_is_zero():
    from dopaudit.cometric import Cometric

    one, zero = Poly.one(2), Poly.zero(2)
    fd = fd_ricci(Cometric([[one, zero], [zero, one]]), (Fraction(1, 3), Fraction(2, 7)))
    assert np.abs(fd).max() <= 1e-9


def test_disk_fd_at_quarter_point():
    g = fixture_cometric("disk")
    c = compare_ricci(g, curvature_bundle(g).ricci, (Fraction(1, 4), Fraction(1, 4)))
    assert c.relative <= DEFAULT_TOLERANCE


def test_product_fd_zero():
    g = fixture_cometric("square")
    assert np.abs(fd_ricci(g, (Fraction(1, 3), Fraction(1, 5)))).max() <= 1e-9


def test_half_line_convergent():
    est = integrability_estimate(x, region_seed=(Fraction(1, 2), 0), levels=5)
    assert est.verdict == "CONVERGENT"
    assert integrability_estimate(x ** 2, region_seed=(Fraction(1, 2), 0), levels=5).verdict == "DIVERGENT"
