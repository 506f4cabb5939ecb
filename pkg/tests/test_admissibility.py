from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import invertible_matrices, small_fraction
from dopaudit.admissibility import (
    UNVERIFIED_HYPOTHESES, boundary_polynomial, check_entry_degrees, condition2_check, full_admissibility,
    squarefree_check,
)
from dopaudit.cometric import Cometric
from dopaudit.errors import StructuralError
from dopaudit.modelio import fixture_cometric, parse_model
from dopaudit.polyring import Poly

x, y = Poly.gens(2)


def test_disk_quotients_exact():
    ok, qs = condition2_check(fixture_cometric("disk"))
    assert ok
    assert qs == (-2 * x, -2 * y)


def test_disk_boundary_not_maximal():
    adm = full_admissibility(fixture_cometric("disk"))
    assert adm.boundary_poly == 1 - x ** 2 - y ** 2
    assert adm.boundary_degree == 2 and not adm.boundary_degree_maximal
    assert adm.admissible and not adm.admissible_maximal


@pytest.mark.parametrize("name", ["square", "deltoid", "cube"])
def test_maximal_fixtures_admissible(name):
    adm = full_admissibility(fixture_cometric(name))
    assert adm.admissible_maximal
    assert adm.unverified == UNVERIFIED_HYPOTHESES


def test_multiple_tangent_fails_squarefree_and_divisibility():
    adm = full_admissibility(fixture_cometric("multiple_tangent"))
    assert adm.boundary_poly == y ** 2 * (y - x ** 2)
    assert not adm.squarefree_ok
    assert not adm.condition2_ok
    assert not adm.admissible


def test_cubic_entry_parses_but_fails_degree_check():
    m = parse_model("dim 2\nvars x y\ng 1 1 = x^3\ng 1 2 = 0\ng 2 2 = 1\n")
    assert not check_entry_degrees(m.cometric())


def test_squarefree_of_zero_rejected():
    with pytest.raises(StructuralError):
        squarefree_check(Poly.zero(2))


def test_boundary_polynomial_degree_flag():
    D, deg, maximal = boundary_polynomial(fixture_cometric("square"))
    assert deg == 4 and maximal


@given(P=invertible_matrices(2), b=st.lists(small_fraction, min_size=2, max_size=2),
       name=st.sampled_from(["disk", "square", "deltoid", "multiple_tangent"]))
def test_condition2_invariant_under_affine_changes(P, b, name):
    g = fixture_cometric(name)
    h = g.transform(P, b)
    assert condition2_check(h)[0] == condition2_check(g)[0]
    assert full_admissibility(h).squarefree_ok == full_admissibility(g).squarefree_ok


def test_condition2_quotients_transform_covariantly():
    # D' = det(P)^-2 D(Px + b), so q' = P^{-1} q(Px + b)
    P = [[Fraction(1), Fraction(2)], [Fraction(-1), Fraction(1)]]
    b = [Fraction(1, 2), Fraction(-1)]
    g = fixture_cometric("disk")
    _, q = condition2_check(g)
    _, q2 = condition2_check(g.transform(P, b))
    det = P[0][0] * P[1][1] - P[0][1] * P[1][0]
    Pinv = [[P[1][1] / det, -P[0][1] / det], [-P[1][0] / det, P[0][0] / det]]
    images = [P[0][0] * x + P[0][1] * y + b[0], P[1][0] * x + P[1][1] * y + b[1]]
    qs = [p.compose(images) for p in q]
    assert list(q2) == [qs[0] * Pinv[i][0] + qs[1] * Pinv[i][1] for i in range(2)]


def test_degenerate_cometric_reports_not_admissible():
    adm = full_admissibility(Cometric([[x, x], [x, x]]))
    assert adm.boundary_poly.is_zero and not adm.admissible
