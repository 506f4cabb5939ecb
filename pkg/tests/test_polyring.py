from fractions import Fraction

import pytest
import sympy as sp
from sympy.polys.subresultants_qq_zz import res as sylvester_res
from hypothesis import assume, given, strategies as st

from conftest import SYMS, from_sympy, polys, small_fraction, to_sympy
from dopaudit.errors import StructuralError
from dopaudit.polyring import (
    Poly, QuadraticNumber, RatFun, associates, charpoly, determinant, exact_divide, gcd, inverse, is_squarefree,
    nullspace, rational_sqrt, resultant, squarefree_part, substitute_linear,
)
from dopaudit.polyring.roots import rational_roots, roots_up_to_quadratic, yun_multiplicities

x, y = Poly.gens(2)
X, Y = SYMS[:2]


# --- ring structure -------------------------------------------------------

@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == Poly.zero(2)


@given(polys(), polys())
def test_arithmetic_matches_sympy(a, b):
    assert to_sympy(a * b) == sp.expand(to_sympy(a) * to_sympy(b))
    assert to_sympy(a - b) == sp.expand(to_sympy(a) - to_sympy(b))


@given(polys(max_deg=4))
def test_derivative_matches_sympy(a):
    assert to_sympy(a.diff(0)) == sp.diff(to_sympy(a), X)
    assert to_sympy(a.diff(1)) == sp.diff(to_sympy(a), Y)


def test_grlex_leading_terms_and_degree():
    p = x ** 2 * y + 3 * y ** 3 - x + 5
    assert p.degree == 3
    assert p.order == 0
    assert p.leading_exponent() == (0, 3) or p.leading_exponent() == (2, 1)
    assert Poly.zero(2).degree == float("-inf")


# --- division, gcd, resultants -------------------------------------------

@given(polys(), polys(nonzero=True))
def test_exact_divide_product(a, b):
    assert exact_divide(a * b, b) == a


def test_exact_divide_rejects_non_multiple():
    assert exact_divide(x ** 2 + 1, x) is None


@given(polys(max_deg=2, max_terms=4, nonzero=True), polys(max_deg=2, max_terms=4, nonzero=True),
       polys(max_deg=2, max_terms=3, nonzero=True))
def test_gcd_agrees_with_sympy(a, b, c):
    g = gcd(a * c, b * c)
    ref = sp.gcd(to_sympy(a * c), to_sympy(b * c))
    assert associates(g, from_sympy(ref, 2))
    assert exact_divide(a * c, g) is not None
    assert exact_divide(b * c, g) is not None


@given(polys(max_deg=3, max_terms=4), polys(max_deg=3, max_terms=4))
def test_resultant_agrees_with_sympy(a, b):
    assume(a.degree_in(1) > 0 and b.degree_in(1) > 0)
    r = to_sympy(resultant(a, b, 1))
    # Sylvester-determinant convention; sympy's PRS resultant may differ by sign
    assert r == sp.expand(sylvester_res(to_sympy(a), to_sympy(b), Y))
    assert r in (sp.expand(sp.resultant(to_sympy(a), to_sympy(b), Y)),
                 sp.expand(-sp.resultant(to_sympy(a), to_sympy(b), Y)))


def test_resultant_vanishes_on_common_factor():
    f = x + y - 1
    assert resultant(f * (x - y), f * (y ** 2 + 2), 1).is_zero


@given(st.lists(polys(max_deg=1, max_terms=3), min_size=9, max_size=9))
def test_determinant_matches_sympy(entries):
    M = [entries[0:3], entries[3:6], entries[6:9]]
    ref = sp.Matrix([[to_sympy(p) for p in row] for row in M]).det()
    assert to_sympy(determinant(M)) == sp.expand(ref)


def test_squarefree_part_and_yun():
    p = (x - 1) ** 3 * (x + 2) * (y - x) ** 2
    assert associates(squarefree_part(p), (x - 1) * (x + 2) * (y - x))
    assert not is_squarefree(p)
    t = Poly.gens(1)[0]
    parts = dict(yun_multiplicities((t - 1) ** 3 * (t + 2) * (t - 5) ** 2))
    assert parts[1] == t + 2 and parts[2] == t - 5 and parts[3] == t - 1


def test_yun_over_quadratic_field():
    t = Poly.gens(1)[0]
    s3 = QuadraticNumber(0, 1, 3)
    lin = t - Poly.const(1, s3)
    parts = dict(yun_multiplicities(lin ** 2 * (t - 1)))
    assert parts[2] == lin and parts[1] == t - 1


# --- univariate roots -----------------------------------------------------

@given(st.lists(small_fraction, min_size=1, max_size=4, unique=True))
def test_rational_roots_recovered(rs):
    t = Poly.gens(1)[0]
    p = Poly.one(1)
    for r in rs:
        p = p * (t - r)
    assert sorted(rational_roots(p)) == sorted(rs)


def test_quadratic_roots_exact():
    t = Poly.gens(1)[0]
    roots, complete = roots_up_to_quadratic((t ** 2 - 3) * (t - Fraction(1, 2)) * (t ** 2 + 1))
    assert complete
    assert Fraction(1, 2) in roots
    assert QuadraticNumber(0, 1, 3) in roots and QuadraticNumber(0, -1, 3) in roots
    assert QuadraticNumber(0, 1, -1) in roots


def test_irreducible_cubic_reported_incomplete():
    t = Poly.gens(1)[0]
    roots, complete = roots_up_to_quadratic(t ** 3 - 2)
    assert roots == [] and not complete


# --- exact numbers --------------------------------------------------------

@given(small_fraction, small_fraction, small_fraction, small_fraction)
def test_quadratic_field_axioms(a, b, c, e):
    u, v = QuadraticNumber(a, b, 5), QuadraticNumber(c, e, 5)
    assert (u * v) - (v * u) == 0
    if u:
        assert u * u.inverse() == 1


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(12)) == QuadraticNumber(0, 2, 3)


# --- linear algebra -------------------------------------------------------

@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=2, max_size=3))
def test_nullspace_is_annihilated(rows):
    M = [[Fraction(v) for v in r] for r in rows]
    N = nullspace(M, 3)
    assert len(N) == 3 - sp.Matrix(rows).rank()
    for vec in N:
        assert all(sum(r[j] * vec[j] for j in range(3)) == 0 for r in M)


def test_inverse_and_charpoly():
    A = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    Ai = inverse(A)
    assert [[sum(A[i][k] * Ai[k][j] for k in range(2)) for j in range(2)] for i in range(2)] == [[1, 0], [0, 1]]
    t = Poly.gens(1)[0]
    assert charpoly(A) == t ** 2 - 3 * t + 1


def test_substitute_linear_matches_compose():
    p = x ** 2 - 3 * x * y + y
    M = [[Fraction(1), Fraction(2)], [Fraction(0), Fraction(-1)]]
    assert substitute_linear(p, M) == p.compose([x + 2 * y, -y])


# --- rational functions ---------------------------------------------------

def test_ratfun_reduces_and_differentiates():
    f = RatFun(x * (x + y), x * y)
    assert f == RatFun(x + y, y)
    d = RatFun(Poly.one(2), 1 - x ** 2).diff(0)
    assert d == RatFun(2 * x, (1 - x ** 2) ** 2)


def test_ratfun_zero_denominator_rejected():
    with pytest.raises(StructuralError):
        RatFun(x, Poly.zero(2))
