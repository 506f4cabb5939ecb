"""Shared strategies and converters; sympy serves as an independent algebra oracle."""

from __future__ import annotations

import os
from fractions import Fraction

import sympy as sp
from hypothesis import HealthCheck, settings, strategies as st

from dopaudit.polyring import Poly

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SYMS = sp.symbols("x y z")


def to_sympy(p: Poly, syms=SYMS):
    expr = sp.Integer(0)
    for e, c in p.terms.items():
        c = Fraction(c)
        term = sp.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            term *= s ** k
        expr += term
    return sp.expand(expr)


def from_sympy(expr, nvars: int, syms=SYMS) -> Poly:
    P = sp.Poly(sp.expand(expr), *syms[:nvars])
    return Poly(nvars, {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in P.terms()})


small_fraction = st.fractions(min_value=-4, max_value=4, max_denominator=6)
nonzero_fraction = small_fraction.filter(bool)


@st.composite
def exponents(draw, nvars, max_deg):
    total = draw(st.integers(0, max_deg))
    e = []
    for _ in range(nvars - 1):
        k = draw(st.integers(0, total))
        e.append(k)
        total -= k
    return tuple(e + [total])


@st.composite
def polys(draw, nvars=2, max_deg=3, max_terms=5, nonzero=False):
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    terms = {}
    for _ in range(n):
        coeff = nonzero_fraction if nonzero else small_fraction
        terms[draw(exponents(nvars, max_deg))] = draw(coeff)
    return Poly(nvars, terms)


def invertible_matrices(n=2, lo=-3, hi=3):
    entries = st.lists(st.integers(lo, hi), min_size=n * n, max_size=n * n)
    return (entries.map(lambda v: [[Fraction(v[i * n + j]) for j in range(n)] for i in range(n)])
            .filter(lambda M: sp.Matrix(M).det() != 0))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, line
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for i in sorted(RESULTS):
            terminalreporter.write_line(line(i, *RESULTS[i]))
