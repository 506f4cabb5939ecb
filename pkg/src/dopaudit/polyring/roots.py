"""Roots of univariate polynomials over Q and over quadratic fields.

Rational roots are found exactly (rational root test when the divisor
search is small, otherwise numerically located candidates that are then
verified exactly).  Irreducible quadratic factors are discovered by pairing
numerical roots and confirmed by exact division, so every reported root is
exact; only completeness can be lost, and it is always reported.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .numbers import QuadraticNumber, rational_sqrt
from .poly import Poly, exact_divide, gcd

MAX_DIVISOR_CANDIDATES = 20000


def univariate_coefficients(p: Poly, v: int | None = None) -> list:
    """Dense coefficient list, lowest degree first, of a polynomial in one variable."""
    vs = p.variables()
    if v is None:
        if len(vs) > 1:
            raise ValueError("polynomial is not univariate")
        v = next(iter(vs)) if vs else 0
    elif vs - {v}:
        raise ValueError("polynomial depends on other variables")
    if p.is_zero:
        return []
    coeffs = [0] * (p.degree_in(v) + 1)
    for e, c in p.terms.items():
        coeffs[e[v]] = c
    return coeffs


def from_coefficients(coeffs, nvars: int = 1, v: int = 0) -> Poly:
    terms = {}
    for k, c in enumerate(coeffs):
        e = [0] * nvars
        e[v] = k
        terms[tuple(e)] = c
    return Poly(nvars, terms)


def _integer_coefficients(coeffs: list[Fraction]) -> list[int]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g else ints


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _horner(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _numeric_roots(coeffs) -> np.ndarray:
    c = [float(x) for x in reversed(coeffs)]
    while c and c[0] == 0:
        c.pop(0)
    if len(c) <= 1:
        return np.array([], dtype=complex)
    return np.roots(c)


def rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots of a univariate polynomial with rational coefficients."""
    coeffs = univariate_coefficients(p)
    if not coeffs:
        raise ValueError("zero polynomial has every number as a root")
    coeffs = [Fraction(c) for c in coeffs]
    roots = []
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(coeffs) <= 1:
        return sorted(roots)
    ints = _integer_coefficients(coeffs)
    lead, const = ints[-1], ints[0]
    # rational root test when the candidate set is small enough
    if math.isqrt(abs(lead)) * math.isqrt(abs(const)) < 10 ** 6:
        dl, dc = _divisors(lead), _divisors(const)
        if len(dl) * len(dc) <= MAX_DIVISOR_CANDIDATES:
            for q in dl:
                for s in dc:
                    for r in (Fraction(s, q), Fraction(-s, q)):
                        if r not in roots and _horner(coeffs, r) == 0:
                            roots.append(r)
            return sorted(roots)
    # numeric candidates from the squarefree part, verified exactly
    sq = squarefree_univariate(from_coefficients(coeffs))
    for z in _numeric_roots(univariate_coefficients(sq)):
        if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
            continue
        r = Fraction(z.real).limit_denominator(abs(lead))
        if r not in roots and _horner(coeffs, r) == 0:
            roots.append(r)
    return sorted(roots)


def squarefree_univariate(p: Poly) -> Poly:
    vs = p.variables()
    if not vs:
        return p.monic()
    v = next(iter(vs))
    g = gcd(p, p.diff(v))
    return exact_divide(p, g).monic()


def _monic_linear(nvars, v, r):
    e1 = [0] * nvars
    e1[v] = 1
    return Poly(nvars, {tuple(e1): 1, (0,) * nvars: -r})


def quadratic_roots(s: Fraction, prod: Fraction):
    """Roots of ``t^2 - s t + prod`` as exact numbers (Fraction or QuadraticNumber)."""
    disc = s * s - 4 * prod
    root = rational_sqrt(disc)
    half = s / 2
    if isinstance(root, QuadraticNumber):
        return [QuadraticNumber(half, root.b / 2, root.r), QuadraticNumber(half, -root.b / 2, root.r)]
    return [half + root / 2, half - root / 2]


def roots_up_to_quadratic(p: Poly):
    """Exact roots of a univariate rational polynomial lying in Q or in quadratic fields.

    Returns ``(roots, complete)``; ``complete`` is False when a factor of
    degree >= 3 without rational or quadratic roots remains.  Multiple roots
    are reported once.
    """
    if p.is_constant:
        return [], True
    vs = p.variables()
    v = next(iter(vs))
    nv = p.nvars
    rest = squarefree_univariate(p)
    found = []
    for r in rational_roots(rest):
        found.append(r)
        rest = exact_divide(rest, _monic_linear(nv, v, r))
    if rest.degree > 0:
        rest, quad = _split_quadratics(rest, v)
        for s, prod in quad:
            found.extend(quadratic_roots(s, prod))
    return found, rest.is_constant


def _split_quadratics(p: Poly, v: int):
    nv = p.nvars
    factors = []
    changed = True
    while changed and p.degree >= 2:
        changed = False
        if p.degree == 2:
            c = univariate_coefficients(p, v)
            factors.append((-c[1] / c[2], c[0] / c[2]))
            return Poly.one(nv), factors
        zs = _numeric_roots(univariate_coefficients(p, v))
        for z1, z2 in itertools.combinations(zs, 2):
            s = Fraction(float((z1 + z2).real)).limit_denominator(10 ** 8)
            prod = Fraction(float((z1 * z2).real)).limit_denominator(10 ** 8)
            if abs((z1 + z2).imag) > 1e-6 or abs((z1 * z2).imag) > 1e-6:
                continue
            e2 = [0] * nv
            e2[v] = 2
            e1 = [0] * nv
            e1[v] = 1
            q = Poly(nv, {tuple(e2): 1, tuple(e1): -s, (0,) * nv: prod})
            d = exact_divide(p, q)
            if d is not None:
                factors.append((s, prod))
                p = d.monic()
                changed = True
                break
    return p, factors


def yun_multiplicities(p: Poly) -> list[tuple[int, Poly]]:
    """Squarefree decomposition ``p = c * prod f_k^k``; returns ``[(k, f_k)]`` with nonconstant f_k.

    Works over any coefficient field supported by :class:`Poly`.
    """
    vs = p.variables()
    if not vs:
        return []
    v = next(iter(vs))
    out = []
    a = p.monic()
    b = a.diff(v)
    c = gcd(a, b)
    w = exact_divide(a, c)
    k = 1
    while not w.is_constant:
        y = gcd(w, c)
        z = exact_divide(w, y)
        if not z.is_constant:
            out.append((k, z.monic()))
        w, c = y, exact_divide(c, y)
        k += 1
    return out
