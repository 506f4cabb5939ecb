"""Independent numeric cross-checks of the symbolic pipeline.

Two checks live here:

* :func:`fd_ricci` rebuilds the Ricci tensor from point values of the metric
  by nested central differences.  The differences are taken in exact rational
  arithmetic, so the only error is the O(h^2) truncation error and halving
  ``h`` divides it by about four.
* :func:`integrability_estimate` integrates ``|D|^{-1/2}`` over dyadic shells
  ``box(s) minus box(s/2)`` around a boundary point and reads the verdict off
  the ratios of successive shell integrals: ratios tending to 1 mean the
  cumulative integral grows without bound (at least logarithmically), ratios
  bounded below 1 mean a convergent geometric tail.

Neither check feeds back into symbolic verdicts; disagreements are reported as
CONTRADICTION findings.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import integrate

from .cometric import Cometric
from .errors import IllConditioned, StructuralError
from .polyring import Poly, gcd_list, inverse, resultant, squarefree_part
from .polyring.numbers import QuadraticNumber, to_complex
from .polyring.roots import rational_roots

DEFAULT_STEP = Fraction(1, 100000)
DEFAULT_TOLERANCE = 1e-6
CONVERGENT_MAX_RATIO = 0.95
DIVERGENT_MIN_RATIO = 0.97
# |D| >= SAMPLE_MARGIN keeps the O(h^2) truncation error of the default step below the tolerance
SAMPLE_MARGIN = Fraction(1, 5)
STENCIL_MARGIN = Fraction(1, 1000)


# ---------------------------------------------------------------- sampling

@dataclass(frozen=True)
class SamplePlan:
    points: tuple
    step: Fraction = DEFAULT_STEP
    tolerance: float = DEFAULT_TOLERANCE
    margin: Fraction = SAMPLE_MARGIN


def _positive_definite(M) -> bool:
    # leading principal minors, exact
    n = len(M)
    for k in range(1, n + 1):
        sub = [row[:k] for row in M[:k]]
        if _det(sub) <= 0:
            return False
    return True


def _det(M):
    M = [list(r) for r in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                for k in range(c, n):
                    M[r][k] -= f * M[c][k]
    return det


def cometric_at(g: Cometric, point) -> list[list[Fraction]]:
    return [[g[i, j].evaluate(point) for j in range(g.d)] for i in range(g.d)]


def sample_points(g: Cometric, count: int = 10, seed: int = 0, box: int = 3, denominator: int = 64,
                  margin: Fraction = SAMPLE_MARGIN, max_tries: int = 20000) -> SamplePlan:
    """Random rational points where ``g`` is positive definite and ``|D| >= margin``."""
    rng = random.Random(seed)
    D = g.boundary
    pts = []
    tries = 0
    while len(pts) < count:
        tries += 1
        if tries > max_tries:
            raise IllConditioned(f"found only {len(pts)} interior sample points")
        p = tuple(Fraction(rng.randint(-box * denominator, box * denominator), denominator) for _ in range(g.d))
        if abs(D.evaluate(p)) < margin:
            continue
        if _positive_definite(cometric_at(g, p)):
            pts.append(p)
    return SamplePlan(tuple(pts), margin=margin)


# ---------------------------------------------------------------- finite differences

class _MetricSampler:
    def __init__(self, g: Cometric, margin: Fraction):
        self.g = g
        self.margin = margin
        self.cache = {}
        self.sign = None

    def lower(self, p):
        p = tuple(p)
        if p not in self.cache:
            up = cometric_at(self.g, p)
            det = self.g.boundary.evaluate(p)
            s = (det > 0) - (det < 0)
            if s == 0 or abs(det) < self.margin or (self.sign is not None and s != self.sign):
                raise IllConditioned(f"stencil point {tuple(map(float, p))} is too close to the boundary")
            self.sign = s
            self.cache[p] = inverse(up)
        return self.cache[p]


def _shift(p, i, delta):
    q = list(p)
    q[i] += delta
    return tuple(q)


def _christoffel_at(S: _MetricSampler, p, h):
    d = S.g.d
    up = cometric_at(S.g, p)
    dg = []  # dg[i][a][b] = d_i g_ab
    for i in range(d):
        plus, minus = S.lower(_shift(p, i, h)), S.lower(_shift(p, i, -h))
        dg.append([[(plus[a][b] - minus[a][b]) / (2 * h) for b in range(d)] for a in range(d)])
    gam = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for k in range(d):
        for i in range(d):
            for j in range(i, d):
                s = Fraction(0)
                for m in range(d):
                    if up[k][m]:
                        s += up[k][m] * (dg[i][j][m] + dg[j][i][m] - dg[m][i][j])
                gam[k][i][j] = gam[k][j][i] = s / 2
    return gam


def fd_ricci_exact(g: Cometric, point: Sequence, h: Fraction = DEFAULT_STEP,
                   margin: Fraction = STENCIL_MARGIN) -> list[list[Fraction]]:
    """Ricci tensor R_jk at ``point`` from nested central differences, in exact arithmetic."""
    d = g.d
    p = tuple(Fraction(c) for c in point)
    h = Fraction(h)
    if h <= 0:
        raise StructuralError("finite-difference step must be positive")
    S = _MetricSampler(g, margin)
    S.lower(p)
    gam = _christoffel_at(S, p, h)
    dgam = []
    for i in range(d):
        gp = _christoffel_at(S, _shift(p, i, h), h)
        gm = _christoffel_at(S, _shift(p, i, -h), h)
        dgam.append([[[(gp[l][a][b] - gm[l][a][b]) / (2 * h) for b in range(d)] for a in range(d)]
                     for l in range(d)])
    ric = [[Fraction(0)] * d for _ in range(d)]
    for j in range(d):
        for k in range(d):
            s = Fraction(0)
            for l in range(d):
                # R^l_ljk with i = l
                s += dgam[l][l][j][k] - dgam[j][l][l][k]
                for m in range(d):
                    s += gam[l][l][m] * gam[m][j][k] - gam[l][j][m] * gam[m][l][k]
            ric[j][k] = s
    return ric


def fd_ricci(g: Cometric, point: Sequence, h: Fraction = DEFAULT_STEP) -> np.ndarray:
    return np.array([[float(c) for c in row] for row in fd_ricci_exact(g, point, h)])


@dataclass(frozen=True)
class CurvatureComparison:
    point: tuple
    deviation: float
    deviation_half_step: float
    scale: float

    @property
    def relative(self) -> float:
        return self.deviation / self.scale

    @property
    def halving_ratio(self) -> float | None:
        if self.deviation_half_step == 0:
            return None
        return self.deviation / self.deviation_half_step


def compare_ricci(g: Cometric, symbolic_ricci, point, h: Fraction = DEFAULT_STEP) -> CurvatureComparison:
    """Max-norm deviation between symbolic and finite-difference Ricci at ``point``.

    The scale is the symbolic value's max norm, or the lower metric's when the
    symbolic Ricci vanishes at the point.
    """
    p = tuple(Fraction(c) for c in point)
    d = g.d
    sym = [[symbolic_ricci[i][j].evaluate(p) for j in range(d)] for i in range(d)]

    def dev(step):
        fd = fd_ricci_exact(g, p, step)
        return max(abs(fd[i][j] - sym[i][j]) for i in range(d) for j in range(d))

    scale = max(abs(c) for row in sym for c in row)
    if scale == 0:
        scale = max(abs(c) for row in inverse(cometric_at(g, p)) for c in row)
    return CurvatureComparison(p, float(dev(h)), float(dev(h / 2)), float(scale))


# ---------------------------------------------------------------- integrability

@dataclass(frozen=True)
class IntegrabilityEstimate:
    verdict: str            # CONVERGENT, DIVERGENT, INCONCLUSIVE
    center: tuple
    shell_sizes: tuple
    increments: tuple
    ratios: tuple
    region_sign: int | None

    @property
    def partial_sums(self) -> tuple:
        out, s = [], 0.0
        for v in reversed(self.increments):
            s += v
            out.append(s)
        return tuple(reversed(out))


def _real_roots(coeffs_high_first, lo, hi):
    c = np.trim_zeros(np.asarray(coeffs_high_first, dtype=float), "f")
    if len(c) <= 1:
        return []
    r = np.roots(c)
    out = sorted(float(z.real) for z in r if abs(z.imag) <= 1e-9 * max(1.0, abs(z)) and lo < z.real < hi)
    return out


def _exact_scalar(c):
    if isinstance(c, (Fraction, QuadraticNumber)):
        return c
    if isinstance(c, float):
        return Fraction(c)
    return Fraction(c)


class _Plane:
    """Numeric view of a bivariate polynomial in coordinates centred at ``center``.

    The translation is done exactly before converting to floats, so values near
    the centre carry no cancellation error from large absolute coordinates.
    """

    def __init__(self, D: Poly, center):
        exact = tuple(_exact_scalar(c) for c in center)
        cx = to_complex(exact[0]).real
        Dt = D.translate(exact)
        sf = squarefree_part(D)
        sft = sf.translate(exact)
        self.terms = _real_terms(Dt)
        self.deg_y = Dt.degree_in(1)
        # components of multiplicity >= 2: |D|^{-1/2} decays like 1/distance across them
        rep = gcd_list([D, D.diff(0), D.diff(1)])
        self.repeated = _real_terms(squarefree_part(rep).translate(exact)) if not rep.is_constant else []
        self.sf_terms = _real_terms(sft)
        self.sf_deg_y = sft.degree_in(1)
        self.sf_deg_x = sft.degree_in(0)
        lead = sf.coefficients_in(1).get(sf.degree_in(1), Poly.zero(2))
        disc = resultant(sf, sf.diff(1), 1) if sf.degree_in(1) > 0 else Poly.zero(2)
        self.x_critical = []
        for p in (disc, lead):
            if not p.is_zero and not p.is_constant:
                # exact squarefree part first: clustered numeric roots of repeated factors go complex
                p = squarefree_part(p)
                cs = [float(p.terms.get((k, 0), 0)) for k in range(p.degree_in(0), -1, -1)]
                self.x_critical.extend(float(z.real) - cx for z in np.roots(cs) if abs(z.imag) < 1e-7)

    def y_coeffs(self, terms, deg, x):
        cs = [0.0] * (deg + 1)
        for e, c in terms:
            cs[e[1]] += c * x ** e[0]
        return cs[::-1]

    def y_breaks(self, x, lo, hi):
        return _real_roots(self.y_coeffs(self.sf_terms, self.sf_deg_y, x), lo, hi)

    def edge_crossings(self, y, lo, hi):
        """x where the curve crosses the horizontal line at height ``y``."""
        cs = [0.0] * (self.sf_deg_x + 1)
        for e, c in self.sf_terms:
            cs[e[0]] += c * y ** e[1]
        return _real_roots(cs[::-1], lo, hi)

    def x_breaks(self, lo, hi, edges=()):
        pts = {x for x in self.x_critical if lo < x < hi}
        for y in edges:
            pts.update(self.edge_crossings(y, lo, hi))
        if lo < 0 < hi:
            pts.add(0.0)
        return sorted(pts)

    def value(self, x, y):
        return sum(c * x ** e[0] * y ** e[1] for e, c in self.terms)

    def repeated_component_hits(self, r, sign) -> bool:
        """Does a repeated component cross the square of radius ``r`` next to the sign region?"""
        if not self.repeated:
            return False
        deg = max(max(e) for e, _ in self.repeated)
        delta = 1e-6 * r
        for fixed in (r, -r):
            for axis in (0, 1):
                cs = [0.0] * (deg + 1)
                for e, c in self.repeated:
                    cs[e[1 - axis]] += c * fixed ** e[axis]
                for t in _real_roots(cs[::-1], -r, r):
                    for side in (delta, -delta):
                        q = (fixed, t + side) if axis == 0 else (t + side, fixed)
                        v = self.value(*q)
                        if v != 0 and (sign is None or (v > 0) == (sign > 0)):
                            return True
        return False


def _real_terms(P: Poly):
    return [(e, to_complex(c).real) for e, c in P.terms.items()]


def _quad(f, a, b, points):
    """Integral over [a, b] split at ``points``; each piece uses y = a + (b - a)(1 - cos t)/2.

    The substitution turns inverse-square-root endpoint singularities (simple
    zeros of D at the breakpoints) into bounded integrands.
    """
    edges = [a] + [p for p in points if a < p < b] + [b]
    total = 0.0
    with np.errstate(all="ignore"), warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for lo, hi in zip(edges, edges[1:]):
            half = (hi - lo) / 2

            def g(t, lo=lo, half=half):
                return f(lo + half * (1 - math.cos(t))) * half * math.sin(t)

            total += integrate.quad(g, 0.0, math.pi, limit=100, epsabs=0.0, epsrel=1e-8)[0]
    return total


def _density(v, sign):
    if v == 0 or (sign is not None and (v > 0) != (sign > 0)):
        return 0.0
    return abs(v) ** -0.5


def _horner(cs, y):
    acc = 0.0
    for c in cs:
        acc = acc * y + c
    return acc


def _rect_integral(P: _Plane, x0, x1, y0, y1, sign):
    def inner(x):
        cs = P.y_coeffs(P.terms, P.deg_y, x)
        return _quad(lambda y: _density(_horner(cs, y), sign), y0, y1, P.y_breaks(x, y0, y1))

    return _quad(inner, x0, x1, P.x_breaks(x0, x1, (y0, y1)))


def _shell_2d(P: _Plane, s, sign):
    if P.repeated_component_hits(0.75 * s, sign):
        return math.inf
    h = s / 2
    return (_rect_integral(P, -s, s, h, s, sign) + _rect_integral(P, -s, s, -s, -h, sign)
            + _rect_integral(P, -s, -h, -h, h, sign) + _rect_integral(P, h, s, -h, h, sign))


def _shell_1d(D: Poly, c, s, sign):
    Dt = D.translate((_exact_scalar(c),))
    cs = [to_complex(Dt.terms.get((k,), 0)).real for k in range(Dt.degree, -1, -1)]

    def f(x):
        return _density(_horner(cs, x), sign)

    roots = _real_roots(cs, -s, s) if Dt.degree > 0 else []
    return _quad(f, -s, -s / 2, roots) + _quad(f, s / 2, s, roots)


def _newton_project(D: Poly, seed):
    p = np.array([float(c) for c in seed])
    grads = [D.diff(i) for i in range(D.nvars)]
    for _ in range(100):
        v = _eval_float(D, p)
        gvec = np.array([_eval_float(gi, p) for gi in grads])
        n2 = float(gvec @ gvec)
        if n2 == 0:
            break
        step = v / n2 * gvec
        p = p - step
        if np.linalg.norm(step) < 1e-14:
            break
    return tuple(p)


def _eval_float(P: Poly, p):
    return sum(float(c) * math.prod(x ** k for x, k in zip(p, e)) for e, c in P.terms.items())


def default_center(D: Poly, seed=None):
    """Nearest real singular point of the reduced curve, else a Newton projection of the seed."""
    from .resolve2d import is_real_point, singular_points

    origin = tuple(0.0 for _ in range(D.nvars))
    ref = np.array([float(c) for c in seed]) if seed is not None else np.array(origin)
    def dist(p):
        return float(np.linalg.norm(np.array([to_complex(c).real for c in p]) - ref))

    if D.nvars == 2:
        sp = singular_points(squarefree_part(D))
        real = [p for p in sp.points if is_real_point(p)]
        if real:
            return min(real, key=dist)
    if D.nvars == 1:
        exact = [(r,) for r in rational_roots(D)] if D.degree > 0 else []
        cs = [float(D.terms.get((k,), 0)) for k in range(D.degree, -1, -1)]
        approx = [(float(z.real),) for z in np.roots(cs) if abs(z.imag) < 1e-9] if D.degree > 0 else []
        if exact or approx:
            return min(exact or approx, key=dist)
    return _newton_project(D, ref)


def integrability_estimate(D: Poly, region_seed=None, levels: int = 6, center=None,
                           size: float = 0.5) -> IntegrabilityEstimate:
    """Heuristic local integrability of ``|D|^{-1/2}`` near a boundary point.

    ``region_seed`` restricts the integrand to the sign region of the seed;
    ``None`` integrates over the whole neighbourhood.  ``levels`` shells of
    sizes ``size, size/2, ...`` are used; the verdict looks at the last three
    shell-to-shell ratios.
    """
    if D.nvars not in (1, 2):
        raise StructuralError("integrability estimate supports one or two variables")
    if levels < 4:
        raise StructuralError("at least four refinement levels are required")
    sign = None
    if region_seed is not None:
        v = D.evaluate([Fraction(c) for c in region_seed])
        if v == 0:
            raise StructuralError("region seed lies on the boundary divisor")
        sign = 1 if v > 0 else -1
    if center is None:
        center = default_center(D, region_seed)
    sizes = tuple(size / 2 ** k for k in range(levels))
    if D.nvars == 2:
        P = _Plane(D, center)
        incs = tuple(_shell_2d(P, s, sign) for s in sizes)
    else:
        incs = tuple(_shell_1d(D, center[0], s, sign) for s in sizes)
    ratios = tuple(_ratio(incs[k], incs[k + 1]) for k in range(levels - 1))
    tail = ratios[-3:]
    if any(math.isinf(v) for v in incs[-3:]):
        verdict = "DIVERGENT"
    elif all(r <= CONVERGENT_MAX_RATIO for r in tail):
        verdict = "CONVERGENT"
    elif all(r >= DIVERGENT_MIN_RATIO for r in tail):
        verdict = "DIVERGENT"
    else:
        verdict = "INCONCLUSIVE"
    return IntegrabilityEstimate(verdict, tuple(to_complex(_exact_scalar(c)).real for c in center), sizes, incs,
                                 ratios, sign)


def _ratio(a, b):
    if math.isinf(b):
        return math.inf
    if math.isinf(a):
        return 0.0
    return b / a if a > 0 else math.inf


@dataclass
class OracleFindings:
    curvature: list = field(default_factory=list)
    integrability: list = field(default_factory=list)  # (point label, ledger integrable, estimate)
    contradictions: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def contradiction(self) -> bool:
        return bool(self.contradictions)


def agreement(ledger_integrable: bool, estimate: IntegrabilityEstimate) -> bool:
    expected = "CONVERGENT" if ledger_integrable else "DIVERGENT"
    return estimate.verdict == expected
