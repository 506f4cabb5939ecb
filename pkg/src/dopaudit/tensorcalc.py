"""Exact tensor calculus for polynomial cometrics.

Conventions (all indices 0-based in code):

* ``christoffel[k][i][j]`` is Gamma^k_{ij} = 1/2 g^{ks}(d_i g_{js} + d_j g_{is} - d_s g_{ij}),
  the standard Levi-Civita connection.
* ``riemann[l][i][j][k]`` is R^l_{ijk} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
  + Gamma^l_{is} Gamma^s_{jk} - Gamma^l_{js} Gamma^s_{ik}, i.e. the l-component of
  R(d_i, d_j) d_k.
* ``ricci[j][k]`` is the trace sum_s R^s_{sjk}, which is positive on the round sphere.
* ``raised[i][j]`` is R^{ij} = g^{ik} g^{jl} R_{kl}.

Every entry of ``g_{ij}`` is ``adj(g)_{ij} / D``, so all tensors are computed
internally as polynomial numerators over powers of ``D`` and reduced once at
the end.
"""

from __future__ import annotations

from dataclasses import dataclass

from .admissibility import condition2_check
from .cometric import Cometric
from .errors import Condition2Violated, DegenerateMetric
from .polyring import NEG_INF, Poly, RatFun, adjugate, exact_divide, gcd

__all__ = [
    "Cometric", "MetricDown", "CurvatureBundle", "DegreeAudit", "RaisedRicciReport",
    "LaplaceReport", "inverse_metric", "christoffel", "riemann", "ricci", "raise_ricci",
    "curvature_bundle", "degree_audit", "laplace_beltrami", "DEGREE_BOUNDS",
]

DEGREE_BOUNDS = {
    "metric_down": -2,
    "christoffel": -1,
    "riemann": -2,
    "ricci": -2,
    "raised_ricci": 2,
}


def reduce_over_power(num: Poly, D: Poly, k: int) -> RatFun:
    """Reduce ``num / D**k``; every prime factor of the denominator divides ``D``."""
    if num.is_zero:
        return RatFun(Poly.zero(num.nvars))
    while k > 0:
        q = exact_divide(num, D)
        if q is None:
            break
        num, k = q, k - 1
    if k == 0:
        return RatFun(num, Poly.one(num.nvars), reduced=True)
    if gcd(num, D).is_constant:
        return RatFun(num, D ** k, reduced=True)
    return RatFun(num, D ** k)


class _Powers:
    """Arithmetic on pairs (numerator, k) standing for numerator / D**k."""

    def __init__(self, D: Poly):
        self.D = D
        self.dD = [D.diff(i) for i in range(D.nvars)]
        self._pow = {0: Poly.one(D.nvars), 1: D}

    def power(self, k):
        if k not in self._pow:
            self._pow[k] = self.power(k - 1) * self.D
        return self._pow[k]

    def lift(self, a, k):
        num, ka = a
        return num * self.power(k - ka) if k > ka else num

    def diff(self, a, i):
        num, k = a
        if k == 0:
            return num.diff(i), 0
        return num.diff(i) * self.D - num * self.dD[i] * k, k + 1


@dataclass(frozen=True)
class MetricDown:
    entries: tuple
    boundary: Poly

    def identity_check(self, g: Cometric) -> bool:
        d = g.d
        for i in range(d):
            for j in range(d):
                s = RatFun(Poly.zero(d))
                for k in range(d):
                    s = s + self.entries[k][j] * g[i, k]
                if s != (1 if i == j else 0):
                    return False
        return True


def inverse_metric(g: Cometric) -> MetricDown:
    D = g.boundary
    if D.is_zero:
        raise DegenerateMetric("det(g^{ij}) vanishes identically")
    adj = adjugate([list(r) for r in g.entries])
    entries = tuple(tuple(reduce_over_power(adj[i][j], D, 1) for j in range(g.d)) for i in range(g.d))
    return MetricDown(entries, D)


def _tensor_numerators(g: Cometric):
    """Numerators (over fixed powers of D) of Gamma, Riemann, Ricci and raised Ricci."""
    d = g.d
    D = g.boundary
    if D.is_zero:
        raise DegenerateMetric("det(g^{ij}) vanishes identically")
    P = _Powers(D)
    adj = adjugate([list(r) for r in g.entries])
    # d_s g_{ij} over D^2
    dg = [[[P.diff((adj[i][j], 1), s)[0] for s in range(d)] for j in range(d)] for i in range(d)]
    gamma = [[[None] * d for _ in range(d)] for _ in range(d)]
    for k in range(d):
        for i in range(d):
            for j in range(i, d):
                acc = Poly.zero(d)
                for s in range(d):
                    gks = g[k, s]
                    if gks.is_zero:
                        continue
                    acc = acc + gks * (dg[j][s][i] + dg[i][s][j] - dg[i][j][s])
                acc = acc / 2
                gamma[k][i][j] = gamma[k][j][i] = acc
    # Gamma over D^2; d Gamma over D^3, products over D^4
    dgamma = [[[[P.diff((gamma[l][j][k], 2), i)[0] for i in range(d)] for k in range(d)]
               for j in range(d)] for l in range(d)]
    riem = [[[[None] * d for _ in range(d)] for _ in range(d)] for _ in range(d)]
    for l in range(d):
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    if i == j:
                        riem[l][i][j][k] = Poly.zero(d)
                        continue
                    if j < i:
                        riem[l][i][j][k] = -riem[l][j][i][k]
                        continue
                    acc = (dgamma[l][j][k][i] - dgamma[l][i][k][j]) * D
                    for s in range(d):
                        acc = acc + gamma[l][i][s] * gamma[s][j][k] - gamma[l][j][s] * gamma[s][i][k]
                    riem[l][i][j][k] = acc
    ric = [[None] * d for _ in range(d)]
    for j in range(d):
        for k in range(d):
            acc = Poly.zero(d)
            for s in range(d):
                acc = acc + riem[s][s][j][k]
            ric[j][k] = acc
    raised = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            acc = Poly.zero(d)
            for k in range(d):
                if g[i, k].is_zero:
                    continue
                for l in range(d):
                    if g[j, l].is_zero or ric[k][l].is_zero:
                        continue
                    acc = acc + g[i, k] * g[j, l] * ric[k][l]
            raised[i][j] = acc
    return D, gamma, riem, ric, raised


@dataclass(frozen=True)
class CurvatureBundle:
    metric_down: MetricDown
    christoffel: tuple
    riemann: tuple
    ricci: tuple
    raised: tuple

    @property
    def d(self) -> int:
        return len(self.ricci)

    def symmetry_report(self) -> dict[str, bool]:
        d = self.d
        r = range(d)
        gamma_sym = all(self.christoffel[k][i][j] == self.christoffel[k][j][i] for k in r for i in r for j in r)
        antisym = all(self.riemann[l][i][j][k] == -self.riemann[l][j][i][k] for l in r for i in r for j in r for k in r)
        ric_sym = all(self.ricci[i][j] == self.ricci[j][i] for i in r for j in r)
        bianchi = all(
            (self.riemann[l][i][j][k] + self.riemann[l][j][k][i] + self.riemann[l][k][i][j]).is_zero
            for l in r for i in r for j in r for k in r
        )
        return {
            "christoffel_symmetric": gamma_sym,
            "riemann_antisymmetric": antisym,
            "ricci_symmetric": ric_sym,
            "first_bianchi": bianchi,
        }


def curvature_bundle(g: Cometric) -> CurvatureBundle:
    D, gamma, riem, ric, raised = _tensor_numerators(g)
    d = g.d
    rng = range(d)
    red_cache: dict = {}

    def red(num, k):
        key = (num, k)
        if key not in red_cache:
            red_cache[key] = reduce_over_power(num, D, k)
        return red_cache[key]

    return CurvatureBundle(
        metric_down=inverse_metric(g),
        christoffel=tuple(tuple(tuple(red(gamma[k][i][j], 2) for j in rng) for i in rng) for k in rng),
        riemann=tuple(tuple(tuple(tuple(red(riem[l][i][j][k], 4) for k in rng) for j in rng) for i in rng)
                      for l in rng),
        ricci=tuple(tuple(red(ric[i][j], 4) for j in rng) for i in rng),
        raised=tuple(tuple(red(raised[i][j], 4) for j in rng) for i in rng),
    )


def christoffel(g: Cometric):
    """Gamma^k_{ij} as reduced rational functions, indexed ``[k][i][j]``."""
    D, gamma, *_ = _tensor_numerators(g)
    rng = range(g.d)
    return tuple(tuple(tuple(reduce_over_power(gamma[k][i][j], D, 2) for j in rng) for i in rng) for k in rng)


def riemann(gamma) -> tuple:
    """R^l_{ijk} from Christoffel symbols by plain rational-function arithmetic."""
    d = len(gamma)
    rng = range(d)
    out = []
    for l in rng:
        L = []
        for i in rng:
            I = []
            for j in rng:
                J = []
                for k in rng:
                    val = gamma[l][j][k].diff(i) - gamma[l][i][k].diff(j)
                    for s in rng:
                        val = val + gamma[l][i][s] * gamma[s][j][k] - gamma[l][j][s] * gamma[s][i][k]
                    J.append(val)
                I.append(tuple(J))
            L.append(tuple(I))
        out.append(tuple(L))
    return tuple(out)


def ricci(riem) -> tuple:
    """R_{jk} = sum_s R^s_{sjk}."""
    d = len(riem)
    rng = range(d)
    out = []
    for j in rng:
        row = []
        for k in rng:
            acc = riem[0][0][j][k]
            for s in range(1, d):
                acc = acc + riem[s][s][j][k]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class RaisedRicciReport:
    entries: tuple
    polynomial: tuple
    degree_ok: tuple
    boundary_degree_maximal: bool

    @property
    def all_polynomial(self) -> bool:
        return all(all(r) for r in self.polynomial)

    @property
    def all_degree_ok(self) -> bool:
        return all(all(r) for r in self.degree_ok)

    @property
    def notes(self) -> list[str]:
        out = []
        if not self.boundary_degree_maximal:
            out.append("boundary degree is not maximal (deg D < 2d); regularity of R^{ij} is not guaranteed")
        if not self.all_polynomial:
            out.append("R^{ij} has a non-constant denominator")
        return out


def raise_ricci(g: Cometric, ric) -> RaisedRicciReport:
    d = g.d
    rng = range(d)
    entries = []
    for i in rng:
        row = []
        for j in rng:
            acc = RatFun(Poly.zero(d))
            for k in rng:
                for l in rng:
                    if g[i, k].is_zero or g[j, l].is_zero or ric[k][l].is_zero:
                        continue
                    acc = acc + ric[k][l] * (g[i, k] * g[j, l])
            row.append(acc)
        entries.append(tuple(row))
    return _raised_report(g, tuple(entries))


def _raised_report(g, entries):
    poly = tuple(tuple(e.is_polynomial for e in row) for row in entries)
    deg = tuple(tuple(e.is_polynomial and e.formal_degree <= 2 for e in row) for row in entries)
    return RaisedRicciReport(entries, poly, deg, g.boundary.degree == 2 * g.d)


def raised_report(g: Cometric, bundle: CurvatureBundle) -> RaisedRicciReport:
    return _raised_report(g, bundle.raised)


def _max_degree(items):
    return max((x.formal_degree for x in items), default=NEG_INF)


def _flatten(t):
    if isinstance(t, RatFun):
        yield t
    else:
        for x in t:
            yield from _flatten(x)


@dataclass(frozen=True)
class DegreeAudit:
    """Formal degrees (max over components) against the bounds -2, -1, -2, -2, +2."""

    applicable: bool
    degrees: dict
    raised_polynomial: bool

    @property
    def flags(self) -> dict[str, bool]:
        return {k: self.degrees[k] <= DEGREE_BOUNDS[k] for k in DEGREE_BOUNDS}

    @property
    def status(self) -> str:
        if not self.applicable:
            return "NOT_APPLICABLE"
        return "PASS" if all(self.flags.values()) and self.raised_polynomial else "FAIL"


def degree_audit(g: Cometric, bundle: CurvatureBundle) -> DegreeAudit:
    degrees = {
        "metric_down": _max_degree(_flatten(bundle.metric_down.entries)),
        "christoffel": _max_degree(_flatten(bundle.christoffel)),
        "riemann": _max_degree(_flatten(bundle.riemann)),
        "ricci": _max_degree(_flatten(bundle.ricci)),
        "raised_ricci": _max_degree(_flatten(bundle.raised)),
    }
    raised_poly = all(e.is_polynomial for e in _flatten(bundle.raised))
    return DegreeAudit(g.boundary.degree == 2 * g.d, degrees, raised_poly)


@dataclass(frozen=True)
class LaplaceReport:
    first_order: tuple
    first_order_degree_ok: bool
    preserves_degree: bool


def laplace_beltrami(g: Cometric, f: Poly) -> tuple[Poly, LaplaceReport]:
    """Delta f = g^{ij} d_i d_j f + b^i d_i f with b^i = d_j g^{ij} - q^i / 2."""
    ok, qs = condition2_check(g)
    if not ok:
        raise Condition2Violated("D does not divide g^{ij} d_j D for some row")
    d = g.d
    b = []
    for i in range(d):
        acc = Poly.zero(d)
        for j in range(d):
            acc = acc + g[i, j].diff(j)
        b.append(acc - qs[i] / 2)
    out = Poly.zero(d)
    for i in range(d):
        fi = f.diff(i)
        if fi.is_zero:
            continue
        out = out + b[i] * fi
        for j in range(d):
            if not g[i, j].is_zero:
                out = out + g[i, j] * fi.diff(j)
    report = LaplaceReport(
        first_order=tuple(b),
        first_order_degree_ok=all(p.degree <= 1 for p in b),
        preserves_degree=out.degree <= f.degree,
    )
    return out, report
