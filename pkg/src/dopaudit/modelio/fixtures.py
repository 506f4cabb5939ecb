"""Built-in models, each generated by executable construction code.

Every fixture is the push-forward of a known Riemannian cometric along a map
whose coordinate functions are polynomial invariants:

* ``sphere_projection(d)``: the round unit sphere S^d projected to its first
  d ambient coordinates; the tangential gradient of ambient coordinates gives
  ``<dX_a, dX_b> = delta_ab - X_a X_b``.
* ``polynomial_pushforward``: a polynomial cometric pushed forward along
  polynomial invariants, re-expressed in the invariants by solving an exact
  linear system (e.g. the B2 invariants u = x^2 + y^2, v = x^2 y^2).
* ``torus_pushforward``: a flat torus pushed forward along Laurent-polynomial
  characters (the deltoid uses Z = e^{i t1} + e^{i t2} + e^{-i(t1 + t2)}).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..cometric import Cometric
from ..errors import InternalContradiction, UnknownFixture
from ..polyring import Poly, default_names, nullspace
from ..polyring.numbers import QuadraticNumber

I = QuadraticNumber(0, 1, -1)


class Laurent:
    """Laurent polynomial in torus characters with Gaussian-rational coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def char(cls, exps, c=1):
        return cls(len(exps), {tuple(exps): QuadraticNumber(c, 0, -1)})

    @classmethod
    def const(cls, n, c):
        return cls(n, {(0,) * n: QuadraticNumber(c, 0, -1) if not isinstance(c, QuadraticNumber) else c})

    def __add__(self, other):
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t[e] + c if e in t else c
        return Laurent(self.n, t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return Laurent(self.n, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            return self.scale(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t[e] + c1 * c2 if e in t else c1 * c2
        return Laurent(self.n, t)

    __rmul__ = scale

    def dtheta(self, a: int) -> "Laurent":
        """Derivative along the angle t_a: z^k -> i k_a z^k."""
        return Laurent(self.n, {e: c * I * e[a] for e, c in self.terms.items() if e[a]})

    def __pow__(self, k):
        out = Laurent.const(self.n, 1)
        for _ in range(k):
            out = out * self
        return out


def _monomials(nvars: int, max_deg: int):
    for total in range(max_deg + 1):
        for e in itertools.product(range(total + 1), repeat=nvars):
            if sum(e) == total:
                yield e


def _express(target, basis_values, coefficient_pairs) -> list[Fraction]:
    """Solve target = sum c_m basis_values[m] for rational c_m, exactly.

    ``coefficient_pairs(obj)`` maps an element to {key: [rational parts]}.
    """
    keys = set()
    tgt = coefficient_pairs(target)
    cols = [coefficient_pairs(b) for b in basis_values]
    for c in cols + [tgt]:
        keys.update(c)
    keys = sorted(keys)
    width = max((len(v) for c in cols + [tgt] for v in c.values()), default=1)
    rows = []
    for k in keys:
        for part in range(width):
            row = [c.get(k, [0] * width)[part] for c in cols]
            row.append(-tgt.get(k, [0] * width)[part])
            rows.append(row)
    ns = nullspace(rows)
    # need a solution with last coordinate 1
    sol = next((v for v in ns if v[-1] != 0), None)
    if sol is None:
        raise InternalContradiction("push-forward is not expressible in the chosen invariant monomials")
    return [s / sol[-1] for s in sol[:-1]]


def polynomial_pushforward(base: Cometric, invariants: Sequence[Poly], max_deg: int = 2,
                           names: Sequence[str] | None = None) -> Cometric:
    """Push ``base`` forward along polynomial ``invariants``; entries solved in degree <= max_deg."""
    n = base.d
    m = len(invariants)
    grads = [[f.diff(i) for i in range(n)] for f in invariants]
    monos = list(_monomials(m, max_deg))
    values = []
    for e in monos:
        v = Poly.one(n)
        for f, k in zip(invariants, e):
            v = v * f ** k
        values.append(v)

    def coeffs(p: Poly):
        return {e: [c] for e, c in p.terms.items()}

    rows = []
    for a in range(m):
        row = []
        for b in range(m):
            inner = Poly.zero(n)
            for i in range(n):
                for j in range(n):
                    if not base[i, j].is_zero:
                        inner = inner + base[i, j] * grads[a][i] * grads[b][j]
            sol = _express(inner, values, coeffs)
            row.append(Poly(m, {e: c for e, c in zip(monos, sol)}))
        rows.append(row)
    return Cometric(rows, names or default_names(m))


def torus_pushforward(torus_cometric, invariants: Sequence[Laurent], max_deg: int = 2,
                      names: Sequence[str] | None = None) -> Cometric:
    """Push a flat torus cometric (constant matrix in angle coordinates) along real invariants."""
    n = len(torus_cometric)
    m = len(invariants)
    monos = list(_monomials(m, max_deg))
    values = []
    for e in monos:
        v = Laurent.const(invariants[0].n, 1)
        for f, k in zip(invariants, e):
            v = v * f ** k
        values.append(v)

    def coeffs(L: Laurent):
        return {e: [c.a, c.b] for e, c in L.terms.items()}

    rows = []
    for a in range(m):
        row = []
        for b in range(m):
            inner = Laurent(invariants[0].n)
            for i in range(n):
                for j in range(n):
                    c = Fraction(torus_cometric[i][j])
                    if c:
                        inner = inner + (invariants[a].dtheta(i) * invariants[b].dtheta(j)).scale(c)
            sol = _express(inner, values, coeffs)
            row.append(Poly(m, {e: c for e, c in zip(monos, sol)}))
        rows.append(row)
    return Cometric(rows, names or default_names(m))


def sphere_projection(d: int, names=None) -> Cometric:
    xs = Poly.gens(d)
    rows = [[(Poly.one(d) if a == b else Poly.zero(d)) - xs[a] * xs[b] for b in range(d)] for a in range(d)]
    return Cometric(rows, names or default_names(d))


def interval(name="x") -> Cometric:
    return sphere_projection(1, (name,))


def product(*factors: Cometric) -> Cometric:
    out = factors[0]
    for f in factors[1:]:
        out = out.direct_sum(f)
    return Cometric(out.entries, default_names(out.d))


def deltoid() -> Cometric:
    # A2 torus: angles (t1, t2), t3 = -t1 - t2, metric induced from R^3 on sum-zero plane
    c = [[Fraction(2, 3), Fraction(-1, 3)], [Fraction(-1, 3), Fraction(2, 3)]]
    Z = Laurent.char((1, 0)) + Laurent.char((0, 1)) + Laurent.char((-1, -1))
    Zbar = Laurent.char((-1, 0)) + Laurent.char((0, -1)) + Laurent.char((1, 1))
    x = (Z + Zbar).scale(Fraction(1, 2))
    y = (Z - Zbar) * QuadraticNumber(0, Fraction(-1, 2), -1)  # (Z - Zbar) / (2i)
    return torus_pushforward(c, [x, y])


def b2_flat() -> Cometric:
    x, y = Poly.gens(2)
    plane = Cometric([[Poly.one(2), Poly.zero(2)], [Poly.zero(2), Poly.one(2)]])
    return polynomial_pushforward(plane, [x ** 2 + y ** 2, x ** 2 * y ** 2], names=("u", "v"))


def multiple_tangent() -> Cometric:
    # D = y^2 (y - x^2): a boundary component of multiplicity two
    x, y = Poly.gens(2)
    return Cometric([[y ** 2, Poly.zero(2)], [Poly.zero(2), y - x ** 2]])


@dataclass(frozen=True)
class FixtureEntry:
    name: str
    build: Callable[[], Cometric]
    description: str
    expect: dict = field(default_factory=dict)


FIXTURES: dict[str, FixtureEntry] = {
    f.name: f
    for f in [
        FixtureEntry("disk", lambda: sphere_projection(2), "round S^2 projected to the unit disk",
                    {"verdict": "NOT_APPLICABLE", "lambdas": [1], "blocks": [2], "singularities": []}),
        FixtureEntry("square", lambda: product(interval(), interval()), "product of two intervals",
                    {"verdict": "PASS", "lambdas": [0, 0], "blocks": [1, 1],
                     "singularities": ["A(1)", "A(1)", "A(1)", "A(1)"]}),
        FixtureEntry("deltoid", deltoid, "flat A2 torus pushed forward by the deltoid map",
                    {"verdict": "PASS", "lambdas": [0], "blocks": [2], "singularities": ["A(2)", "A(2)", "A(2)"]}),
        FixtureEntry("b2", b2_flat, "flat plane pushed forward by the B2 invariants (deg D = 3)",
                    {"verdict": "NOT_APPLICABLE", "lambdas": [0], "blocks": [2], "singularities": ["A(3)"]}),
        FixtureEntry("cube", lambda: product(interval(), interval(), interval()), "product of three intervals",
                    {"verdict": "PASS", "lambdas": [0, 0, 0], "blocks": [1, 1, 1]}),
        FixtureEntry("ball3", lambda: sphere_projection(3), "round S^3 projected to the unit ball",
                    {"verdict": "NOT_APPLICABLE", "lambdas": [2], "blocks": [3]}),
        FixtureEntry("disk_interval", lambda: product(sphere_projection(2), interval()),
                    "disk model plus an interval",
                    {"verdict": "NOT_APPLICABLE", "lambdas": [0, 1], "blocks": [1, 2]}),
        FixtureEntry("multiple_tangent", multiple_tangent, "diag(y^2, y - x^2): D = y^2 (y - x^2)",
                    {"verdict": "HYPOTHESIS_VIOLATED"}),
    ]
}


def fixture_names() -> list[str]:
    return list(FIXTURES)


def fixture_entry(name: str) -> FixtureEntry:
    try:
        return FIXTURES[name]
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


def fixture_cometric(name: str) -> Cometric:
    return fixture_entry(name).build()


def _expect_text(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v) if v else "-"
    return str(v)


def fixture_model(name: str):
    """The fixture as a model file, with its expectations as metadata."""
    from .parser import ModelFile

    entry = fixture_entry(name)
    return ModelFile.from_cometric(entry.build(), name=entry.name,
                                   expect={k: _expect_text(v) for k, v in entry.expect.items()})
