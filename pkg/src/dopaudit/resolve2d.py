"""Plane-curve singularities of the boundary: blow-ups, ledger, ADE dictionary.

The boundary polynomial ``D`` is treated as a section of the anticanonical
square.  Blowing up a point of multiplicity ``m`` on the current total
divisor puts multiplicity ``m + sum(k_i) - 2`` on the new exceptional line,
where ``k_i`` are the multiplicities already carried by the exceptional lines
through the point.  The density ``|D|^{-1/2}`` stays locally integrable
exactly when no exceptional line ever reaches multiplicity 2.

Charts: direction ``(1, t)`` uses ``(x, y) = (u, u (v + t))`` with exceptional
line ``{u = 0}``; direction ``(0, 1)`` uses ``(x, y) = (u v, v)`` with
exceptional line ``{v = 0}``.  An old exceptional line through the centre
stays a coordinate line in the chart of its own direction.

Classification uses the Milnor number ``mu = 2 delta - r + 1`` (``delta`` from
the multiplicities of all infinitely near singular points, ``r`` the number
of branches) together with the multiplicity and the tangent cone.  Corner
angles follow the dictionary ``A(n)``, locally ``y^2 = x^(n+1)``, with angle
``pi / (n + 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cometric import Cometric
from .errors import NotSquarefree, StructuralError
from .polyring import Poly, gcd, is_squarefree, resultant
from .polyring.numbers import is_real_scalar, to_complex
from .polyring.roots import rational_roots, roots_up_to_quadratic, yun_multiplicities

MAX_DEPTH = 64
INF_DIRECTION = None  # the direction (0, 1)

_SHEARS = [Fraction(c) for c in (0, 1, -1, 2, Fraction(1, 2), 3, -2, Fraction(-1, 2), 5, Fraction(1, 3))]


# ---------------------------------------------------------------- singular points

def _leading_y_constant(E: Poly) -> bool:
    return E.degree_in(1) == E.degree and E.coefficients_in(1)[E.degree].is_constant


def _root_points(x0, E: Poly):
    """Common roots y of E, E_x, E_y at x = x0 (exact, over the field of x0)."""
    T = Poly.var(1, 0)
    xs = Poly.const(1, x0)
    polys = [p.compose([xs, T]) for p in (E, E.diff(0), E.diff(1))]
    h = polys[0]
    for p in polys[1:]:
        h = gcd(h, p) if not p.is_zero else h
    if h.is_zero:
        return None
    if h.is_constant:
        return []
    if h.degree == 1:
        c = h.monic()
        return [-c.constant_value()]
    return None  # projection not injective or higher-degree fibre


@dataclass(frozen=True)
class SingularPointList:
    points: list
    complete: bool

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def singular_points(D: Poly) -> SingularPointList:
    """Common zeros of ``D, D_x, D_y`` with coordinates in Q or a quadratic field."""
    if D.nvars != 2:
        raise StructuralError("singular points are computed for plane curves only")
    if D.is_zero:
        raise StructuralError("zero polynomial has no isolated singular points")
    if not is_squarefree(D):
        raise NotSquarefree("boundary polynomial is not squarefree")
    if D.degree <= 1:
        return SingularPointList([], True)
    x, y = Poly.gens(2)
    for c in _SHEARS:
        # x = x' - c y
        E = D.compose([x - y * c, y])
        if not _leading_y_constant(E):
            continue
        r1 = resultant(E, E.diff(1), 1)
        if r1.is_zero:
            continue
        # E_x + j E_y avoids factors that E shares with E_x alone
        r2 = next((r for r in (resultant(E, E.diff(0) + E.diff(1) * j, 1) for j in range(4)) if not r.is_zero),
                  None)
        if r2 is None:
            continue
        h = gcd(r1, r2)
        if h.is_constant:
            return SingularPointList([], True)
        xs, complete = roots_up_to_quadratic(h.restrict([0]))
        pts = []
        ok = True
        for x0 in xs:
            ys = _root_points(x0, E)
            if ys is None:
                ok = False
                break
            for y0 in ys:
                pts.append((x0 - c * y0, y0))
        if ok:
            return SingularPointList(sorted(pts, key=_point_key), complete)
    return SingularPointList([], False)


def _point_key(p):
    zs = [to_complex(c) for c in p]
    return tuple(v for z in zs for v in (z.real, z.imag))


def is_real_point(p) -> bool:
    return all(is_real_scalar(c) for c in p)


# ---------------------------------------------------------------- local equations

@dataclass(frozen=True)
class LocalEquation:
    """A plane curve germ at ``point``, stored translated to the origin."""

    f: Poly
    point: tuple = (Fraction(0), Fraction(0))
    history: tuple = ()

    @classmethod
    def at(cls, D: Poly, point: Sequence) -> "LocalEquation":
        f = D.translate(point)
        if f.constant_value():
            raise StructuralError(f"curve does not pass through {tuple(point)}")
        return cls(f, tuple(point))


def _as_local(f) -> LocalEquation:
    return f if isinstance(f, LocalEquation) else LocalEquation(f)


def multiplicity(f) -> int:
    f = _as_local(f).f
    if f.is_zero:
        raise StructuralError("multiplicity of the zero germ")
    return f.order


@dataclass(frozen=True)
class BlowUpRecord:
    chart: str               # "X-chart", "Y-chart", or "crossing"
    center: tuple            # path of directions from the original point
    multiplicity: int        # multiplicity of the strict transform at the centre
    incident: tuple          # exceptional multiplicities of lines through the centre
    exceptional_multiplicity: int
    strict_transforms: tuple = ()  # LocalEquation at each point of the new line that is visited


def _direction_label(t):
    return "inf" if t is INF_DIRECTION else str(t)


def _cone_directions(f: Poly, m: int):
    """Tangent cone of ``f`` at 0: (multiple directions [(t, k)], simple count, distinct count, exact)."""
    cone = f.homogeneous_part(m)
    T = Poly.var(1, 0)
    g = cone.compose([Poly.one(1), T])
    deficiency = m - (g.degree if not g.is_zero else 0)
    multiple, simple, distinct, exact = [], 0, 0, True
    if deficiency:
        distinct += 1
        if deficiency == 1:
            simple += 1
        else:
            multiple.append((INF_DIRECTION, deficiency))
    if g.degree > 0:
        for k, fac in yun_multiplicities(g):
            distinct += fac.degree
            if k == 1:
                simple += fac.degree
                continue
            if fac.degree == 1:
                c = fac.monic()
                multiple.append((-c.constant_value(), k))
                continue
            roots = rational_roots(fac) if all(isinstance(c, Fraction) for c in fac.terms.values()) else []
            for r in roots:
                multiple.append((r, k))
            if len(roots) < fac.degree:
                exact = False
    return multiple, simple, distinct, exact


def _linear_direction(f: Poly):
    lin = f.homogeneous_part(1)
    a = lin.terms.get((1, 0), 0)
    b = lin.terms.get((0, 1), 0)
    return INF_DIRECTION if not b else -a / b


def _chart(f: Poly, t, m: int) -> Poly:
    u, v = Poly.gens(2)
    if t is INF_DIRECTION:
        pulled = f.compose([u * v, v])
        return pulled.divide_by_monomial((0, m))
    pulled = f.compose([u, u * v + u * t])
    return pulled.divide_by_monomial((m, 0))


def _same(t1, t2) -> bool:
    if t1 is INF_DIRECTION or t2 is INF_DIRECTION:
        return t1 is t2
    return t1 == t2


@dataclass
class _Ledger:
    records: list = field(default_factory=list)
    delta: int = 0
    branches: int = 0
    violation: bool = False
    exact: bool = True
    max_exceptional: int = 0


def _resolve(f: Poly, lines: list, path: tuple, new_branch: bool, led: _Ledger, depth: int):
    # lines: [(direction, k)] with k > 0 for exceptional lines through the origin
    if depth > MAX_DEPTH:
        led.exact = False
        return
    m = f.order
    if m == 1:
        if new_branch:
            led.branches += 1
        fdir = _linear_direction(f)
        tangent = any(_same(fdir, t) for t, _ in lines)
        if not tangent and len(lines) < 2:
            if lines:
                k = lines[0][1] - 1
                led.records.append(BlowUpRecord("crossing", path, 1, (lines[0][1],), k))
                led.max_exceptional = max(led.max_exceptional, k)
            return
    k_new = m + sum(k for _, k in lines) - 2
    led.max_exceptional = max(led.max_exceptional, k_new)
    if m >= 2:
        led.delta += m * (m - 1) // 2
    if k_new >= 2:
        led.violation = True
        led.records.append(BlowUpRecord("stop", path, m, tuple(k for _, k in lines), k_new))
        return
    if m >= 2:
        multiple, simple, _, exact = _cone_directions(f, m)
        led.exact = led.exact and exact
        visit = [(t, True) for t, _ in multiple]
        has_line_dir = []
        for t, _ in lines:
            if not any(_same(t, s) for s, _ in visit):
                visit.append((t, False))
                has_line_dir.append(t)
        # simple directions shared with an old line are visited there, not counted here
        shared = 0
        for t in has_line_dir:
            if not _chart(f, t, m).constant_value():
                shared += 1
        lone = simple - shared
        led.branches += lone
    else:
        visit = [(_linear_direction(f), False)] + [(t, False) for t, _ in lines]
        dedup = []
        for t, flag in visit:
            if not any(_same(t, s) for s, _ in dedup):
                dedup.append((t, flag))
        visit = dedup
    strict = []
    children = []
    for t, _ in visit:
        g = _chart(f, t, m)
        if g.constant_value():
            continue  # strict transform misses this point
        new_lines = []
        if k_new > 0:
            new_lines.append((0 if t is INF_DIRECTION else INF_DIRECTION, k_new))
        for s, k in lines:
            if _same(s, t):
                new_lines.append((INF_DIRECTION if t is INF_DIRECTION else Fraction(0), k))
        strict.append(LocalEquation(g, (_direction_label(t),)))
        children.append((g, new_lines, path + (_direction_label(t),), m >= 2))
    led.records.append(BlowUpRecord(_chart_name([t for t, _ in visit]), path, m,
                                    tuple(k for _, k in lines), k_new, tuple(strict)))
    if m >= 2 and k_new > 0:
        for _ in range(lone):
            led.records.append(BlowUpRecord("crossing", path + ("transverse",), 1, (k_new,), k_new - 1))
    for g, new_lines, p, nb in children:
        _resolve(g, new_lines, p, nb, led, depth + 1)


def blow_up(f) -> BlowUpRecord:
    """Single blow-up of a singular germ at the origin, with no exceptional lines present."""
    loc = _as_local(f)
    m = multiplicity(loc)
    if m < 2:
        raise StructuralError("blow-up centre is a smooth point")
    multiple, _, _, _ = _cone_directions(loc.f, m)
    strict = tuple(LocalEquation(_chart(loc.f, t, m), (_direction_label(t),), (("blow-up", _direction_label(t)),))
                   for t, _ in multiple)
    return BlowUpRecord(_chart_name([t for t, _ in multiple]), (), m, (), m - 2, strict)


def _chart_name(directions) -> str:
    names = sorted({"Y-chart" if t is INF_DIRECTION else "X-chart" for t in directions})
    return "+".join(names) if names else "X-chart"


@dataclass(frozen=True)
class SingularityVerdict:
    kind: str                     # SMOOTH, A, D, E, NOT_SIMPLE
    index: int | None
    integrable: bool
    corner_angle: Fraction | None  # multiple of pi
    milnor: int | None
    multiplicity: int
    ledger: tuple = ()
    exact: bool = True

    @property
    def label(self) -> str:
        if self.kind in ("A", "D", "E"):
            return f"{self.kind}({self.index})"
        return self.kind

    def angle_text(self) -> str:
        if self.corner_angle is None:
            return "-"
        return "pi" if self.corner_angle == 1 else f"pi/{self.corner_angle.denominator}"

    @property
    def exceptional_multiplicities(self) -> list[int]:
        return [r.exceptional_multiplicity for r in self.ledger]


def classify(f) -> SingularityVerdict:
    loc = _as_local(f)
    g = loc.f
    if g.is_zero:
        raise StructuralError("cannot classify the zero germ")
    if _has_fraction_coefficients(g) and not is_squarefree(g):
        raise NotSquarefree("local equation is not squarefree")
    m = g.order
    if m == 0:
        raise StructuralError("the curve does not pass through the origin")
    led = _Ledger()
    if m == 1:
        return SingularityVerdict("SMOOTH", None, True, None, 0, 1)
    _resolve(g, [], (), True, led, 0)
    ledger = tuple(led.records)
    integrable = not led.violation
    if led.violation or not led.exact:
        return SingularityVerdict("NOT_SIMPLE", None, integrable, None, None, m, ledger, led.exact)
    mu = 2 * led.delta - led.branches + 1
    if m == 2:
        return SingularityVerdict("A", mu, integrable, Fraction(1, mu + 1), mu, m, ledger)
    if m == 3:
        _, _, distinct, _ = _cone_directions(g, 3)
        if distinct == 3:
            return SingularityVerdict("D", 4, integrable, None, mu, m, ledger)
        if distinct == 2:
            return SingularityVerdict("D", mu, integrable, None, mu, m, ledger)
        if mu in (6, 7, 8):
            return SingularityVerdict("E", mu, integrable, None, mu, m, ledger)
    return SingularityVerdict("NOT_SIMPLE", None, integrable, None, mu, m, ledger)


def _has_fraction_coefficients(p: Poly) -> bool:
    return all(isinstance(c, Fraction) for c in p.terms.values())


@dataclass(frozen=True)
class BoundaryPoint:
    point: tuple
    real: bool
    verdict: SingularityVerdict

    @property
    def in_theorem_scope(self) -> bool:
        return self.verdict.kind == "A"


@dataclass(frozen=True)
class BoundaryResolution:
    points: list
    complete: bool

    @property
    def real_points(self) -> list:
        return [p for p in self.points if p.real]

    @property
    def scope_violations(self) -> list:
        return [p for p in self.real_points if not p.in_theorem_scope]


def resolve_model_boundary(g: Cometric) -> BoundaryResolution:
    if g.d != 2:
        raise StructuralError("boundary resolution is implemented for d = 2")
    D = g.boundary
    sp = singular_points(D)
    out = []
    for p in sp:
        out.append(BoundaryPoint(p, is_real_point(p), classify(LocalEquation.at(D, p))))
    return BoundaryResolution(out, sp.complete)


def format_point(p) -> str:
    return "(" + ", ".join(str(c) for c in p) + ")"


# Curve germs with known dictionary entries, used in regression checks.
def curve_fixtures() -> dict[str, tuple[Poly, str, bool]]:
    x, y = Poly.gens(2)
    out = {}
    for n in range(1, 7):
        out[f"A{n}"] = (y ** 2 - x ** (n + 1), f"A({n})", True)
    out["D4"] = (x * y * (x + y), "D(4)", True)
    out["D5"] = (x ** 2 * y - y ** 4, "D(5)", True)
    out["E6"] = (y ** 3 - x ** 4, "E(6)", True)
    out["E7"] = (y ** 3 - y * x ** 3, "E(7)", True)
    out["E8"] = (y ** 3 - x ** 5, "E(8)", True)
    out["X9"] = (x * y * (x + y) * (x - y), "NOT_SIMPLE", False)
    return out
