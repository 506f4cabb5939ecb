"""Sparse multivariate polynomials with exact coefficients.

A :class:`Poly` is an immutable map from exponent tuples to nonzero
coefficients.  Coefficients are :class:`fractions.Fraction` in every symbolic
path of the package; the resolver additionally uses
:class:`~dopaudit.polyring.numbers.QuadraticNumber` coefficients, which the
arithmetic here handles transparently because it only relies on field
operations.

Monomials are compared in graded-lexicographic order (total degree first,
then lexicographic with variable 0 largest).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import StructuralError
from .numbers import QuadraticNumber, as_fraction

NEG_INF = float("-inf")
DEFAULT_NAMES = ("x", "y", "z", "w", "u", "v")


def _coerce(c):
    if isinstance(c, (Fraction, QuadraticNumber)):
        return c
    return as_fraction(c)


def grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


def default_names(n: int) -> tuple[str, ...]:
    if n <= len(DEFAULT_NAMES):
        return DEFAULT_NAMES[:n]
    return tuple(f"x{i + 1}" for i in range(n))


class Poly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        if nvars < 0:
            raise StructuralError("variable count must be non-negative")
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise StructuralError(f"exponent {e} does not have {nvars} entries")
                if any(k < 0 for k in e):
                    raise StructuralError(f"negative exponent in {e}")
                c = _coerce(c)
                clean[e] = clean[e] + c if e in clean else c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = _coerce(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls.const(nvars, 1)

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        if not 0 <= i < nvars:
            raise StructuralError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Poly":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def gens(cls, nvars: int) -> tuple["Poly", ...]:
        return tuple(cls.var(nvars, i) for i in range(nvars))

    # basic queries
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_value(self):
        """Constant term (the value at the origin)."""
        return self.terms.get((0,) * self.nvars, Fraction(0))

    @property
    def degree(self):
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    @property
    def order(self):
        """Lowest total degree among the terms (multiplicity at the origin)."""
        if not self.terms:
            return float("inf")
        return min(sum(e) for e in self.terms)

    def degree_in(self, i: int):
        if not self.terms:
            return NEG_INF
        return max(e[i] for e in self.terms)

    def variables(self) -> set[int]:
        out = set()
        for e in self.terms:
            out.update(i for i, k in enumerate(e) if k)
        return out

    def leading_exponent(self) -> tuple:
        if not self.terms:
            raise StructuralError("zero polynomial has no leading term")
        return max(self.terms, key=grlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_exponent()]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        if lc == 1:
            return self
        inv = 1 / lc
        return Poly._raw(self.nvars, {e: c * inv for e, c in self.terms.items()})

    def homogeneous_part(self, k: int) -> "Poly":
        return Poly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == k})

    def coefficients_in(self, i: int) -> dict[int, "Poly"]:
        """View as a polynomial in variable ``i``: power -> coefficient (free of x_i)."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            ee = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ee] = c
        return {k: Poly._raw(self.nvars, t) for k, t in out.items()}

    # arithmetic
    def _check(self, other: "Poly"):
        if other.nvars != self.nvars:
            raise StructuralError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        try:
            return Poly.const(self.nvars, other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        t = dict(self.terms)
        for e, c in o.terms.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s:
                    t[e] = s
                else:
                    del t[e]
        return Poly._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                c = _coerce(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        t: dict = {}
        n = self.nvars
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(e1[k] + e2[k] for k in range(n))
                s = t.get(e)
                t[e] = c1 * c2 if s is None else s + c1 * c2
        return Poly._raw(n, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero scalar only; use :func:`exact_divide` for polynomials."""
        if isinstance(other, Poly):
            if other.is_constant and not other.is_zero:
                other = other.constant_value()
            else:
                return NotImplemented
        c = _coerce(other)
        if not c:
            raise ZeroDivisionError("division by zero scalar")
        inv = 1 / c
        return Poly._raw(self.nvars, {e: v * inv for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise StructuralError("polynomial powers must be non-negative integers")
        out = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            o = Poly.const(self.nvars, other)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # calculus and substitution
    def diff(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise StructuralError(f"variable index {i} out of range for {self.nvars} variables")
        t = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                t[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return Poly._raw(self.nvars, t)

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise StructuralError(f"point has {len(point)} coordinates, expected {self.nvars}")
        total = Fraction(0)
        powers = [dict() for _ in range(self.nvars)]
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    pk = cache.get(k)
                    if pk is None:
                        pk = point[i] ** k
                        cache[k] = pk
                    v = v * pk
            total = total + v
        return total

    def compose(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute ``x_i -> images[i]`` (all images share one variable count)."""
        if len(images) != self.nvars:
            raise StructuralError(f"need {self.nvars} images, got {len(images)}")
        if not images:
            return self
        m = images[0].nvars
        for im in images:
            if im.nvars != m:
                raise StructuralError("images have different variable counts")
        cache: list[dict[int, Poly]] = [{0: Poly.one(m), 1: im} for im in images]

        def power(i, k):
            c = cache[i]
            if k not in c:
                c[k] = power(i, k - 1) * images[i]
            return c[k]

        out = Poly.zero(m)
        for e, c in self.terms.items():
            term = Poly.const(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def translate(self, point: Sequence) -> "Poly":
        """``p(x + point)``, moving ``point`` to the origin."""
        gens = Poly.gens(self.nvars)
        return self.compose([g + c for g, c in zip(gens, point)])

    def divide_by_monomial(self, exps: Sequence[int]) -> "Poly":
        t = {}
        for e, c in self.terms.items():
            ee = tuple(a - b for a, b in zip(e, exps))
            if min(ee, default=0) < 0:
                raise StructuralError(f"monomial {tuple(exps)} does not divide the polynomial")
            t[ee] = c
        return Poly._raw(self.nvars, t)

    def restrict(self, indices: Sequence[int]) -> "Poly":
        """Re-index onto the variables ``indices`` (others must not occur)."""
        keep = set(indices)
        t = {}
        for e, c in self.terms.items():
            if any(k and i not in keep for i, k in enumerate(e)):
                raise StructuralError("polynomial depends on a variable outside the block")
            t[tuple(e[i] for i in indices)] = c
        return Poly._raw(len(indices), t)

    def embed(self, nvars: int, indices: Sequence[int]) -> "Poly":
        """Inverse of :meth:`restrict`: place variable k at position ``indices[k]``."""
        t = {}
        for e, c in self.terms.items():
            ee = [0] * nvars
            for k, i in enumerate(indices):
                ee[i] = e[k]
            t[tuple(ee)] = c
        return Poly._raw(nvars, t)

    def map_coefficients(self, fn) -> "Poly":
        return Poly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    # printing
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = tuple(names) if names else default_names(self.nvars)
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if isinstance(c, QuadraticNumber):
                cs, neg = f"({c})", False
            else:
                neg = c < 0
                cs = str(abs(c))
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Poly({self.nvars}, {self.to_string()!r})"


def as_poly(p, nvars: int) -> Poly:
    return p if isinstance(p, Poly) else Poly.const(nvars, p)


def exact_divide(a: Poly, b: Poly) -> Poly | None:
    """Return ``q`` with ``a == q*b``, or ``None`` when ``b`` does not divide ``a``.

    Leading-term division in grlex order: if ``b`` divides ``a`` every step's
    leading monomial is divisible, so the first failure proves non-divisibility.
    """
    a._check(b)
    if b.is_zero:
        raise StructuralError("division by the zero polynomial")
    if a.is_zero:
        return Poly.zero(a.nvars)
    eb = b.leading_exponent()
    cb = b.terms[eb]
    inv = 1 / cb
    if b.is_constant:
        return a * inv
    n = a.nvars
    r = dict(a.terms)
    q = {}
    bterms = list(b.terms.items())
    while r:
        er = max(r, key=grlex_key)
        e = tuple(er[k] - eb[k] for k in range(n))
        if min(e) < 0:
            return None
        c = r[er] * inv
        q[e] = c
        for eb2, c2 in bterms:
            m = tuple(e[k] + eb2[k] for k in range(n))
            v = r.get(m)
            d = c * c2
            if v is None:
                r[m] = -d
            else:
                v = v - d
                if v:
                    r[m] = v
                else:
                    del r[m]
    return Poly._raw(n, q)


def divides(b: Poly, a: Poly) -> bool:
    return exact_divide(a, b) is not None


def _prem(a: Poly, b: Poly, v: int) -> Poly:
    db = b.degree_in(v)
    lb = b.coefficients_in(v)[db]
    n = a.nvars
    r = a
    while not r.is_zero and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lr = r.coefficients_in(v)[dr]
        shift = [0] * n
        shift[v] = dr - db
        r = lb * r - lr * Poly.monomial(shift) * b
    return r


def _content(p: Poly, v: int) -> Poly:
    coeffs = p.coefficients_in(v)
    g = None
    for k in sorted(coeffs, key=lambda k: len(coeffs[k].terms)):
        c = coeffs[k]
        g = c.monic() if g is None else _gcd(g, c)
        if g.is_constant:
            return Poly.one(p.nvars)
    return g.monic()


def _primitive(p: Poly, v: int) -> Poly:
    c = _content(p, v)
    if c.is_constant:
        return p.monic()
    q = exact_divide(p, c)
    assert q is not None
    return q.monic()


def _gcd(a: Poly, b: Poly) -> Poly:
    if a.is_constant or b.is_constant:
        return Poly.one(a.nvars)
    va, vb = a.variables(), b.variables()
    v = max(va | vb)
    if v not in va:
        return _gcd(a, _content(b, v))
    if v not in vb:
        return _gcd(_content(a, v), b)
    ca, cb = _content(a, v), _content(b, v)
    pa = a if ca.is_constant else exact_divide(a, ca)
    pb = b if cb.is_constant else exact_divide(b, cb)
    c = _gcd(ca, cb)
    pa, pb = pa.monic(), pb.monic()
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, v)
        if r.is_zero:
            g = pb
            break
        if r.degree_in(v) == 0:
            g = Poly.one(a.nvars)
            break
        pa, pb = pb, _primitive(r, v)
    return (c * _primitive(g, v)).monic()


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (content/primitive-part recursion)."""
    a._check(b)
    if a.is_zero and b.is_zero:
        raise StructuralError("gcd(0, 0) is undefined")
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    return _gcd(a, b).monic()


def gcd_list(polys: Iterable[Poly]) -> Poly:
    g = None
    for p in polys:
        if p.is_zero:
            continue
        g = p.monic() if g is None else gcd(g, p)
        if g.is_constant:
            break
    if g is None:
        raise StructuralError("gcd of zero polynomials is undefined")
    return g


def associates(a: Poly, b: Poly) -> bool:
    """True when ``a == c*b`` for a nonzero scalar ``c``."""
    if a.is_zero or b.is_zero:
        return a.is_zero and b.is_zero
    return a.monic() == b.monic()


def squarefree_part(p: Poly) -> Poly:
    g = gcd_list([p] + [p.diff(i) for i in range(p.nvars)])
    q = exact_divide(p, g)
    return q.monic()


def is_squarefree(p: Poly) -> bool:
    if p.is_zero:
        raise StructuralError("squarefree test of the zero polynomial")
    return gcd_list([p] + [p.diff(i) for i in range(p.nvars)]).is_constant


def substitute_linear(p: Poly, M: Sequence[Sequence]) -> Poly:
    """Compose ``p`` with the linear change of variables ``x -> M x``."""
    from .linalg import is_invertible

    n = p.nvars
    if len(M) != n or any(len(row) != n for row in M):
        raise StructuralError(f"substitution matrix must be {n}x{n}")
    if not is_invertible(M):
        raise StructuralError("singular substitution matrix")
    gens = Poly.gens(n)
    images = []
    for row in M:
        im = Poly.zero(n)
        for c, g in zip(row, gens):
            if c:
                im = im + g * c
        images.append(im)
    return p.compose(images)


def evaluate(p: Poly, point: Sequence):
    return p.evaluate(point)


def partial_derivative(p: Poly, i: int) -> Poly:
    return p.diff(i)


def arith(a: Poly, b: Poly, op: str) -> Poly:
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise StructuralError(f"unknown operation {op!r}")


def multivariate_gcd(a: Poly, b: Poly) -> Poly:
    return gcd(a, b)
