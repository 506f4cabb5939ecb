"""Rational scalars and elements of quadratic fields Q(sqrt(r))."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, m)`` with ``n == s*s*m`` and ``m`` squarefree (sign kept in m)."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, m = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            m *= p
        p += 1 if p == 2 else 2
    m *= n
    return s, sign * m


def rational_sqrt(q: Fraction):
    """Exact square root of a rational: a Fraction when possible, else a QuadraticNumber."""
    q = as_fraction(q)
    if q == 0:
        return Fraction(0)
    # sqrt(a/b) = sqrt(a*b)/b
    s, m = squarefree_split(q.numerator * q.denominator)
    coef = Fraction(s, q.denominator)
    if m == 1:
        return coef
    return QuadraticNumber(0, coef, m)


class QuadraticNumber:
    """The number ``a + b*sqrt(r)`` with rational a, b and squarefree integer r != 0, 1.

    Mixing with ints and Fractions is supported; mixing two different fields raises.
    """

    __slots__ = ("a", "b", "r")

    def __init__(self, a, b, r: int):
        r = int(r)
        if r in (0, 1):
            raise ValueError("r must be a squarefree integer other than 0 and 1")
        self.a = as_fraction(a)
        self.b = as_fraction(b)
        self.r = r

    def _lift(self, other):
        if isinstance(other, QuadraticNumber):
            if other.r != self.r:
                raise ValueError(f"incompatible fields Q(sqrt({self.r})) and Q(sqrt({other.r}))")
            return other
        try:
            return QuadraticNumber(as_fraction(other), 0, self.r)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.r)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.r)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a - o.a, self.b - o.b, self.r)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a * o.a + self.r * self.b * o.b,
                               self.a * o.b + self.b * o.a, self.r)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.r * self.b * self.b

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.r)

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadraticNumber division by zero")
        return QuadraticNumber(self.a / n, -self.b / n, self.r)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadraticNumber(1, 0, self.r)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return self.r == other.r and self.a == other.a and self.b == other.b
        try:
            return self.b == 0 and self.a == as_fraction(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.r))

    @property
    def is_real(self) -> bool:
        return self.r > 0 or self.b == 0

    def to_complex(self) -> complex:
        if self.r > 0:
            return complex(float(self.a) + float(self.b) * math.sqrt(self.r))
        return complex(float(self.a), float(self.b) * math.sqrt(-self.r))

    def __float__(self):
        if not self.is_real:
            raise TypeError("non-real quadratic number")
        return self.to_complex().real

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, {self.r})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = "i" if self.r == -1 else f"sqrt({self.r})"
        b = "" if self.b == 1 else ("-" if self.b == -1 else f"{self.b}*")
        if self.a == 0:
            return f"{b}{root}"
        sign = "+" if self.b > 0 else "-"
        babs = abs(self.b)
        bs = "" if babs == 1 else f"{babs}*"
        return f"{self.a} {sign} {bs}{root}"


def is_real_scalar(c) -> bool:
    if isinstance(c, QuadraticNumber):
        return c.is_real
    return True


def to_complex(c) -> complex:
    if isinstance(c, QuadraticNumber):
        return c.to_complex()
    return complex(float(c))
