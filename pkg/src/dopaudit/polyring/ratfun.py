"""Reduced rational functions over Q."""

from __future__ import annotations

from ..errors import StructuralError
from .poly import NEG_INF, Poly, exact_divide, gcd


class RatFun:
    """``num/den`` with ``gcd(num, den) = 1`` and a monic (grlex) denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, reduced: bool = False):
        if den is None:
            den = Poly.one(num.nvars)
        num._check(den)
        if den.is_zero:
            raise StructuralError("rational function with zero denominator")
        if num.is_zero:
            num, den = Poly.zero(num.nvars), Poly.one(num.nvars)
        elif not reduced and not den.is_constant:
            g = gcd(num, den)
            if not g.is_constant:
                num, den = exact_divide(num, g), exact_divide(den, g)
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFun":
        return cls(p, Poly.one(p.nvars), reduced=True)

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_constant

    @property
    def formal_degree(self):
        if self.num.is_zero:
            return NEG_INF
        return self.num.degree - self.den.degree

    def _lift(self, other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, Poly):
            return RatFun.from_poly(other)
        try:
            return RatFun.from_poly(Poly.const(self.nvars, other))
        except TypeError:
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, reduced=True)

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
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * o.den, self.den * o.num)

    def diff(self, i: int) -> "RatFun":
        return RatFun(self.num.diff(i) * self.den - self.num * self.den.diff(i), self.den * self.den)

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("rational function evaluated on its pole")
        return self.num.evaluate(point) / d

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def to_string(self, names=None) -> str:
        if self.den.is_constant:
            return self.num.to_string(names)
        return f"({self.num.to_string(names)})/({self.den.to_string(names)})"

    def __repr__(self):
        return f"RatFun({self.to_string()!r})"
