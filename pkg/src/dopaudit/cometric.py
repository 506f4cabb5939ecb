"""The cometric g^{ij}: a symmetric matrix of polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import StructuralError
from .polyring import Poly, default_names, determinant, inverse, substitute_linear
from .polyring.numbers import as_fraction


@dataclass(frozen=True)
class Cometric:
    """Symmetric ``d x d`` matrix of polynomials in ``d`` variables.

    The degree <= 2 hypothesis is *not* enforced here; it is checked by
    :func:`dopaudit.admissibility.check_entry_degrees` so that parsing and
    validation stay separate stages.
    """

    entries: tuple
    names: tuple = field(default=())

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        d = len(rows)
        if d == 0:
            raise StructuralError("cometric must have positive dimension")
        for r in rows:
            if len(r) != d:
                raise StructuralError("cometric matrix must be square")
            for p in r:
                if not isinstance(p, Poly) or p.nvars != d:
                    raise StructuralError(f"cometric entries must be polynomials in {d} variables")
        for i in range(d):
            for j in range(i + 1, d):
                if rows[i][j] != rows[j][i]:
                    raise StructuralError(f"cometric is not symmetric at ({i + 1},{j + 1})")
        object.__setattr__(self, "entries", rows)
        names = tuple(self.names) if self.names else default_names(d)
        if len(names) != d:
            raise StructuralError("one variable name per dimension is required")
        object.__setattr__(self, "names", names)

    @property
    def d(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @cached_property
    def boundary(self) -> Poly:
        """D = det(g^{ij})."""
        return determinant([list(r) for r in self.entries])

    def transform(self, P: Sequence[Sequence], offset: Sequence | None = None) -> "Cometric":
        """Cometric in coordinates ``x'`` with ``x = P x' + offset``: ``P^{-1} g(P x' + offset) P^{-T}``."""
        d = self.d
        P = [[as_fraction(c) for c in row] for row in P]
        Pinv = inverse(P)
        sub = [[substitute_linear(p, P) for p in row] for row in self.entries]
        if offset is not None and any(offset):
            b = [as_fraction(c) for c in offset]
            sub = [[p.translate(self._preimage(P, b)) for p in row] for row in sub]
        out = []
        for a in range(d):
            row = []
            for b in range(d):
                s = Poly.zero(d)
                for i in range(d):
                    if not Pinv[a][i]:
                        continue
                    for j in range(d):
                        if Pinv[b][j] and not sub[i][j].is_zero:
                            s = s + sub[i][j] * (Pinv[a][i] * Pinv[b][j])
                row.append(s)
            out.append(row)
        return Cometric(out, self.names)

    @staticmethod
    def _preimage(P, b):
        # x' shift t with P t = b, so that substituting x' -> x' + t realizes the offset
        Pinv = inverse(P)
        return [sum((Pinv[i][j] * b[j] for j in range(len(b))), as_fraction(0)) for i in range(len(b))]

    def scaled(self, c) -> "Cometric":
        c = as_fraction(c)
        return Cometric([[p * c for p in row] for row in self.entries], self.names)

    def direct_sum(self, other: "Cometric", names=None) -> "Cometric":
        d1, d2 = self.d, other.d
        n = d1 + d2
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                if i < d1 and j < d1:
                    row.append(self.entries[i][j].embed(n, list(range(d1))))
                elif i >= d1 and j >= d1:
                    row.append(other.entries[i - d1][j - d1].embed(n, list(range(d1, n))))
                else:
                    row.append(Poly.zero(n))
            rows.append(row)
        return Cometric(rows, names or default_names(n))

    def to_rows(self) -> list[list[str]]:
        return [[p.to_string(self.names) for p in row] for row in self.entries]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(r) + "]" for r in self.to_rows()) + "]"
