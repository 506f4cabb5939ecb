"""Standing hypotheses of an admissible diffusion-orthogonal cometric.

The checks are: entries of degree at most 2, boundary polynomial
``D = det g`` of maximal degree ``2d``, ``D`` squarefree, and the
divisibility condition ``D | sum_j g^{ij} d_j D`` for every row ``i``.
Compactness of the domain and integrability of the measure are not decidable
from ``g`` alone and are always reported as unverified.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cometric import Cometric
from .errors import StructuralError
from .polyring import Poly, exact_divide, gcd_list


UNVERIFIED_HYPOTHESES = ("domain_compact", "measure_integrable")


@dataclass(frozen=True)
class AdmissibilityReport:
    entry_degree_ok: bool
    boundary_poly: Poly
    boundary_degree: int
    boundary_degree_maximal: bool
    squarefree_ok: bool
    condition2_ok: bool
    quotients: tuple | None
    unverified: tuple = field(default=UNVERIFIED_HYPOTHESES)

    @property
    def admissible(self) -> bool:
        """All hypotheses except the maximal boundary degree."""
        return self.entry_degree_ok and self.squarefree_ok and self.condition2_ok

    @property
    def admissible_maximal(self) -> bool:
        return self.admissible and self.boundary_degree_maximal


def check_entry_degrees(g: Cometric) -> bool:
    return all(p.degree <= 2 for row in g.entries for p in row)


def boundary_polynomial(g: Cometric) -> tuple[Poly, int, bool]:
    D = g.boundary
    deg = D.degree
    return D, deg, deg == 2 * g.d


def squarefree_check(D: Poly) -> bool:
    """True iff gcd(D, d_1 D, ..., d_n D) is a nonzero constant."""
    if D.is_zero:
        raise StructuralError("squarefree check of the zero polynomial")
    return gcd_list([D] + [D.diff(i) for i in range(D.nvars)]).is_constant


def condition2_check(g: Cometric, D: Poly | None = None) -> tuple[bool, tuple | None]:
    """Row-wise divisibility of ``sum_j g^{ij} d_j D`` by ``D``.

    Returns the flag and, when it holds, the quotients ``q^i``.
    """
    if D is None:
        D = g.boundary
    if D.is_zero:
        return False, None
    grad = [D.diff(j) for j in range(g.d)]
    qs = []
    for i in range(g.d):
        row = Poly.zero(g.d)
        for j in range(g.d):
            if not g[i, j].is_zero and not grad[j].is_zero:
                row = row + g[i, j] * grad[j]
        q = exact_divide(row, D)
        if q is None:
            return False, None
        qs.append(q)
    return True, tuple(qs)


def full_admissibility(g: Cometric) -> AdmissibilityReport:
    D, deg, maximal = boundary_polynomial(g)
    if D.is_zero:
        return AdmissibilityReport(check_entry_degrees(g), D, deg, False, False, False, None)
    ok2, qs = condition2_check(g, D)
    return AdmissibilityReport(
        entry_degree_ok=check_entry_degrees(g),
        boundary_poly=D,
        boundary_degree=deg,
        boundary_degree_maximal=maximal,
        squarefree_ok=squarefree_check(D),
        condition2_ok=ok2,
        quotients=qs,
    )
