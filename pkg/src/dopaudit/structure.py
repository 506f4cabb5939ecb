"""Irreducibility, block decomposition and per-block Einstein verdicts.

A second admissible cometric ``s`` gives a constant operator ``A = s g^{-1}``;
conversely any constant ``A`` with ``A g`` symmetric is such an operator.  The
space of these operators (the *commutant*) has dimension 1 exactly when the
model is irreducible in this operational sense, reported as
COMMUTANT-IRREDUCIBLE.  Rational eigenspaces of a non-scalar commutant element
split the cometric into orthogonal blocks, each depending only on its own
variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .admissibility import AdmissibilityReport, full_admissibility
from .cometric import Cometric
from .errors import InternalContradiction, NeedsExtension, StructuralError
from .polyring import Poly, associates, charpoly, exact_divide, identity, matmul, nullspace, rank
from .polyring.roots import rational_roots, squarefree_univariate
from .tensorcalc import curvature_bundle

IRREDUCIBILITY_CRITERION = "COMMUTANT-IRREDUCIBLE"


def _flat(M):
    return [c for row in M for c in row]


def _independent_of(vec, basis) -> bool:
    return rank(basis + [vec]) > len(basis)


def commutant_basis(g: Cometric) -> list[list[list[Fraction]]]:
    """Basis of {A constant : A g symmetric}; the identity comes first."""
    d = g.d
    # unknown a_{ik} at column i*d + k; equation (A g)_{ij} - (A g)_{ji} = 0 per monomial
    eqs: dict = {}
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(d):
                for e, c in g[k, j].terms.items():
                    eqs.setdefault((i, j, e), {})
                    col = i * d + k
                    eqs[(i, j, e)][col] = eqs[(i, j, e)].get(col, 0) + c
                for e, c in g[k, i].terms.items():
                    eqs.setdefault((i, j, e), {})
                    col = j * d + k
                    eqs[(i, j, e)][col] = eqs[(i, j, e)].get(col, 0) - c
    rows = []
    for key in sorted(eqs):
        row = [Fraction(0)] * (d * d)
        for col, c in eqs[key].items():
            row[col] = Fraction(c)
        if any(row):
            rows.append(row)
    sols = nullspace(rows, ncols=d * d)
    basis = [_flat(identity(d))]
    for v in sols:
        if _independent_of(v, basis):
            basis.append(v)
    return [[b[i * d:(i + 1) * d] for i in range(d)] for b in basis]


def is_irreducible(g: Cometric) -> bool:
    return len(commutant_basis(g)) == 1


def is_scalar(A) -> bool:
    d = len(A)
    return all(A[i][j] == (A[0][0] if i == j else 0) for i in range(d) for j in range(d))


def distinct_eigenvalue_count(A) -> int:
    """Number of distinct complex eigenvalues (degree of the squarefree characteristic polynomial)."""
    return squarefree_univariate(charpoly(A)).degree


@dataclass(frozen=True)
class Block:
    variables: tuple
    cometric: Cometric | None
    boundary: Poly | None
    separated: bool


@dataclass(frozen=True)
class Split:
    basis_change: list
    eigenvalues: list
    transformed: Cometric
    blocks: list


def _matpow(A, k):
    out = identity(len(A))
    for _ in range(k):
        out = matmul(out, A)
    return out


def split_once(g: Cometric, A) -> Split:
    """Split ``g`` along the rational generalized eigenspaces of ``A``."""
    d = g.d
    if is_scalar(A):
        raise StructuralError("cannot split along a scalar operator")
    cp = charpoly(A)
    eig = rational_roots(cp)
    mults = []
    rest = cp
    t = Poly.var(1, 0)
    for lam in eig:
        m = 0
        while True:
            q = exact_divide(rest, t - lam)
            if q is None:
                break
            rest, m = q, m + 1
        mults.append(m)
    if sum(mults) != d:
        raise NeedsExtension(f"characteristic polynomial {cp.to_string(('t',))} has irrational roots")
    columns, groups = [], []
    for lam, m in zip(eig, mults):
        shifted = [[A[i][j] - (lam if i == j else 0) for j in range(d)] for i in range(d)]
        space = nullspace(_matpow(shifted, m))
        if len(space) != m:
            raise InternalContradiction("generalized eigenspace has the wrong dimension")
        groups.append(list(range(len(columns), len(columns) + m)))
        columns.extend(space)
    P = [[columns[c][r] for c in range(d)] for r in range(d)]
    gt = g.transform(P)
    for a, ga in enumerate(groups):
        for b, gb in enumerate(groups):
            if a != b and any(not gt[i, j].is_zero for i in ga for j in gb):
                raise InternalContradiction("off-block entries of the transformed cometric do not vanish")
    blocks = [make_block(gt, tuple(ix)) for ix in groups]
    return Split(P, eig, gt, blocks)


def make_block(g: Cometric, variables: tuple) -> Block:
    try:
        rows = [[g[i, j].restrict(variables) for j in variables] for i in variables]
    except StructuralError:
        return Block(variables, None, None, False)
    names = tuple(g.names[i] for i in variables)
    bc = Cometric(rows, names)
    return Block(variables, bc, bc.boundary, True)


def verify_separation(g: Cometric, blocks: list[Block]) -> list[bool]:
    """Per-block flag: entries and boundary factor free of outside variables, and prod D_b ~ D."""
    flags = []
    for b in blocks:
        if b.cometric is None:
            flags.append(False)
            continue
        ok = all(g[i, j].variables() <= set(b.variables) for i in b.variables for j in b.variables)
        flags.append(ok and b.boundary.embed(g.d, list(b.variables)).variables() <= set(b.variables))
    if all(flags):
        prod = Poly.one(g.d)
        for b in blocks:
            prod = prod * b.boundary.embed(g.d, list(b.variables))
        if not associates(prod, g.boundary):
            flags = [False] * len(blocks)
    return flags


@dataclass(frozen=True)
class EinsteinVerdict:
    status: str  # PASS, FAIL, NONPOLYNOMIAL
    lam: Fraction | None = None
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.status == "PASS"


def einstein_verdict(g: Cometric, bundle=None) -> EinsteinVerdict:
    """Find lambda with R^{ij} = lambda g^{ij}, or report the first violated entry."""
    if bundle is None:
        bundle = curvature_bundle(g)
    d = g.d
    R = bundle.raised
    for i in range(d):
        for j in range(d):
            if not R[i][j].is_polynomial:
                return EinsteinVerdict("NONPOLYNOMIAL", witness=(i, j))
    lam = None
    for i in range(d):
        for j in range(d):
            if not g[i, j].is_zero:
                q = R[i][j].num
                ratio = _constant_ratio(q, g[i, j])
                if ratio is None:
                    return EinsteinVerdict("FAIL", witness=(i, j))
                lam = ratio
                break
        if lam is not None:
            break
    for i in range(d):
        for j in range(d):
            if not (R[i][j].num - g[i, j] * lam).is_zero:
                return EinsteinVerdict("FAIL", lam=None, witness=(i, j))
    return EinsteinVerdict("PASS", lam=lam)


def _constant_ratio(p: Poly, q: Poly):
    if p.is_zero:
        return Fraction(0)
    e = q.leading_exponent()
    c = p.terms.get(e, Fraction(0)) / q.terms[e]
    return c if (p - q * c).is_zero else None


@dataclass
class DecompositionTree:
    cometric: Cometric
    boundary: Poly
    commutant_dim: int
    basis_change: list | None = None
    eigenvalues: list | None = None
    blocks: list = field(default_factory=list)  # (Block, DecompositionTree | None)
    separation: list = field(default_factory=list)
    verdict: EinsteinVerdict | None = None

    @property
    def is_leaf(self) -> bool:
        return self.basis_change is None

    def leaves(self):
        if self.is_leaf:
            yield self
            return
        for _, sub in self.blocks:
            if sub is not None:
                yield from sub.leaves()

    @property
    def separated(self) -> bool:
        if self.is_leaf:
            return True
        return all(self.separation) and all(sub is not None and sub.separated for _, sub in self.blocks)

    def block_dimensions(self) -> list[int]:
        return [leaf.cometric.d for leaf in self.leaves()]

    def lambdas(self) -> list:
        return [leaf.verdict.lam if leaf.verdict else None for leaf in self.leaves()]


def _choose_splitter(basis):
    candidates = [(distinct_eigenvalue_count(A), k, A) for k, A in enumerate(basis) if not is_scalar(A)]
    candidates.sort(key=lambda t: (t[0], t[1]))
    return [A for _, _, A in candidates]


def decompose(g: Cometric, with_verdicts: bool = True) -> DecompositionTree:
    basis = commutant_basis(g)
    node = DecompositionTree(g, g.boundary, len(basis))
    if len(basis) == 1:
        if with_verdicts:
            node.verdict = einstein_verdict(g)
        return node
    split = None
    last = None
    for A in _choose_splitter(basis):
        try:
            split = split_once(g, A)
            break
        except NeedsExtension as exc:
            last = exc
    if split is None:
        raise last or NeedsExtension("no commutant element has a rational spectrum")
    node.basis_change = split.basis_change
    node.eigenvalues = split.eigenvalues
    node.separation = verify_separation(split.transformed, split.blocks)
    for b in split.blocks:
        sub = decompose(b.cometric, with_verdicts) if b.cometric is not None else None
        node.blocks.append((b, sub))
    return node


STATUSES = ("PASS", "FAIL", "NOT_APPLICABLE", "HYPOTHESIS_VIOLATED", "NEEDS_EXTENSION")


@dataclass
class MainTheoremVerdict:
    status: str
    admissibility: AdmissibilityReport
    tree: DecompositionTree | None
    reason: str = ""

    @property
    def lambdas(self) -> list:
        return self.tree.lambdas() if self.tree else []

    @property
    def block_dimensions(self) -> list:
        return self.tree.block_dimensions() if self.tree else []

    @property
    def einstein_ok(self) -> bool:
        return self.tree is not None and self.tree.separated and all(
            leaf.verdict is not None and leaf.verdict.ok for leaf in self.tree.leaves())


def main_theorem_check(g: Cometric) -> MainTheoremVerdict:
    """Direct sum of Einstein blocks, when the standing hypotheses hold."""
    adm = full_admissibility(g)
    if adm.boundary_poly.is_zero:
        return MainTheoremVerdict("HYPOTHESIS_VIOLATED", adm, None, "degenerate cometric")
    try:
        tree = decompose(g)
    except NeedsExtension as exc:
        return MainTheoremVerdict("NEEDS_EXTENSION", adm, None, str(exc))
    except InternalContradiction as exc:
        return MainTheoremVerdict("FAIL", adm, None, f"internal contradiction: {exc}")
    verdict = MainTheoremVerdict("PASS", adm, tree)
    if not adm.admissible:
        failed = [k for k, ok in (("entry_degree", adm.entry_degree_ok), ("squarefree", adm.squarefree_ok),
                                  ("condition2", adm.condition2_ok)) if not ok]
        verdict.status, verdict.reason = "HYPOTHESIS_VIOLATED", "failed: " + ", ".join(failed)
    elif not adm.boundary_degree_maximal:
        verdict.status = "NOT_APPLICABLE"
        verdict.reason = f"deg D = {adm.boundary_degree} < 2d = {2 * g.d}"
    elif not verdict.einstein_ok:
        verdict.status, verdict.reason = "FAIL", "a block is not Einstein or not separated"
    return verdict
