"""Localization at Zariski opens ``U_f`` and Laurent-valued module traces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, NotAnEndomorphism, ZeroPolynomial
from .laurent import ONE, ZERO, LaurentPoly, canonical_associate, exact_div, gcd
from .matrix import Matrix, as_matrix, matmul, matvec, smith_form, trace
from .modules import GradedModule, InvariantFactors, PresentedModule, Support, classify, solve_linear, support
from .ratfunc import RationalFunction

EVEN_MINUS_ODD = "even_minus_odd"
ODD_MINUS_EVEN = "odd_minus_even"


@dataclass(frozen=True)
class LocalizedModule:
    """``M_f``: free rank unchanged, torsion factors stripped of every factor shared with ``f``."""

    inverted: LaurentPoly
    factors: InvariantFactors

    def __post_init__(self):
        object.__setattr__(self, "inverted", canonical_associate(self.inverted))
        for d in self.factors.torsion:
            if gcd(d, self.inverted) != ONE:
                raise ValueError(f"torsion factor {d} is not coprime to {self.inverted}")

    @property
    def is_zero(self) -> bool:
        return self.factors.is_zero

    def support(self) -> Support:
        return support(self.factors)


def _strip(d: LaurentPoly, f: LaurentPoly) -> LaurentPoly:
    # d / gcd(d, f^inf); at most deg d rounds
    while True:
        g = gcd(d, f)
        if g == ONE:
            return canonical_associate(d)
        d = exact_div(d, g)


def localize(inv, f) -> LocalizedModule:
    """Localize an ``InvariantFactors`` (or an already localized module) at ``U_f``."""
    f = LaurentPoly.coerce(f)
    if f.is_zero:
        raise ZeroPolynomial("cannot invert the zero polynomial")
    if isinstance(inv, LocalizedModule):
        f = inv.inverted * f
        inv = inv.factors
    f = canonical_associate(f)
    torsion = tuple(d for d in (_strip(d, f) for d in inv.torsion) if not d.is_unit)
    return LocalizedModule(f, InvariantFactors(torsion, inv.free_rank))


# -- endomorphisms ------------------------------------------------------------


@dataclass(frozen=True)
class GradedModuleMap:
    """Degree-``parity`` self-map of a graded module.

    Even maps: ``blocks[d]`` acts on degree ``d``.  Odd maps:
    ``blocks[0]`` sends degree 0 to degree 1 and ``blocks[1]`` sends
    degree 1 to degree 0.
    """

    parity: int
    blocks: tuple

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ValueError("parity must be 0 or 1")
        if len(self.blocks) != 2:
            raise ValueError("a graded map needs one block per source degree")
        object.__setattr__(self, "blocks", tuple(as_matrix(b) for b in self.blocks))

    @classmethod
    def even(cls, block0, block1=()) -> GradedModuleMap:
        return cls(0, (block0, block1))

    @classmethod
    def odd(cls, block01=(), block10=()) -> GradedModuleMap:
        return cls(1, (block01, block10))


@dataclass(frozen=True)
class GradedTrace:
    value: object  # LaurentPoly, or RationalFunction when localized
    parity: int
    convention: str = EVEN_MINUS_ODD

    @property
    def note(self) -> str | None:
        if self.parity == 1:
            return "odd degree: zero by definition"
        return None


def _check_square(m: PresentedModule, L: Matrix):
    g = m.generators
    if len(L) != g or any(len(r) != g for r in L):
        raise DimensionMismatch(f"endomorphism must be {g}x{g}")


def verify_homomorphism(src: PresentedModule, dst: PresentedModule, L: Matrix) -> bool:
    """True iff ``L`` maps every relation of ``src`` into the relation span of ``dst``."""
    L = as_matrix(L)
    if len(L) != dst.generators or any(len(r) != src.generators for r in L):
        raise DimensionMismatch(f"map must be {dst.generators}x{src.generators}")
    R = dst.matrix()
    for col in src.relation_columns():
        img = matvec(L, col) if L else []
        if solve_linear(R, img, dst.num_relations) is None:
            return False
    return True


def verify_endomorphism(m: PresentedModule, L: Matrix) -> bool:
    L = as_matrix(L)
    _check_square(m, L)
    return verify_homomorphism(m, m, L)


def module_trace(m: PresentedModule, L: Matrix) -> LaurentPoly:
    """Trace of the compression of ``L`` to the free part of ``m``.

    In the Smith basis (torsion coordinates first) ``U L U^-1`` is block
    upper-triangular; the answer is the trace of its lower-right block.
    """
    L = as_matrix(L)
    if not verify_endomorphism(m, L):
        raise NotAnEndomorphism("matrix does not descend to the presented module")
    if m.generators == 0:
        return ZERO
    s = smith_form(m.matrix(), m.num_relations)
    r = s.rank
    conj = matmul(matmul(s.U, L), s.U_inv)
    total = ZERO
    for i in range(r, m.generators):
        total = total + conj[i][i]
    return total


def graded_trace(gm: GradedModule, L: GradedModuleMap, convention: str = EVEN_MINUS_ODD) -> GradedTrace:
    _check_graded(gm, L)
    if L.parity == 1:
        return GradedTrace(ZERO, 1, convention)
    t0 = module_trace(gm.degree0, L.blocks[0])
    t1 = module_trace(gm.degree1, L.blocks[1])
    return GradedTrace(_signed(t0, t1, convention), 0, convention)


def _signed(t0, t1, convention):
    if convention == EVEN_MINUS_ODD:
        return t0 - t1
    if convention == ODD_MINUS_EVEN:
        return t1 - t0
    raise ValueError(f"unknown graded-trace convention {convention!r}")


def _check_graded(gm: GradedModule, L: GradedModuleMap):
    if L.parity == 0:
        for d in (0, 1):
            if not verify_endomorphism(gm.degree(d), L.blocks[d]):
                raise NotAnEndomorphism(f"degree-{d} block does not descend to the module")
    else:
        for d in (0, 1):
            src, dst = gm.degree(d), gm.degree(1 - d)
            if not verify_homomorphism(src, dst, _shaped(L.blocks[d], dst.generators, src.generators)):
                raise NotAnEndomorphism(f"odd block from degree {d} does not descend to the module")


def _shaped(M: Matrix, rows: int, cols: int) -> Matrix:
    # an empty block stands for the zero map between the given degrees
    if not M and rows and cols:
        return [[ZERO] * cols for _ in range(rows)]
    if not M:
        return [[] for _ in range(rows)]
    return M


# -- localized traces: computed over the fraction field ---------------------------


def _field_trace_on_quotient(L: Matrix, relation_cols: Sequence[Sequence[LaurentPoly]], g: int) -> RationalFunction:
    """Trace of ``L`` on ``K^g / span(relations)`` with ``K = Q(X)``.

    Tensoring with ``K`` kills torsion and keeps the free part, so this is an
    independent route to the free-part trace.
    """
    K = RationalFunction
    basis: list[list[RationalFunction]] = []  # echelonized copies
    kept: list[list[RationalFunction]] = []   # original independent columns
    pivots: list[int] = []
    for col in relation_cols:
        v = [K(x) for x in col]
        w = list(v)
        for b, p in zip(basis, pivots):
            if not w[p].is_zero:
                c = w[p] / b[p]
                w = [wi - c * bi for wi, bi in zip(w, b)]
        p = next((i for i, x in enumerate(w) if not x.is_zero), None)
        if p is not None:
            basis.append(w)
            pivots.append(p)
            kept.append(v)
    total = K(trace(L)) if g else K(0)
    s = len(kept)
    if s == 0:
        return total
    # restriction of L to W: solve B_P Z = (L B)_P on the pivot rows
    Lf = [[K(x) for x in row] for row in L]
    B = [[kept[j][i] for j in range(s)] for i in range(g)]
    LB = [[sum((Lf[i][k] * B[k][j] for k in range(g)), K(0)) for j in range(s)] for i in range(g)]
    rows = _independent_rows(B, s)
    Z = _solve_field([B[i] for i in rows], [LB[i] for i in rows])
    return total - sum((Z[i][i] for i in range(s)), K(0))


def _independent_rows(B, s):
    """Indices of ``s`` rows of the rank-``s`` matrix ``B`` forming an invertible block."""
    chosen, ech = [], []
    for i, row in enumerate(B):
        w = list(row)
        for (p, e) in ech:
            if not w[p].is_zero:
                c = w[p] / e[p]
                w = [a - c * b for a, b in zip(w, e)]
        p = next((j for j, x in enumerate(w) if not x.is_zero), None)
        if p is not None:
            ech.append((p, w))
            chosen.append(i)
            if len(chosen) == s:
                break
    return chosen


def _solve_field(A, B):
    """Gauss-Jordan over a field: returns ``A^-1 B`` for square invertible ``A``."""
    n = len(A)
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if not M[r][c].is_zero)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and not M[r][c].is_zero:
                k = M[r][c]
                M[r] = [x - k * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def localized_trace(m: PresentedModule, L: Matrix, f) -> RationalFunction:
    """Trace of ``L_f`` on the free part of ``M_f``, as an element of ``Laur_f``."""
    L = as_matrix(L)
    f = LaurentPoly.coerce(f)
    if f.is_zero:
        raise ZeroPolynomial("cannot localize at the zero polynomial")
    if not verify_endomorphism(m, L):
        raise NotAnEndomorphism("matrix does not descend to the presented module")
    loc = localize(classify(m), f)
    if loc.factors.free_rank == 0:
        return RationalFunction(0)
    return _field_trace_on_quotient(L, m.relation_columns(), m.generators)


def graded_localized_trace(gm: GradedModule, L: GradedModuleMap, f,
                           convention: str = EVEN_MINUS_ODD) -> GradedTrace:
    _check_graded(gm, L)
    if L.parity == 1:
        return GradedTrace(RationalFunction(0), 1, convention)
    t0 = localized_trace(gm.degree0, L.blocks[0], f)
    t1 = localized_trace(gm.degree1, L.blocks[1], f)
    return GradedTrace(_signed(t0, t1, convention), 0, convention)
