"""Finitely generated modules over the Laurent ring.

A module is presented as the cokernel of a relation matrix (one row per
generator, one column per relation).  Smith normal form classifies it as
``Laur/(d_1) + ... + Laur/(d_k) + Laur^r`` with ``d_1 | d_2 | ... | d_k``.
Supports are zero sets in C*; finite ones are carried by a squarefree
canonical generator, never by a list of roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DimensionMismatch
from .laurent import (
    ONE,
    ZERO,
    LaurentPoly,
    canonical_associate,
    divides,
    evaluate,
    exact_div,
    gcd,
    laurent_divmod,
    lcm,
    numeric_roots,
    squarefree_part,
)
from .matrix import Matrix, block_diag, matvec, smith_form

FULL = "full"
FINITE = "finite"


@dataclass(frozen=True)
class PresentedModule:
    """Cokernel of ``relations`` (``generators`` rows, ``num_relations`` columns)."""

    generators: int
    relations: tuple = ()
    num_relations: int = 0

    def __post_init__(self):
        rows = tuple(tuple(LaurentPoly.coerce(x) for x in r) for r in self.relations)
        if len(rows) != self.generators:
            if rows:
                raise DimensionMismatch(
                    f"relation matrix has {len(rows)} rows but the module has {self.generators} generators")
            rows = tuple((ZERO,) * self.num_relations for _ in range(self.generators))
        ncols = {len(r) for r in rows}
        if len(ncols) > 1:
            raise DimensionMismatch("ragged relation matrix")
        n = ncols.pop() if ncols else self.num_relations
        if rows and self.num_relations and n != self.num_relations:
            raise DimensionMismatch("num_relations disagrees with the relation matrix")
        object.__setattr__(self, "relations", rows)
        object.__setattr__(self, "num_relations", n)

    @classmethod
    def from_matrix(cls, relations: Sequence[Sequence], generators: int | None = None) -> PresentedModule:
        rows = [list(r) for r in relations]
        return cls(len(rows) if generators is None else generators, tuple(map(tuple, rows)))

    @classmethod
    def free(cls, rank: int) -> PresentedModule:
        return cls(rank)

    @classmethod
    def cyclic(cls, f) -> PresentedModule:
        """``Laur/(f)``."""
        return cls(1, ((LaurentPoly.coerce(f),),))

    @classmethod
    def from_invariant_factors(cls, inv: InvariantFactors) -> PresentedModule:
        k = len(inv.torsion)
        g = k + inv.free_rank
        rows = [[inv.torsion[i] if (i == j) else ZERO for j in range(k)] for i in range(g)]
        return cls(g, tuple(map(tuple, rows)), k)

    def matrix(self) -> Matrix:
        return [list(r) for r in self.relations]

    def relation_columns(self) -> list[list[LaurentPoly]]:
        return [[self.relations[i][j] for i in range(self.generators)] for j in range(self.num_relations)]


@dataclass(frozen=True)
class GradedModule:
    degree0: PresentedModule
    degree1: PresentedModule = field(default_factory=lambda: PresentedModule(0))

    def degree(self, d: int) -> PresentedModule:
        return self.degree0 if d == 0 else self.degree1


@dataclass(frozen=True)
class InvariantFactors:
    """Torsion chain ``d_1 | ... | d_k`` (canonical, non-units) plus free rank."""

    torsion: tuple = ()
    free_rank: int = 0

    def __post_init__(self):
        tors = tuple(canonical_associate(LaurentPoly.coerce(d)) for d in self.torsion)
        if any(d.is_unit for d in tors):
            raise ValueError("unit invariant factors must be dropped")
        for a, b in zip(tors, tors[1:]):
            if not divides(a, b):
                raise ValueError(f"invariant factors break the divisibility chain: {a} does not divide {b}")
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        object.__setattr__(self, "torsion", tors)

    @property
    def is_zero(self) -> bool:
        return not self.torsion and self.free_rank == 0

    @property
    def is_torsion(self) -> bool:
        return self.free_rank == 0

    def describe(self) -> str:
        if self.is_zero:
            return "zero module"
        parts = [f"Laur/({d})" for d in self.torsion]
        if self.free_rank:
            parts.append("Laur" if self.free_rank == 1 else f"Laur^{self.free_rank}")
        return " + ".join(parts)


@dataclass(frozen=True)
class Support:
    """Either all of C* (``kind == FULL``) or the zero set of ``generator``.

    ``generator == 1`` encodes the empty support.
    """

    kind: str
    generator: LaurentPoly | None = None

    def __post_init__(self):
        if self.kind == FULL:
            if self.generator is not None:
                raise ValueError("a full support carries no generator")
        elif self.kind == FINITE:
            if self.generator is None:
                raise ValueError("a finite support needs a generator")
            object.__setattr__(self, "generator", squarefree_part(self.generator))
        else:
            raise ValueError(f"unknown support kind {self.kind!r}")

    @classmethod
    def full(cls) -> Support:
        return cls(FULL)

    @classmethod
    def finite(cls, generator) -> Support:
        return cls(FINITE, LaurentPoly.coerce(generator))

    @classmethod
    def empty(cls) -> Support:
        return cls(FINITE, ONE)

    @property
    def is_full(self) -> bool:
        return self.kind == FULL

    @property
    def is_empty(self) -> bool:
        return self.kind == FINITE and self.generator == ONE

    def union(self, other: Support) -> Support:
        if self.is_full or other.is_full:
            return Support.full()
        return Support.finite(lcm(self.generator, other.generator))

    def intersection(self, other: Support) -> Support:
        if self.is_full:
            return other
        if other.is_full:
            return self
        return Support.finite(gcd(self.generator, other.generator))

    def is_subset(self, other: Support) -> bool:
        if other.is_full:
            return True
        if self.is_full:
            return False
        return divides(self.generator, other.generator)

    def is_disjoint_from_zeros_of(self, f: LaurentPoly) -> bool:
        if self.is_full:
            return False
        return gcd(self.generator, f) == ONE

    def contains(self, z, tol: float = 1e-9) -> bool:
        if self.is_full:
            return z != 0
        return abs(evaluate(self.generator, complex(z))) < tol

    def roots(self) -> list[complex]:
        if self.is_full:
            raise ValueError("a full support has no finite root list")
        return numeric_roots(self.generator)

    def describe(self) -> str:
        if self.is_full:
            return "FULL (C*)"
        if self.is_empty:
            return "EMPTY"
        return f"FINITE, zeros of {self.generator}"


# -- classification -----------------------------------------------------------


def classify(m: PresentedModule) -> InvariantFactors:
    """Invariant factors and free rank of the cokernel of ``m.relations``."""
    s = smith_form(m.matrix(), m.num_relations)
    nonzero = [d for d in s.diagonal if d]
    torsion = tuple(d for d in nonzero if not d.is_unit)
    return InvariantFactors(torsion, m.generators - len(nonzero))


def annihilator(inv: InvariantFactors) -> LaurentPoly:
    """Generator of ``ann(M)``: 0 with a free summand, else the last invariant factor, 1 for M = 0."""
    if inv.free_rank > 0:
        return ZERO
    if not inv.torsion:
        return ONE
    return inv.torsion[-1]


def support(inv: InvariantFactors) -> Support:
    if inv.free_rank > 0:
        return Support.full()
    return Support.finite(annihilator(inv))


def graded_support(gm: GradedModule) -> Support:
    return support(classify(gm.degree0)).union(support(classify(gm.degree1)))


def direct_sum(a: InvariantFactors, b: InvariantFactors) -> InvariantFactors:
    """Classify ``a + b`` by re-running SNF on the block-diagonal presentation."""
    ta, tb = list(a.torsion), list(b.torsion)
    k = len(ta) + len(tb)
    rel = block_diag(([[d if i == j else ZERO for j in range(len(ta))] for i, d in enumerate(ta)], len(ta), len(ta)),
                     ([[d if i == j else ZERO for j in range(len(tb))] for i, d in enumerate(tb)], len(tb), len(tb)))
    inv = classify(PresentedModule(k, tuple(map(tuple, rel)), k))
    return InvariantFactors(inv.torsion, a.free_rank + b.free_rank)


def direct_sum_modules(a: PresentedModule, b: PresentedModule) -> PresentedModule:
    rel = block_diag((a.matrix(), a.generators, a.num_relations), (b.matrix(), b.generators, b.num_relations))
    return PresentedModule(a.generators + b.generators, tuple(map(tuple, rel)), a.num_relations + b.num_relations)


def solve_linear(A: Matrix, b: Sequence[LaurentPoly], ncols: int | None = None) -> list[LaurentPoly] | None:
    """Some ``x`` over the Laurent ring with ``A x = b``, or ``None``.

    Uses ``U A V = D``: the system becomes ``D y = U b`` with ``x = V y``.
    """
    b = [LaurentPoly.coerce(x) for x in b]
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    if m != len(b):
        raise DimensionMismatch(f"matrix has {m} rows, right-hand side has {len(b)} entries")
    s = smith_form(A, n)
    c = matvec(s.U, b) if m else []
    y = [ZERO] * n
    for i in range(m):
        d = s.D[i][i] if i < n else ZERO
        if d:
            q, r = laurent_divmod(c[i], d)
            if r:
                return None
            y[i] = q
        elif c[i]:
            return None
    return matvec(s.V, y) if n else []
