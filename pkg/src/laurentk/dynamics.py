"""Spectra and zeta functions from integer-matrix actions on K-theory.

An automorphism of a C*-algebra B is recorded only through its action on
K_0(B) and K_1(B).  The circle-spectrum of the crossed product is the set of
eigenvalues of that action; for linear maps of tori the action is the
exterior algebra of the transposed matrix, with even exterior powers in
degree 0 and odd ones in degree 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DegeneratePower, FullSupport, NotSymmetric, NotZeroOne, OracleMismatch, SingularAction
from .laurent import ONE, LaurentPoly, numeric_roots, squarefree_part
from .localize import ODD_MINUS_EVEN
from .modules import Support
from .ratfunc import RationalFunction
from .series import DEFAULT_ORDER, TruncatedSeries, power_sum_series, series_exp

IntMatrix = tuple  # tuple[tuple[int, ...], ...]

TORUS_DISCREPANCY = (
    "torus K-theory taken as exterior powers of T^t (even on K0, odd on K1); "
    "the spectrum and char include Λ^2 and higher, e.g. det T, not only the eigenvalues of T"
)


def int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    M = tuple(tuple(int(x) for x in r) for r in rows)
    if any(len(r) != len(M) for r in M):
        raise ValueError("matrix must be square")
    return M


def parse_int_matrix(text: str) -> IntMatrix:
    """Rows separated by ';', entries by ','; e.g. ``"1,1;1,0"``.  Empty text is 0x0."""
    from .errors import ParseError

    text = text.strip()
    if not text:
        return ()
    rows = []
    for r in text.split(";"):
        try:
            rows.append([int(x) for x in r.split(",")])
        except ValueError:
            raise ParseError(f"bad integer row {r.strip()!r} in matrix {text!r}") from None
    try:
        return int_matrix(rows)
    except ValueError as exc:
        raise ParseError(f"{exc}: {text!r}") from None


def format_int_matrix(M: IntMatrix) -> str:
    return ";".join(",".join(str(x) for x in r) for r in M)


def _mul(A, B):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _pow(A, k):
    n = len(A)
    R = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    while k:
        if k & 1:
            R = _mul(R, A)
        A = _mul(A, A)
        k >>= 1
    return R


def _trace(A) -> int:
    return sum(A[i][i] for i in range(len(A)))


def _transpose(A):
    return tuple(zip(*A)) if A else ()


def int_det(A) -> int:
    """Exact determinant via Gaussian elimination over Q."""
    n = len(A)
    M = [[Fraction(x) for x in r] for r in A]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for r in range(c + 1, n):
            if M[r][c]:
                k = M[r][c] / M[c][c]
                M[r] = [a - k * b for a, b in zip(M[r], M[c])]
    return int(d)


def charpoly(A) -> LaurentPoly:
    """``det(X*I - A)`` by Faddeev-LeVerrier, exact over Q."""
    n = len(A)
    if n == 0:
        return ONE
    Af = [[Fraction(x) for x in r] for r in A]
    coeffs = [Fraction(1)]  # c_n = 1, then c_{n-1}, ...
    Mk = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        Mk = [[sum(Af[i][t] * Mk[t][j] for t in range(n)) + (c if i == j else 0) for j in range(n)]
              for i in range(n)]
        AM = [[sum(Af[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs.append(c)
    return LaurentPoly({n - i: v for i, v in enumerate(coeffs)})


def det_one_minus_tA(A) -> LaurentPoly:
    """``det(I - tA)`` as a polynomial in ``t``: the reversed characteristic polynomial."""
    n = len(A)
    cp = charpoly(A)
    return LaurentPoly({n - e: v for e, v in cp.terms()})


def exterior_power(A, k: int) -> IntMatrix:
    """Matrix of ``Λ^k A`` in the basis of sorted ``k``-subsets (entries are k x k minors)."""
    n = len(A)
    subsets = list(itertools.combinations(range(n), k))
    if k == 0:
        return ((1,),)
    return tuple(tuple(int_det(tuple(tuple(A[r][c] for c in J) for r in I)) for J in subsets)
                 for I in subsets)


def _block_diag(*blocks) -> IntMatrix:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    o = 0
    for b in blocks:
        for i, r in enumerate(b):
            for j, x in enumerate(r):
                out[o + i][o + j] = x
        o += len(b)
    return tuple(map(tuple, out))


@dataclass(frozen=True)
class KTheoryAction:
    """Integer matrices of an automorphism acting on K_0 and K_1."""

    k0_matrix: IntMatrix = ()
    k1_matrix: IntMatrix = ()

    def __post_init__(self):
        object.__setattr__(self, "k0_matrix", int_matrix(self.k0_matrix))
        object.__setattr__(self, "k1_matrix", int_matrix(self.k1_matrix))

    def check_invertible(self):
        for name, M in (("K0", self.k0_matrix), ("K1", self.k1_matrix)):
            if M and int_det(M) == 0:
                raise SingularAction(f"action on {name} is not invertible")

    @classmethod
    def of_torus(cls, T) -> KTheoryAction:
        """Action of the linear automorphism ``T`` on ``K^*(T^n)`` (exterior powers of ``T^t``)."""
        T = int_matrix(T)
        Tt = _transpose(T)
        n = len(T)
        even = [exterior_power(Tt, k) for k in range(0, n + 1, 2)]
        odd = [exterior_power(Tt, k) for k in range(1, n + 1, 2)]
        return cls(_block_diag(*even), _block_diag(*odd))


def tspec_of_crossed_product(a: KTheoryAction) -> Support:
    """Eigenvalues of the K-theory action, as a finite support."""
    a.check_invertible()
    return Support.finite(charpoly(a.k0_matrix) * charpoly(a.k1_matrix))


def ck_spectrum(A) -> Support:
    """Nonzero eigenvalues of a 0/1 matrix."""
    A = int_matrix(A)
    if any(x not in (0, 1) for r in A for x in r):
        raise NotZeroOne("Cuntz-Krieger matrices have entries in {0, 1}")
    # X is a unit, so the canonical form drops the zero eigenvalues
    return Support.finite(charpoly(A))


@dataclass(frozen=True)
class Obstruction:
    obstructed: bool
    witnesses: tuple


def commutativity_obstruction(s: Support, tol: float = 1e-9) -> Obstruction:
    """Spectral points off the unit circle rule out commutative models with spectrum in T."""
    if s.is_full:
        raise FullSupport("the obstruction test needs a finite spectrum")
    w = tuple(z for z in numeric_roots(s.generator) if abs(abs(z) - 1) > tol)
    return Obstruction(bool(w), w)


def char_function(a: KTheoryAction) -> RationalFunction:
    """``det(1 - t X_+) / det(1 - t X_-)`` as a reduced rational function in ``t``."""
    a.check_invertible()
    return RationalFunction(det_one_minus_tA(a.k0_matrix), det_one_minus_tA(a.k1_matrix))


def power_traces(M, N: int) -> list[int]:
    out, P = [], None
    for _ in range(N):
        P = M if P is None else _mul(P, M)
        out.append(_trace(P) if M else 0)
    return out


def graded_power_traces(a: KTheoryAction, N: int, convention: str = ODD_MINUS_EVEN) -> list[int]:
    t0 = power_traces(a.k0_matrix, N)
    t1 = power_traces(a.k1_matrix, N)
    if convention == ODD_MINUS_EVEN:
        return [y - x for x, y in zip(t0, t1)]
    return [x - y for x, y in zip(t0, t1)]


@dataclass(frozen=True)
class ZetaComparison:
    char_series: TruncatedSeries
    exp_series: TruncatedSeries

    @property
    def equal(self) -> bool:
        return self.char_series == self.exp_series


def zeta_series(a: KTheoryAction, N: int = DEFAULT_ORDER) -> ZetaComparison:
    """Both sides of ``char(t) = exp(sum tr_s(X^n) t^n / n)`` through ``t^N``.

    ``tr_s`` is trace on K_1 minus trace on K_0.
    """
    c = char_function(a)
    lhs = TruncatedSeries.from_rational(c.numerator, c.denominator, N)
    rhs = series_exp(power_sum_series(graded_power_traces(a, N), N))
    return ZetaComparison(lhs, rhs)


def zeta_identity_check(a: KTheoryAction, N: int = DEFAULT_ORDER) -> bool:
    return zeta_series(a, N).equal


# -- toral automorphisms --------------------------------------------------------


@dataclass(frozen=True)
class ToralAutomorphism:
    T: IntMatrix

    def __post_init__(self):
        T = int_matrix(self.T)
        if abs(int_det(T)) != 1:
            raise SingularAction(f"det T = {int_det(T)}; a toral automorphism needs det = ±1")
        object.__setattr__(self, "T", T)

    @property
    def dim(self) -> int:
        return len(self.T)

    @property
    def is_symmetric(self) -> bool:
        return self.T == _transpose(self.T)

    def eigenvalues(self) -> np.ndarray:
        A = np.array(self.T, dtype=float)
        if self.is_symmetric:
            return np.linalg.eigvalsh(A)
        return np.linalg.eigvals(A)

    def is_hyperbolic(self, tol: float = 1e-9) -> bool:
        return all(abs(abs(z) - 1) > tol for z in self.eigenvalues())

    def k_theory_action(self) -> KTheoryAction:
        return KTheoryAction.of_torus(self.T)


def _power_minus_identity(T, n):
    P = _pow(T, n)
    return tuple(tuple(P[i][j] - (i == j) for j in range(len(P))) for i in range(len(P)))


def integer_smith_diagonal(A) -> list[int]:
    """Elementary divisors of an integer matrix (nonnegative, divisibility chain)."""
    M = [list(r) for r in A]
    m = len(M)
    n = len(M[0]) if M else 0
    diag = []
    for t in range(min(m, n)):
        cells = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not cells:
            break
        _, i, j = min(cells)
        M[t], M[i] = M[i], M[t]
        for r in M:
            r[t], r[j] = r[j], r[t]
        while True:
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = M[i][t] // p
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                dirty |= M[i][t] != 0
            for j in range(t + 1, n):
                q = M[t][j] // p
                if q:
                    for r in M:
                        r[j] -= q * r[t]
                dirty |= M[t][j] != 0
            if dirty:
                cells = ([(abs(M[i][t]), i, t) for i in range(t + 1, m) if M[i][t]]
                         + [(abs(M[t][j]), t, j) for j in range(t + 1, n) if M[t][j]])
                _, i, j = min(cells)
                M[t], M[i] = M[i], M[t]
                for r in M:
                    r[t], r[j] = r[j], r[t]
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p), None)
            if bad is None:
                break
            M[t] = [a + b for a, b in zip(M[t], M[bad])]
        diag.append(abs(M[t][t]))
    return diag


def lattice_point_count(T: ToralAutomorphism, n: int) -> int:
    """Fixed points of ``phi_T^n``: points ``x`` in ``[0,1)^d`` with ``(T^n - I)x`` integral.

    Counted as the index of ``(T^n - I) Z^d`` in ``Z^d``: the product of
    the elementary divisors.  Independent of any determinant routine.
    """
    A = _power_minus_identity(T.T, n)
    diag = integer_smith_diagonal(A)
    if len(diag) < len(A) or 0 in diag:
        raise DegeneratePower(f"T^{n} - I is singular")
    return math.prod(diag)


def periodic_points(T: ToralAutomorphism, n: int) -> int:
    """``|det(T^n - I)|``, cross-checked against :func:`lattice_point_count`."""
    if n < 1:
        raise ValueError("period must be positive")
    d = int_det(_power_minus_identity(T.T, n))
    if d == 0:
        raise DegeneratePower(f"det(T^{n} - I) = 0")
    count = lattice_point_count(T, n)
    if count != abs(d):
        raise OracleMismatch(f"|det(T^{n}-I)| = {abs(d)} but lattice count = {count}")
    return abs(d)


@dataclass(frozen=True)
class LefschetzSign:
    graded_trace: int      # even minus odd exterior-power traces of T^n
    k: int                 # eigenvalues of T^n greater than 1
    periodic_points: int

    @property
    def holds(self) -> bool:
        return self.graded_trace == (-1) ** self.k * self.periodic_points


def lefschetz_sign(T: ToralAutomorphism, n: int) -> LefschetzSign:
    if not T.is_symmetric:
        raise NotSymmetric("the sign rule is stated for self-adjoint T")
    P = periodic_points(T, n)
    act = KTheoryAction.of_torus(_pow(T.T, n))
    # the dynamics convention is K1 - K0; the Lefschetz number is K0 - K1
    trs = -(_trace(act.k1_matrix) - _trace(act.k0_matrix))
    lam = T.eigenvalues()
    k = int(sum(1 for x in lam if x ** n > 1))
    return LefschetzSign(trs, k, P)


def lefschetz_sign_check(T: ToralAutomorphism, n: int) -> bool:
    return lefschetz_sign(T, n).holds
