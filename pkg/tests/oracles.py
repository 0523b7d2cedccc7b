"""Independent reference computations used only by the tests.

Nothing here calls the package's own gcd, determinant or SNF code: sympy
and brute-force enumeration stand in for them.
"""

import itertools
from fractions import Fraction

import sympy

from laurentk.laurent import LaurentPoly

x = sympy.Symbol("x")


def to_sympy(p: LaurentPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * x**e for e, c in p.terms()), sympy.Integer(0))


def from_sympy(expr) -> LaurentPoly:
    expr = sympy.expand(expr)
    num, den = sympy.fraction(sympy.together(expr))
    den_poly = sympy.Poly(den, x)
    assert den_poly.is_monomial, f"not a Laurent polynomial: {expr}"
    shift = -den_poly.degree()
    lead = den_poly.LC()
    coeffs = {}
    for (e,), c in sympy.Poly(num, x).terms():
        c = sympy.Rational(c) / lead
        coeffs[e + shift] = Fraction(int(c.p), int(c.q))
    return LaurentPoly(coeffs)


def poly_part(p: LaurentPoly):
    """Shift to an ordinary polynomial (an associate) as a sympy Poly."""
    return sympy.Poly(sympy.expand(to_sympy(p) * x**(-p.low)), x, domain="QQ")


def canonical_sympy(p: LaurentPoly) -> LaurentPoly:
    """Monic, nonzero-constant associate computed by sympy."""
    q = poly_part(p).monic()
    return from_sympy(q.as_expr())


def gcd_oracle(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    if f.is_zero:
        return canonical_sympy(g)
    if g.is_zero:
        return canonical_sympy(f)
    return canonical_sympy(from_sympy(sympy.gcd(poly_part(f), poly_part(g)).as_expr()))


def leibniz_det(M):
    """Determinant by summing over permutations."""
    n = len(M)
    total = LaurentPoly()
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = LaurentPoly({0: -1 if inv % 2 else 1})
        for i in range(n):
            term = term * M[i][perm[i]]
            if term.is_zero:
                break
        total = total + term
    return total


def minors_gcd(A, k):
    """gcd of all k x k minors (0 if all vanish), via sympy gcd."""
    m, n = len(A), len(A[0]) if A else 0
    g = sympy.Integer(0)
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(n), k):
            d = leibniz_det([[A[r][c] for c in cols] for r in rows])
            if d:
                g = sympy.gcd(g, poly_part(d).as_expr())
    if g == 0:
        return LaurentPoly()
    return canonical_sympy(from_sympy(g))


def int_charpoly_cofactor(A):
    """det(xI - A) by cofactor expansion in sympy."""
    n = len(A)
    M = sympy.Matrix(n, n, lambda i, j: (x if i == j else 0) - A[i][j])
    return from_sympy(M.det(method="berkowitz")) if n else LaurentPoly({0: 1})


def int_snf_product(A):
    from sympy.matrices.normalforms import smith_normal_form

    S = smith_normal_form(sympy.Matrix(A), domain=sympy.ZZ)
    prod = 1
    for i in range(min(S.shape)):
        prod *= abs(int(S[i, i]))
    return prod


def sympy_series(num: LaurentPoly, den: LaurentPoly, N: int, var="t"):
    t = sympy.Symbol(var)
    expr = to_sympy(num).subs(x, t) / to_sympy(den).subs(x, t)
    s = sympy.series(expr, t, 0, N + 1).removeO()
    return [Fraction(int(sympy.Rational(s.coeff(t, k)).p), int(sympy.Rational(s.coeff(t, k)).q)) for k in range(N + 1)]


def snf_violations(A, s):
    """List of failed SNF properties for ``s = smith_form(A)`` (empty means valid)."""
    from laurentk.matrix import identity, matmul

    bad = []
    m, n = s.rows, s.cols
    if m and n and matmul(matmul(s.U, A), s.V) != s.D:
        bad.append("U A V != D")
    for i in range(m):
        for j in range(n):
            if i != j and s.D[i][j]:
                bad.append("D not diagonal")
    for M, k in ((s.U, m), (s.V, n)):
        d = leibniz_det(M) if k <= 5 else None
        if d is not None and not (d and len(d.terms()) == 1):
            bad.append("change of basis not unimodular")
    if matmul(s.U, s.U_inv) != identity(m) or matmul(s.V, s.V_inv) != identity(n):
        bad.append("tracked inverses wrong")
    diag = [s.D[i][i] for i in range(min(m, n))]
    for a, b in zip(diag, diag[1:]):
        if a.is_zero and not b.is_zero:
            bad.append("zero before nonzero on diagonal")
        elif a and b and not divides_sympy(a, b):
            bad.append("divisibility chain broken")
    prod = LaurentPoly({0: 1})
    for k in range(1, min(m, n) + 1):
        prod = prod * diag[k - 1]
        expected = minors_gcd(A, k)
        got = canonical_sympy(prod) if prod else LaurentPoly()
        if got != expected:
            bad.append(f"determinantal divisor {k}: {got} != {expected}")
    return bad


def divides_sympy(a, b):
    q, r = sympy.div(poly_part(b), poly_part(a))
    return r.is_zero
