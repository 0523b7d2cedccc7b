import random

import pytest
import sympy

from oracles import int_charpoly_cofactor, int_snf_product, to_sympy
from laurentk.dynamics import (
    KTheoryAction,
    ToralAutomorphism,
    char_function,
    charpoly,
    ck_spectrum,
    commutativity_obstruction,
    det_one_minus_tA,
    exterior_power,
    graded_power_traces,
    int_det,
    integer_smith_diagonal,
    lattice_point_count,
    lefschetz_sign,
    lefschetz_sign_check,
    parse_int_matrix,
    periodic_points,
    tspec_of_crossed_product,
    zeta_identity_check,
    zeta_series,
)
from laurentk.errors import DegeneratePower, FullSupport, NotSymmetric, NotZeroOne, ParseError, SingularAction
from laurentk.laurent import ONE, parse_poly
from laurentk.modules import Support
from laurentk.ratfunc import RationalFunction
from laurentk.series import TruncatedSeries, series_log

P = parse_poly
GOLDEN = ((1, 1), (1, 0))
CAT = ((2, 1), (1, 1))


def random_invertible(rng, max_n=4, lo=-2, hi=2):
    n = rng.randint(1, max_n)
    while True:
        M = tuple(tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(n))
        if int_det(M) != 0:
            return M


def random_action(rng):
    a = random_invertible(rng) if rng.random() < 0.85 else ()
    b = random_invertible(rng) if rng.random() < 0.85 else ()
    return KTheoryAction(a, b)


def test_parse_int_matrix():
    assert parse_int_matrix("1,1;1,0") == GOLDEN
    assert parse_int_matrix(" ") == ()
    with pytest.raises(ParseError):
        parse_int_matrix("1,a;1,0")
    with pytest.raises(ParseError):
        parse_int_matrix("1,1;1")


def test_charpoly_matches_cofactor_oracle():
    rng = random.Random(2)
    for _ in range(30):
        M = random_invertible(rng, max_n=5, lo=-4, hi=4)
        assert charpoly(M) == int_charpoly_cofactor(M)
    assert charpoly(()) == ONE


def test_det_one_minus_tA_is_reversed_charpoly():
    t = sympy.Symbol("x")
    M = ((2, 1, 0), (1, 1, 3), (0, -1, 1))
    direct = sympy.expand((sympy.eye(3) - t * sympy.Matrix(M)).det())
    assert to_sympy(det_one_minus_tA(M)) - direct == 0


def test_exterior_powers_of_two_by_two():
    assert exterior_power(GOLDEN, 0) == ((1,),)
    assert exterior_power(GOLDEN, 1) == GOLDEN
    assert exterior_power(GOLDEN, 2) == ((-1,),)


def test_tspec_examples():
    assert tspec_of_crossed_product(KTheoryAction(((1,),), ())).generator == P("X - 1")
    rot = KTheoryAction(((1, 0), (0, 1)), ((1, 0), (0, 1)))
    assert tspec_of_crossed_product(rot).generator == P("X - 1")
    torus = KTheoryAction.of_torus(GOLDEN)
    assert torus == KTheoryAction(((1, 0), (0, -1)), GOLDEN)
    # exterior-power oracle: Λ0 + Λ2 on K0 (eigenvalues 1, det T = -1), Λ1 on K1
    expected = P("X - 1") * P("X + 1") * P("X^2 - X - 1")
    assert tspec_of_crossed_product(torus).generator == expected
    with pytest.raises(SingularAction):
        tspec_of_crossed_product(KTheoryAction(((1, 1), (1, 1)), ()))


def test_tspec_generators_are_monic_integer_with_constant_term():
    rng = random.Random(8)
    for _ in range(25):
        g = tspec_of_crossed_product(random_action(rng)).generator
        assert g.is_integral and g.is_polynomial and g.coeff(0) != 0


def test_ck_spectrum_examples():
    assert ck_spectrum(GOLDEN).generator == P("X^2 - X - 1")
    assert ck_spectrum(((1, 0), (0, 1))).generator == P("X - 1")
    # cofactor oracle: charpoly X^2 - 2X, zero eigenvalue dropped
    assert int_charpoly_cofactor(((1, 1), (1, 1))) == P("X^2 - 2*X")
    assert ck_spectrum(((1, 1), (1, 1))).generator == P("X - 2")
    assert ck_spectrum(((0, 0), (0, 0))).is_empty
    with pytest.raises(NotZeroOne):
        ck_spectrum(((2, 0), (0, 1)))


def test_ck_spectrum_transpose_invariance():
    rng = random.Random(13)
    for _ in range(30):
        n = rng.randint(1, 5)
        A = tuple(tuple(rng.randint(0, 1) for _ in range(n)) for _ in range(n))
        At = tuple(zip(*A))
        assert ck_spectrum(A) == ck_spectrum(At)


def test_commutativity_obstruction_examples():
    ob = commutativity_obstruction(Support.finite(P("X^2 - X - 1")))
    assert ob.obstructed
    assert [round(z.real, 10) for z in ob.witnesses] == [-0.6180339887, 1.6180339887]
    for n in range(1, 7):
        assert not commutativity_obstruction(Support.finite(P(f"X^{n} - 1"))).obstructed
    ob = commutativity_obstruction(Support.finite(P("X - 2")))
    assert ob.obstructed and ob.witnesses == (2 + 0j,)
    with pytest.raises(FullSupport):
        commutativity_obstruction(Support.full())


def test_char_function_examples():
    assert char_function(KTheoryAction((), ((2,),))) == RationalFunction(ONE, P("1 - 2*X"))
    assert char_function(KTheoryAction(((1,),), ((1,),))) == RationalFunction(ONE)
    # 2x2 determinant oracle
    t = sympy.Symbol("x")
    num = (sympy.eye(2) - t * sympy.diag(1, -1)).det()
    den = (sympy.eye(2) - t * sympy.Matrix(GOLDEN)).det()
    assert sympy.expand(num - (1 - t) * (1 + t)) == 0 and sympy.expand(den - (1 - t - t**2)) == 0
    c = char_function(KTheoryAction.of_torus(GOLDEN))
    assert c == RationalFunction(P("1 - X^2"), P("1 - X - X^2"))
    assert c.format("t", ascending=True, normalize_constant=True) == "(1 - t^2)/(1 - t - t^2)"


def test_zeta_identity_examples():
    z = zeta_series(KTheoryAction(((1,),), ()), 20)
    assert z.char_series == TruncatedSeries([1, -1], 20)
    assert z.equal
    assert zeta_identity_check(KTheoryAction.of_torus(GOLDEN), 20)


def test_zeta_identity_random():
    rng = random.Random(2024)
    for _ in range(10):
        assert zeta_identity_check(random_action(rng), 20)


def test_log_derivative_gives_power_traces():
    rng = random.Random(77)
    N = 12
    for _ in range(8):
        a = random_action(rng)
        c = char_function(a)
        s = TruncatedSeries.from_rational(c.numerator, c.denominator, N)
        # -t d/dt log char = sum (tr k0^n - tr k1^n) t^n
        lhs = series_log(s).derivative().coeffs
        minus_t_dlog = [0] + [-lhs[n - 1] for n in range(1, N + 1)]
        assert minus_t_dlog[1:] == graded_power_traces(a, N, "even_minus_odd")


# -- toral automorphisms -------------------------------------------------------

def test_toral_validation():
    with pytest.raises(SingularAction):
        ToralAutomorphism(((2, 0), (0, 1)))
    assert ToralAutomorphism(GOLDEN).is_hyperbolic()
    assert not ToralAutomorphism(((1, 1), (0, 1))).is_hyperbolic()


def test_periodic_points_golden():
    T = ToralAutomorphism(GOLDEN)
    # det(T^n - I) by sympy: -1, -1, -4, -5
    S = sympy.Matrix(GOLDEN)
    assert [(S**n - sympy.eye(2)).det() for n in (1, 2, 3, 4)] == [-1, -1, -4, -5]
    assert [periodic_points(T, n) for n in (1, 2, 3, 4)] == [1, 1, 4, 5]


def test_lattice_count_matches_sympy_snf():
    rng = random.Random(5)
    for T in (GOLDEN, CAT, ((2, 1, 1), (1, 1, 0), (1, 0, 0))):
        A = ToralAutomorphism(T)
        for n in range(1, 7):
            P_n = periodic_points(A, n)
            M = sympy.Matrix(T) ** n - sympy.eye(len(T))
            assert lattice_point_count(A, n) == int_snf_product(M.tolist()) == P_n


def test_integer_smith_diagonal():
    assert integer_smith_diagonal(((2, 4), (6, 8))) == [2, 4]
    assert integer_smith_diagonal(((0, 0), (0, 0))) == []
    rng = random.Random(9)
    for _ in range(20):
        M = tuple(tuple(rng.randint(-9, 9) for _ in range(3)) for _ in range(3))
        d = integer_smith_diagonal(M)
        if len(d) == 3:
            assert d[0] * d[1] * d[2] == abs(int_det(M))
        assert all(b % a == 0 for a, b in zip(d, d[1:]))


def test_degenerate_power():
    with pytest.raises(DegeneratePower):
        periodic_points(ToralAutomorphism(((1, 1), (0, 1))), 1)


def test_lefschetz_sign_examples():
    assert lefschetz_sign(ToralAutomorphism(GOLDEN), 1).graded_trace == -1
    assert lefschetz_sign_check(ToralAutomorphism(GOLDEN), 1)
    ls = lefschetz_sign(ToralAutomorphism(CAT), 1)
    assert (ls.graded_trace, ls.k, ls.periodic_points) == (-1, 1, 1)
    for n in range(2, 7):
        assert lefschetz_sign_check(ToralAutomorphism(GOLDEN), n)
    with pytest.raises(NotSymmetric):
        lefschetz_sign_check(ToralAutomorphism(((1, 1), (0, 1))), 1)


def test_lefschetz_sign_three_dimensional():
    # symmetric, det 1, hyperbolic
    T = ((2, 1, 1), (1, 1, 0), (1, 0, 0))
    A = ToralAutomorphism(T)
    assert A.is_symmetric and A.is_hyperbolic()
    for n in range(1, 6):
        assert lefschetz_sign_check(A, n)
