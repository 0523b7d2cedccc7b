import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from laurentk.laurent import LaurentPoly

sys.path.insert(0, str(Path(__file__).parent))

ROOT = Path(__file__).resolve().parent.parent
SAMPLES = ROOT / "samples"
GOLDEN = Path(__file__).parent / "golden"


def random_laurent(rng: random.Random, span: int = 3, low=(-2, 2), coeff=3, zero_prob=0.25) -> LaurentPoly:
    """Random element with exponent spread at most ``span`` and small integer coefficients."""
    if rng.random() < zero_prob:
        return LaurentPoly()
    lo = rng.randint(*low)
    width = rng.randint(0, span)
    c = {lo + i: rng.randint(-coeff, coeff) for i in range(width + 1)}
    p = LaurentPoly(c)
    return p if p else LaurentPoly({lo: rng.choice([-1, 1])})


def random_matrix(rng: random.Random, m: int, n: int, **kw):
    return [[random_laurent(rng, **kw) for _ in range(n)] for _ in range(m)]


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def laurent_polys(draw, max_terms=4, exp_range=4, nonzero=False):
    n = draw(st.integers(min_value=1 if nonzero else 0, max_value=max_terms))
    exps = draw(st.lists(st.integers(-exp_range, exp_range), min_size=n, max_size=n, unique=True))
    cs = draw(st.lists(coeffs.filter(bool) if nonzero else coeffs, min_size=n, max_size=n))
    p = LaurentPoly(dict(zip(exps, cs)))
    if nonzero and p.is_zero:
        p = LaurentPoly({0: 1})
    return p


@st.composite
def units(draw):
    c = draw(coeffs.filter(bool))
    e = draw(st.integers(-4, 4))
    return LaurentPoly({e: c})


@pytest.fixture
def rng():
    return random.Random(20240917)


def _unimodular(rng: random.Random, g: int, steps: int = 4):
    """Random product of elementary matrices with its inverse."""
    from laurentk.laurent import ONE, ZERO

    P = [[ONE if i == j else ZERO for j in range(g)] for i in range(g)]
    Pi = [row[:] for row in P]
    if g < 2:
        c = LaurentPoly({rng.randint(-2, 2): rng.choice([1, -1, 2])})
        return [[c]], [[c.inverse_unit()]]
    for _ in range(steps):
        i, j = rng.sample(range(g), 2)
        c = random_laurent(rng, span=1, zero_prob=0)
        # P <- E P with E = I + c e_i e_j^T;  P^-1 <- P^-1 E^-1
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]
        for row in Pi:
            row[j] = row[j] - c * row[i]
    return P, Pi


def random_endo_instance(rng: random.Random):
    """Random ``(module, L, expected_trace)``.

    Built in split form ``Laur/(d_1) + ... + Laur^r`` with a block upper-
    triangular endomorphism whose free block is known, then disguised by
    random unimodular changes of generators and relations.
    """
    from laurentk.laurent import ZERO, exact_div, gcd
    from laurentk.matrix import matmul
    from laurentk.modules import PresentedModule

    k = rng.randint(0, 2)
    r = rng.randint(0, 2)
    if k + r == 0:
        r = 1
    d = [random_laurent(rng, span=2, zero_prob=0) for _ in range(k)]
    g = k + r
    E = [[ZERO] * g for _ in range(g)]
    for i in range(g):
        for j in range(g):
            if i < k and j < k:
                E[i][j] = random_laurent(rng, span=1) * exact_div(d[i], gcd(d[i], d[j]))
            elif j >= k:
                E[i][j] = random_laurent(rng, span=2)
    expected = LaurentPoly()
    for i in range(k, g):
        expected = expected + E[i][i]
    D = [[d[i] if (i == j and i < k) else ZERO for j in range(k)] for i in range(g)]
    P, Pi = _unimodular(rng, g)
    Q, _ = _unimodular(rng, k) if k else ([], [])
    R = matmul(matmul(P, D), Q, inner=k) if k else [[] for _ in range(g)]
    L = matmul(matmul(P, E), Pi)
    return PresentedModule(g, tuple(map(tuple, R)), k), L, expected


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
