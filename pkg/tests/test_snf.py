import random

import pytest

from conftest import random_matrix
from oracles import snf_violations
from laurentk.laurent import ONE, ZERO, parse_poly
from laurentk.matrix import as_matrix, det, matmul, smith_form, smith_normal_form

P = parse_poly


def diag(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def test_chain_matrix_is_unchanged():
    A = as_matrix([["X - 1", "0"], ["0", "X^2 - 1"]])
    U, D, V = smith_normal_form(A)
    assert D == A
    assert snf_violations(A, smith_form(A)) == []


def test_two_by_two_example():
    A = as_matrix([["X - 1", "X - 1"], ["0", "X + 1"]])
    s = smith_form(A)
    # d1 = gcd of entries = 1, d1*d2 = det = X^2 - 1
    assert diag(s.D) == [ONE, P("X^2 - 1")]
    assert snf_violations(A, s) == []


def test_zero_matrix():
    A = as_matrix([["0", "0"], ["0", "0"]])
    assert smith_normal_form(A)[1] == A


@pytest.mark.parametrize("shape", [(0, 0), (0, 3), (3, 0)])
def test_empty_shapes(shape):
    m, n = shape
    A = [[ZERO] * n for _ in range(m)]
    s = smith_form(A, n)
    assert (s.rows, s.cols) == shape
    assert s.diagonal == []


def test_rectangular_and_laurent_entries():
    A = as_matrix([["X^-1 - X", "2*X^-2", "0"], ["X^3", "X + 1", "1/2*X"]])
    s = smith_form(A)
    assert snf_violations(A, s) == []
    assert all(d.is_polynomial for d in s.diagonal if d)


def test_bareiss_determinant_matches_leibniz():
    from oracles import leibniz_det

    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(1, 4)
        A = random_matrix(rng, n, n)
        assert det(A) == leibniz_det(A)


def test_random_suite_small():
    rng = random.Random(11)
    for _ in range(25):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        A = random_matrix(rng, m, n)
        assert snf_violations(A, smith_form(A)) == [], A
