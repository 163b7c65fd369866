import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from novikov.algebra import LaurentPoly, Matrix, bareiss, determinant, gaussian_rank, inverse, kron, rank_fraction_free
from novikov.algebra.matrix import evaluate_matrix, submatrix

u = LaurentPoly.variable(0)
one = LaurentPoly.constant(1)


def rref_rank(rows) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(a[0]) if a else 0
    while rank < len(a) and col < ncols:
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][col]:
                f = a[i][col] / a[rank][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        col += 1
    return rank


def test_single_entry():
    r, minor = rank_fraction_free(Matrix([[u - 1]]))
    assert r == 1 and minor == u - 1


def test_dependent_rows():
    r, _ = rank_fraction_free(Matrix([[u, one], [u ** 2, u]]))
    assert r == 1


def test_empty_matrix():
    r, minor = rank_fraction_free(Matrix([], 0, 3))
    assert r == 0 and minor == 1


def test_random_5x7_against_evaluation():
    rng = random.Random(5)
    for _ in range(10):
        rows = [[LaurentPoly(1, {(k,): rng.randint(-3, 3) for k in range(3)}) for _ in range(7)] for _ in range(5)]
        m = Matrix(rows)
        r, minor = rank_fraction_free(m)
        pts = [Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5)) for _ in range(3)]
        evals = [rref_rank(evaluate_matrix(m, (p,)).rows) for p in pts]
        assert r == max(evals)
        for p, e in zip(pts, evals):
            if minor.evaluate((p,)):
                assert e == r


int_matrices = st.integers(1, 6).flatmap(lambda n: st.integers(1, 6).flatmap(
    lambda k: st.lists(st.lists(st.integers(-3, 3), min_size=k, max_size=k), min_size=n, max_size=n)))


@given(int_matrices)
def test_bareiss_matches_gaussian(rows):
    m = Matrix(rows)
    res = bareiss(m)
    assert res.rank == gaussian_rank(m) == rref_rank(rows)
    if res.rank:
        assert determinant(submatrix(m, res.rows, res.cols)) == res.minor


laurent = st.dictionaries(st.tuples(st.integers(-2, 2)), st.integers(-2, 2), max_size=3).map(lambda t: LaurentPoly(1, t))


@given(st.lists(st.lists(laurent, min_size=3, max_size=3), min_size=2, max_size=3),
       st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool))
def test_rank_semicontinuity(rows, u0):
    m = Matrix(rows)
    r, minor = rank_fraction_free(m)
    e = rref_rank(evaluate_matrix(m, (u0,)).rows)
    assert e <= r
    if r and minor.evaluate((u0,)):
        assert e == r


def test_two_variable_minor_witnesses_rank():
    v = LaurentPoly.variable(1, 2)
    w = LaurentPoly.variable(0, 2)
    m = Matrix([[w - 1, v - 1], [w * v - v, v * v - v]])
    r, minor = rank_fraction_free(m)
    assert r == 1 and minor


def test_inverse_and_kron():
    a = Matrix([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]])
    assert a @ inverse(a) == Matrix.identity(2)
    k = kron(Matrix.identity(2), a)
    assert k.shape == (4, 4)
    assert gaussian_rank(k) == 4
