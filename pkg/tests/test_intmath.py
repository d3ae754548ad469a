from fractions import Fraction
from itertools import product

import sympy
from hypothesis import given, strategies as st

from morikit import intmath

small = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def matrices(max_rows=4, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@given(st.integers(1, 5).flatmap(square))
def test_determinant_matches_sympy(A):
    assert intmath.determinant(A) == sympy.Matrix(A).det()


@given(st.integers(1, 4).flatmap(square))
def test_inverse_roundtrip(A):
    inv = intmath.inverse(A)
    if intmath.determinant(A) == 0:
        assert inv is None
    else:
        assert intmath.matmul(A, inv) == intmath.identity(len(A))


@given(matrices())
def test_rank_matches_sympy(A):
    assert intmath.rank(A) == sympy.Matrix(A).rank()


@given(matrices())
def test_integer_kernel_is_saturated(A):
    ncols = len(A[0])
    K = intmath.integer_kernel(A, ncols)
    assert len(K) == ncols - intmath.rank(A)
    for k in K:
        assert all(c == 0 for c in intmath.matvec(A, k))
    if K:
        # saturated <=> all elementary divisors are 1
        assert set(intmath.smith_diagonal(K)) <= {1}


@given(matrices())
def test_smith_diagonal_matches_sympy(A):
    d = [x for x in intmath.smith_diagonal(A) if x]
    from sympy.matrices.normalforms import smith_normal_form

    S = smith_normal_form(sympy.Matrix(A), domain=sympy.ZZ)
    ref = [abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0]
    assert sorted(d) == sorted(ref)
    for a, b in zip(d, d[1:]):
        assert b % a == 0


def test_smith_diagonal_example():
    assert intmath.smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def _random_pd(rows):
    n = len(rows)
    G = intmath.matmul(intmath.transpose(rows), rows)
    return [[G[i][j] + (i == j) for j in range(n)] for i in range(n)]


@given(st.integers(2, 4).flatmap(square))
def test_lll_is_unimodular_and_equivalent(B):
    G = _random_pd(B)
    U = intmath.gram_lll(G)
    assert abs(intmath.determinant(U)) == 1
    R = intmath.matmul(intmath.transpose(U), intmath.matmul(G, U))
    assert intmath.determinant(R) == intmath.determinant(G)
    # size-reduced and Lovasz conditions, delta = 3/4
    n = len(R)
    mu = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            mu[i][j] = (R[i][j] - sum(mu[j][k] * mu[i][k] * b[k] for k in range(j))) / b[j]
        b[i] = R[i][i] - sum(mu[i][k] ** 2 * b[k] for k in range(i))
    for i in range(n):
        for j in range(i):
            assert abs(mu[i][j]) <= Fraction(1, 2)
        if i:
            assert b[i] >= (Fraction(3, 4) - mu[i][i - 1] ** 2) * b[i - 1]


@given(st.integers(2, 3).flatmap(square), st.integers(1, 12))
def test_short_vectors_match_brute_force(B, bound):
    G = _random_pd(B)
    n = len(G)
    found = set(intmath.short_vectors(G, bound))
    # every found vector satisfies the bound; a box of radius sqrt(bound) * ||G^-1|| is enough
    box = range(-12, 13)
    brute = {x for x in product(box, repeat=n) if any(x) and intmath.bilinear(G, x, x) <= bound}
    assert {x for x in found if any(x)} == brute


@given(st.integers(2, 200).filter(lambda d: int(d ** 0.5) ** 2 != d))
def test_pell_fundamental(D):
    from sympy.solvers.diophantine.diophantine import diop_DN

    t, u = intmath.pell_fundamental(D)
    assert t * t - D * u * u == 1 and u > 0
    assert (t, u) == tuple(diop_DN(D, 1)[0])


def test_pell_known():
    assert intmath.pell_fundamental(61) == (1766319049, 226153980)


@given(st.fractions(min_value=0, max_value=10**6))
def test_ceil_sqrt(x):
    r = intmath.ceil_sqrt(x)
    assert r >= 0 and r * r >= x and (r == 0 or (r - 1) ** 2 < x)


@given(st.fractions(min_value=0, max_value=1000))
def test_rational_sqrt(x):
    r = intmath.rational_sqrt(x * x)
    assert r == x
