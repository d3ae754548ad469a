"""Exact integer and rational linear algebra.

Everything here works on plain Python ``int`` / ``fractions.Fraction``
entries stored in lists of lists. Matrices are small (rank <= 24), so the
algorithms favour clarity over asymptotics.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Sequence

Matrix = list[list]
Vector = list


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], x: Sequence) -> Vector:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def dot(x: Sequence, y: Sequence) -> int | Fraction:
    return sum(a * b for a, b in zip(x, y))


def bilinear(G: Sequence[Sequence], x: Sequence, y: Sequence):
    """Return x^T G y."""
    return dot(x, matvec(G, y))


def gcd_list(xs: Sequence[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in xs), 0)


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0


def clear_denominators(x: Sequence) -> list[int]:
    """Scale a rational vector by the lcm of its denominators."""
    den = 1
    for c in x:
        den = lcm(den, Fraction(c).denominator)
    return [int(Fraction(c) * den) for c in x]


def primitive(x: Sequence) -> list[int]:
    """Positive rescaling of a nonzero rational vector to a primitive integer vector."""
    v = clear_denominators(x)
    g = gcd_list(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return [c // g for c in v]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rref(A: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(c) for c in row] for row in A]
    if not M:
        return [], []
    rows, cols = len(M), len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M[:r], pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve the square system A x = b over Q; None if A is singular."""
    n = len(A)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug)
    if piv != list(range(n)):
        return None
    return [R[i][n] for i in range(n)]


def inverse(A: Sequence[Sequence]) -> Matrix | None:
    n = len(A)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(R) < n:
        return None
    return [row[n:] for row in R]


def rational_kernel(A: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} over Q."""
    if not A:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, piv = rref(A)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(piv):
            x[p] = -R[i][f]
        basis.append(x)
    return basis


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def row_echelon_unimodular(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Integer row echelon form H = U A with U unimodular.

    Returns (H, U). Pivots are positive; entries above pivots are reduced
    into [0, pivot).
    """
    H = [list(map(int, row)) for row in A]
    m = len(H)
    ncols = len(H[0]) if m else 0
    U = identity(m)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            g, s, t = _xgcd(a, b)
            u, w = a // g, b // g
            # [[s, t], [-w, u]] has determinant s*u + t*w = 1
            H[r], H[i] = (
                [s * x + t * y for x, y in zip(H[r], H[i])],
                [-w * x + u * y for x, y in zip(H[r], H[i])],
            )
            U[r], U[i] = (
                [s * x + t * y for x, y in zip(U[r], U[i])],
                [-w * x + u * y for x, y in zip(U[r], U[i])],
            )
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def hermite_normal_form(A: Sequence[Sequence[int]]) -> Matrix:
    """Row-style HNF with zero rows removed."""
    H, _ = row_echelon_unimodular(A)
    return [row for row in H if any(row)]


def integer_kernel(A: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Saturated Z-basis of {x in Z^ncols : A x = 0}, in Hermite normal form.

    Unimodular row reduction of A^T exposes the kernel as the rows of the
    transform whose image vanishes; those rows extend to a basis of Z^ncols,
    so the kernel they span is primitive.
    """
    if not A:
        return identity(ncols)
    At = transpose(A)
    H, U = row_echelon_unimodular(At)
    kernel = [U[i] for i, row in enumerate(H) if not any(row)]
    return hermite_normal_form(kernel) if kernel else []


def smith_diagonal(A: Sequence[Sequence[int]]) -> list[int]:
    """Elementary divisors (nonzero Smith invariants) of an integer matrix."""
    M = [list(map(int, row)) for row in A]
    if not M or not M[0]:
        return []
    m, n = len(M), len(M[0])
    divisors = []
    t = 0
    while t < min(m, n):
        nz = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        M[t], M[pi] = M[pi], M[t]
        for row in M:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = M[t][t]
            changed = False
            for i in range(t + 1, m):
                q = M[i][t] // p
                if q:
                    M[i] = [x - q * y for x, y in zip(M[i], M[t])]
                if M[i][t]:
                    M[t], M[i] = M[i], M[t]
                    changed = True
                    break
            if changed:
                continue
            for j in range(t + 1, n):
                q = M[t][j] // p
                if q:
                    for row in M:
                        row[j] -= q * row[t]
                if M[t][j]:
                    for row in M:
                        row[t], row[j] = row[j], row[t]
                    changed = True
                    break
            if changed:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if M[i][j] % p), None)
            if bad is None:
                break
            M[t] = [x + y for x, y in zip(M[t], M[bad[0]])]
        divisors.append(abs(M[t][t]))
        t += 1
    return divisors


def gram_lll(G: Sequence[Sequence], delta: Fraction = Fraction(3, 4)) -> Matrix:
    """LLL-reduce a positive-definite rational Gram matrix.

    Returns the unimodular matrix U (columns are the new basis in old
    coordinates) so that U^T G U is LLL-reduced.
    """
    n = len(G)
    G = [[Fraction(c) for c in row] for row in G]
    basis = identity(n)  # rows are basis vectors in original coordinates

    def ip(x, y):
        return bilinear(G, x, y)

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar_sq = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = ip(basis[i], basis[j]) - sum(mu[j][k] * mu[i][k] * bstar_sq[k] for k in range(j))
                mu[i][j] = s / bstar_sq[j]
            bstar_sq[i] = ip(basis[i], basis[i]) - sum(mu[i][k] ** 2 * bstar_sq[k] for k in range(i))
        return mu, bstar_sq

    mu, bsq = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[j])]
                mu, bsq = gso()
        if bsq[k] >= (delta - mu[k][k - 1] ** 2) * bsq[k - 1]:
            k += 1
        else:
            basis[k], basis[k - 1] = basis[k - 1], basis[k]
            mu, bsq = gso()
            k = max(k - 1, 1)
    return transpose(basis)


def ldl_positive(G: Sequence[Sequence]) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """Decompose x^T G x = sum_i d_i (x_i + sum_{j>i} m[i][j] x_j)^2.

    Returns (d, m) or None when G is not positive definite.
    """
    n = len(G)
    A = [[Fraction(c) for c in row] for row in G]
    d = [Fraction(0)] * n
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if A[i][i] <= 0:
            return None
        d[i] = A[i][i]
        for j in range(i + 1, n):
            m[i][j] = A[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                A[j][k] -= d[i] * m[i][j] * m[i][k]
    return d, m


def is_positive_definite(G: Sequence[Sequence]) -> bool:
    """Leading principal minors test, exact."""
    n = len(G)
    for k in range(1, n + 1):
        sub = [[Fraction(G[i][j]) for j in range(k)] for i in range(k)]
        den = 1
        for row in sub:
            for c in row:
                den = lcm(den, c.denominator)
        if determinant([[int(c * den) for c in row] for row in sub]) <= 0:
            return False
    return True


def short_vectors(G: Sequence[Sequence], bound) -> list[tuple[int, ...]]:
    """All integer x with x^T G x <= bound, for positive-definite rational G.

    Fincke-Pohst enumeration: the quadratic form is written as a weighted
    sum of squares and coordinates are fixed depth-first from the last one,
    each restricted to the interval left by the remaining budget.
    """
    n = len(G)
    dec = ldl_positive(G)
    if dec is None:
        raise ValueError("Gram matrix is not positive definite")
    d, m = dec
    bound = Fraction(bound)
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        if i < 0:
            out.append(tuple(x))
            return
        center = -sum(m[i][j] * x[j] for j in range(i + 1, n))
        radius_sq = remaining / d[i]
        r_int = isqrt(radius_sq.numerator // radius_sq.denominator) + 1
        lo = (center.numerator // center.denominator) - r_int
        hi = -((-center.numerator) // center.denominator) + r_int
        for xi in range(lo, hi + 1):
            t = d[i] * (xi - center) ** 2
            if t <= remaining:
                x[i] = xi
                rec(i - 1, remaining - t)
        x[i] = 0

    if bound >= 0:
        rec(n - 1, bound)
    return out


def pell_fundamental(D: int) -> tuple[int, int]:
    """Smallest positive solution of t^2 - D u^2 = 1 for non-square D > 0."""
    a0 = isqrt(D)
    if a0 * a0 == D:
        raise ValueError("D must not be a perfect square")
    m, dd, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while p * p - D * q * q != 1:
        m = dd * a - m
        dd = (D - m * m) // dd
        a = (a0 + m) // dd
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return p, q


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def ceil_sqrt(x: Fraction) -> int:
    """Smallest integer s >= sqrt(x) for rational x >= 0."""
    x = Fraction(x)
    s = isqrt(x.numerator // x.denominator)
    while s * s < x:
        s += 1
    return s
