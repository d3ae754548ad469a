"""Integral lattices given by Gram matrices."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import intmath


class LatticeError(ValueError):
    """Invalid lattice input (dimension mismatch, unknown name, ...)."""


class DegenerateLatticeError(LatticeError):
    def __init__(self, radical: list[list[int]]):
        self.radical = radical
        super().__init__(f"Gram matrix is degenerate; radical spanned by {radical}")


@dataclass(frozen=True)
class Lattice:
    """Free Z-module with a symmetric integral bilinear form."""

    gram: tuple[tuple[int, ...], ...]
    rank: int = field(init=False)

    def __post_init__(self):
        gram = tuple(tuple(int(c) for c in row) for row in self.gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise LatticeError("Gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "rank", n)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def det(self) -> int:
        return intmath.determinant(self.gram)

    def vector(self, coords: Sequence[int]) -> "LatticeVector":
        return LatticeVector(tuple(int(c) for c in coords), self)

    def direct_sum(self, other: "Lattice") -> "Lattice":
        n, m = self.rank, other.rank
        rows = [list(r) + [0] * m for r in self.gram]
        rows += [[0] * n + list(r) for r in other.gram]
        return Lattice(rows)

    def scaled(self, k: int) -> "Lattice":
        return Lattice([[k * c for c in row] for row in self.gram])


@dataclass(frozen=True)
class LatticeVector:
    coords: tuple[int, ...]
    host: Lattice

    def __post_init__(self):
        if len(self.coords) != self.host.rank:
            raise LatticeError(
                f"vector of length {len(self.coords)} in lattice of rank {self.host.rank}"
            )


def _coords(L: Lattice, x) -> tuple:
    c = x.coords if isinstance(x, LatticeVector) else tuple(x)
    if len(c) != L.rank:
        raise LatticeError(f"vector of length {len(c)} in lattice of rank {L.rank}")
    return c


def pair(L: Lattice, x, y):
    """x^T G y. Accepts LatticeVectors or plain (possibly rational) sequences."""
    return intmath.bilinear(L.gram, _coords(L, x), _coords(L, y))


E8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)]


def _e8() -> list[list[int]]:
    # Bourbaki-style labelling: chain 0-1-2-3-4-5-6 with node 7 attached to 2.
    G = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in E8_EDGES:
        G[i][j] = G[j][i] = -1
    return G


def build_standard(name: str) -> Lattice:
    """``U``, ``E8_minus`` or ``mukai`` (= U^4 + (-E8)^2)."""
    if name == "U":
        return Lattice([[0, 1], [1, 0]])
    if name == "E8_minus":
        return Lattice([[-c for c in row] for row in _e8()])
    if name == "mukai":
        U, E = build_standard("U"), build_standard("E8_minus")
        L = U
        for _ in range(3):
            L = L.direct_sum(U)
        return L.direct_sum(E).direct_sum(E)
    raise LatticeError(f"unknown standard lattice {name!r}")


def signature(L: Lattice) -> tuple[int, int]:
    """(positive, negative) inertia by symmetric Gaussian elimination over Q."""
    n = L.rank
    M = [[Fraction(c) for c in row] for row in L.gram]
    pos = neg = 0
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][i] != 0), None)
        if p is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if M[i][j] != 0), None)
            if off is None:
                raise DegenerateLatticeError(intmath.integer_kernel(L.gram, n))
            i, j = off
            # congruence e_i -> e_i + e_j makes the diagonal entry 2*M[i][j]
            M[i] = [a + b for a, b in zip(M[i], M[j])]
            for row in M:
                row[i] += row[j]
            p = i
        M[k], M[p] = M[p], M[k]
        for row in M:
            row[k], row[p] = row[p], row[k]
        piv = M[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = M[i][k] / piv
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
        for i in range(k + 1, n):
            M[k][i] = M[i][k] = Fraction(0)
    return pos, neg


def orthogonal_complement(L: Lattice, S: Sequence) -> list[LatticeVector]:
    """Saturated basis of {x : (x, s) = 0 for all s in S}."""
    rows = [intmath.matvec(L.gram, _coords(L, s)) for s in S]
    rows = [r for r in rows if any(r)]
    basis = intmath.integer_kernel(rows, L.rank)
    return [L.vector(b) for b in basis]


def primitivize(L: Lattice, x) -> LatticeVector:
    c = _coords(L, x)
    g = intmath.gcd_list(c)
    if g == 0:
        raise LatticeError("cannot primitivize the zero vector")
    return L.vector([int(a) // g for a in c])


def is_primitive(x: Sequence[int]) -> bool:
    return intmath.gcd_list(x) == 1
