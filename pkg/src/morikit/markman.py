"""Algebraic part of the extended Mukai lattice of a K3^[n]-type variety.

Coordinates are always taken in the basis of the algebraic lattice
``Lambda_alg``. Curve classes (elements of H_2) are represented by their
canonical rational representative in ``v^perp (x) Q``, i.e. the orthogonal
projection away from the Mukai vector ``v``.

Sign convention for the Hilbert-scheme model: the basis is
``(r, Pic(S), s)`` with ``r^2 = s^2 = 0`` and ``(r, s) = -1``. Then
``v = r + (1 - n) s`` has square ``2n - 2`` and ``delta = r + (n - 1) s`` is
orthogonal to ``v`` with square ``-2(n - 1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import intmath
from .lattice import Lattice, LatticeError, orthogonal_complement, pair, signature


class ValidationError(LatticeError):
    """Base class for rejected model input."""

    field = ""


class NotPrimitiveError(ValidationError):
    field = "v"


class PolarizationNotOrthogonalError(ValidationError):
    field = "ample"


class PolarizationNotPositiveError(ValidationError):
    field = "ample"


class SignatureError(ValidationError):
    field = "gram"


class MukaiSquareError(ValidationError):
    field = "v"


class PicardLatticeError(ValidationError):
    field = "gram"


@dataclass(frozen=True)
class DivisorClass:
    """Integral class in H^2(X)_alg = v^perp, in Lambda_alg coordinates."""

    coords: tuple[int, ...]


@dataclass(frozen=True)
class CurveClass:
    """Rational representative of an H_2 class, orthogonal to v."""

    coords: tuple[Fraction, ...]
    q: Fraction
    denominator: int

    @classmethod
    def from_coords(cls, coords: Sequence, gram) -> "CurveClass":
        c = tuple(Fraction(x) for x in coords)
        den = 1
        for x in c:
            den = intmath.lcm(den, x.denominator)
        return cls(c, Fraction(intmath.bilinear(gram, c, c)), den)

    def direction(self) -> tuple[int, ...]:
        """Primitive integral vector spanning the same ray."""
        return tuple(intmath.primitive(self.coords))


Classlike = Union[CurveClass, DivisorClass, Sequence]


def _c(x: Classlike) -> tuple:
    return tuple(x.coords) if hasattr(x, "coords") else tuple(x)


@dataclass(frozen=True)
class ExtendedAlgebraicLattice:
    lattice: Lattice
    v: tuple[int, ...]
    h: tuple[int, ...]
    n: int
    delta: tuple[int, ...] | None = None

    @property
    def gram(self):
        return self.lattice.gram

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def v_sq(self) -> int:
        return pair(self.lattice, self.v, self.v)

    def pair(self, x: Classlike, y: Classlike):
        return pair(self.lattice, _c(x), _c(y))

    def with_ample(self, h: Sequence[int]) -> "ExtendedAlgebraicLattice":
        """Same lattice with another (validated) polarization."""
        return from_raw(self.gram, self.v, h, delta=self.delta)

    def to_raw(self) -> dict:
        out = {"gram": [list(r) for r in self.gram], "v": list(self.v), "ample": list(self.h)}
        if self.delta is not None:
            out["delta"] = list(self.delta)
        return out


def from_raw(gram, v, h, delta=None) -> ExtendedAlgebraicLattice:
    """Validate user-supplied ``Lambda_alg`` data."""
    L = Lattice(gram)
    v = tuple(int(c) for c in v)
    h = tuple(int(c) for c in h)
    if len(v) != L.rank or len(h) != L.rank:
        raise ValidationError("v and ample must have length equal to the lattice rank")
    if intmath.gcd_list(v) != 1:
        raise NotPrimitiveError(f"v = {v} is not primitive")
    v_sq = pair(L, v, v)
    if v_sq < 2 or v_sq % 2:
        raise MukaiSquareError(f"(v, v) = {v_sq} is not of the form 2n - 2 with n >= 2")
    if pair(L, h, v) != 0:
        raise PolarizationNotOrthogonalError(f"(h, v) = {pair(L, h, v)} != 0")
    if pair(L, h, h) <= 0:
        raise PolarizationNotPositiveError(f"(h, h) = {pair(L, h, h)} <= 0")
    try:
        sig = signature(L)
    except LatticeError as exc:
        raise SignatureError(str(exc)) from exc
    if sig != (2, L.rank - 2):
        raise SignatureError(f"signature {sig} != (2, {L.rank - 2})")
    if delta is not None:
        delta = tuple(int(c) for c in delta)
        if len(delta) != L.rank or pair(L, delta, v) != 0:
            raise ValidationError("delta must be orthogonal to v", )
    return ExtendedAlgebraicLattice(L, v, h, v_sq // 2 + 1, delta)


def from_k3_hilbert(pic_gram, n: int, h_k3) -> ExtendedAlgebraicLattice:
    """Model of S^[n] for a K3 surface S with the given Picard lattice."""
    if n < 2:
        raise ValidationError(f"n = {n} must be at least 2")
    P = Lattice(pic_gram)
    rho = P.rank
    if not P.is_even:
        raise PicardLatticeError("Picard lattice must be even")
    try:
        sig = signature(P)
    except LatticeError as exc:
        raise PicardLatticeError(str(exc)) from exc
    if sig != (1, rho - 1):
        raise PicardLatticeError(f"Picard lattice signature {sig} != (1, {rho - 1})")
    h_k3 = tuple(int(c) for c in h_k3)
    if len(h_k3) != rho or pair(P, h_k3, h_k3) <= 0:
        raise PolarizationNotPositiveError("K3 polarization must have positive square")
    N = rho + 2
    G = [[0] * N for _ in range(N)]
    G[0][N - 1] = G[N - 1][0] = -1
    for i in range(rho):
        for j in range(rho):
            G[i + 1][j + 1] = P.gram[i][j]
    v = (1,) + (0,) * rho + (1 - n,)
    delta = (1,) + (0,) * rho + (n - 1,)
    h = (0,) + h_k3 + (0,)
    return from_raw(G, v, h, delta=delta)


def h2_alg_basis(E: ExtendedAlgebraicLattice) -> list[DivisorClass]:
    return [DivisorClass(b.coords) for b in orthogonal_complement(E.lattice, [E.v])]


def theta_dual(E: ExtendedAlgebraicLattice, a: Classlike) -> CurveClass:
    """Project ``a`` to v^perp (x) Q; this realizes Lambda_alg -> H_2."""
    a = _c(a)
    t = Fraction(E.pair(a, E.v), E.v_sq)
    return CurveClass.from_coords([x - t * y for x, y in zip(a, E.v)], E.gram)


def q_pair(E: ExtendedAlgebraicLattice, x: Classlike, y: Classlike) -> Fraction:
    return Fraction(E.pair(x, y))


class H2Coordinates:
    """Change of basis between Lambda_alg coordinates and a basis of H^2_alg.

    Cone computations run in the (small) H^2_alg basis where the form is
    Lorentzian.
    """

    def __init__(self, E: ExtendedAlgebraicLattice):
        self.E = E
        self.basis = [b.coords for b in h2_alg_basis(E)]
        self.rho = len(self.basis)
        self.gram = [[E.pair(a, b) for b in self.basis] for a in self.basis]
        self._inv = intmath.inverse(self.gram) if self.rho else []

    def to_h2(self, x: Classlike) -> list[Fraction]:
        """Coordinates of a class in v^perp (x) Q. Components along v are dropped."""
        x = _c(x)
        rhs = [self.E.pair(b, x) for b in self.basis]
        return [Fraction(c) for c in intmath.matvec(self._inv, rhs)]

    def from_h2(self, y: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * self.E.rank
        for c, b in zip(y, self.basis):
            out = [o + Fraction(c) * bi for o, bi in zip(out, b)]
        return out

    def pair(self, x: Sequence, y: Sequence):
        return intmath.bilinear(self.gram, x, y)
