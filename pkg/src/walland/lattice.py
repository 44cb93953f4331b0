"""Numerical character lattice of a polarized surface.

A surface is declared by a finitely generated intersection lattice (the
relevant part of its divisor group), a polarization H, an orthogonal twist
divisor D, the canonical class K and the structure-sheaf Euler number.
Characters (r, c1, e) project through the D-twist to three-component
vectors that drive all of the plane geometry downstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, PreconditionError, SchemaError
from .plane import PlanePoint


def _frac(x) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational literal {x!r}") from exc
    raise SchemaError(f"not a rational: {x!r}")


def _fmt(f: Fraction) -> str:
    return str(f)


@dataclass(frozen=True)
class DivisorClass:
    """Divisor class as rational coordinates in the declared basis."""

    coords: tuple

    @staticmethod
    def make(coords) -> "DivisorClass":
        return DivisorClass(tuple(_frac(c) for c in coords))

    def __add__(self, other):
        self._check(other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self.coords))

    def scale(self, t) -> "DivisorClass":
        t = _frac(t)
        return DivisorClass(tuple(t * a for a in self.coords))

    def _check(self, other):
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch("divisor classes live in different lattices")

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


@dataclass(frozen=True)
class SurfaceLattice:
    """Intersection data (basis, gram, H, D, K, chiO) of a polarized surface."""

    basis: tuple
    gram: tuple
    H: DivisorClass
    D: DivisorClass
    K: DivisorClass
    chiO: Fraction

    def __post_init__(self):
        n = len(self.basis)
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise SchemaError("gram matrix shape does not match basis")
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise SchemaError("gram matrix must be symmetric")
        for d in (self.H, self.D, self.K):
            if len(d.coords) != n:
                raise DimensionMismatch("divisor coordinates do not match basis")
        if self.pair(self.H, self.H) <= 0:
            raise PreconditionError("polarization must have positive self-intersection")
        if self.pair(self.H, self.D) != 0:
            raise PreconditionError("twist divisor must be orthogonal to H")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pair(self, a: DivisorClass, b: DivisorClass) -> Fraction:
        if len(a.coords) != self.rank or len(b.coords) != self.rank:
            raise DimensionMismatch("divisor coordinates do not match basis")
        total = Fraction(0)
        for i, ai in enumerate(a.coords):
            if ai == 0:
                continue
            for j, bj in enumerate(b.coords):
                if bj == 0:
                    continue
                total += ai * bj * self.gram[i][j]
        return total

    @property
    def poisson_mode(self) -> bool:
        """True when H.K < 0, the regime where anticanonical sections exist."""
        return self.pair(self.H, self.K) < 0

    def divisor(self, coords) -> DivisorClass:
        d = DivisorClass.make(coords)
        if len(d.coords) != self.rank:
            raise DimensionMismatch("divisor coordinates do not match basis")
        return d

    # -- serialization ----------------------------------------------------

    @staticmethod
    def from_dict(data: dict) -> "SurfaceLattice":
        try:
            basis = tuple(str(b) for b in data["basis"])
            gram = tuple(
                tuple(_frac(x) for x in row) for row in data["gram"]
            )
            H = DivisorClass.make(data["H"])
            D = DivisorClass.make(data["D"])
            K = DivisorClass.make(data["K"])
            chiO = _frac(data["chiO"])
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"surface lattice record missing field: {exc}") from exc
        return SurfaceLattice(basis, gram, H, D, K, chiO)

    def to_dict(self) -> dict:
        return {
            "basis": list(self.basis),
            "gram": [[_fmt(x) for x in row] for row in self.gram],
            "H": [_fmt(c) for c in self.H.coords],
            "D": [_fmt(c) for c in self.D.coords],
            "K": [_fmt(c) for c in self.K.coords],
            "chiO": _fmt(self.chiO),
        }

    @staticmethod
    def load(path) -> "SurfaceLattice":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"invalid JSON in {path}: {exc}") from exc
        return SurfaceLattice.from_dict(data)


def intersect(a: DivisorClass, b: DivisorClass, L: SurfaceLattice) -> Fraction:
    """Symmetric intersection number through the gram matrix."""
    return L.pair(a, b)


@dataclass(frozen=True)
class CharVec:
    """Numerical character (rank, first Chern class, degree-2 component)."""

    r: Fraction
    c1: DivisorClass
    e: Fraction

    @staticmethod
    def make(r, c1_coords, e) -> "CharVec":
        return CharVec(_frac(r), DivisorClass.make(c1_coords), _frac(e))

    def __add__(self, other):
        return CharVec(self.r + other.r, self.c1 + other.c1, self.e + other.e)

    def __sub__(self, other):
        return CharVec(self.r - other.r, self.c1 - other.c1, self.e - other.e)

    def __neg__(self):
        return CharVec(-self.r, -self.c1, -self.e)

    def is_integral(self, L: SurfaceLattice) -> bool:
        """Rank and c1 integral, e congruent to c1^2/2 mod 1."""
        if self.r.denominator != 1:
            return False
        if any(c.denominator != 1 for c in self.c1.coords):
            return False
        return (self.e - L.pair(self.c1, self.c1) / 2).denominator == 1

    def to_dict(self) -> dict:
        return {
            "r": _fmt(self.r),
            "c1": [_fmt(c) for c in self.c1.coords],
            "e": _fmt(self.e),
        }

    @staticmethod
    def from_dict(data: dict) -> "CharVec":
        try:
            return CharVec.make(data["r"], data["c1"], data["e"])
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"character record missing field: {exc}") from exc


@dataclass(frozen=True)
class VTilde:
    """Projected character (H^2*ch0^D, H.ch1^D, ch2^D)."""

    v0: Fraction
    v1: Fraction
    v2: Fraction

    @staticmethod
    def make(v0, v1, v2) -> "VTilde":
        return VTilde(_frac(v0), _frac(v1), _frac(v2))

    def __add__(self, other):
        return VTilde(self.v0 + other.v0, self.v1 + other.v1, self.v2 + other.v2)

    def __sub__(self, other):
        return VTilde(self.v0 - other.v0, self.v1 - other.v1, self.v2 - other.v2)

    def __neg__(self):
        return VTilde(-self.v0, -self.v1, -self.v2)

    @property
    def is_zero(self) -> bool:
        return self.v0 == 0 and self.v1 == 0 and self.v2 == 0

    def plane_point(self) -> PlanePoint:
        if self.is_zero:
            raise PreconditionError("zero character has no plane point")
        return PlanePoint.make(self.v0, self.v1, self.v2)

    def as_tuple(self):
        return (self.v0, self.v1, self.v2)

    def to_list(self):
        return [_fmt(self.v0), _fmt(self.v1), _fmt(self.v2)]


def twist_char(ch: CharVec, L: SurfaceLattice) -> CharVec:
    """Multiply by exp(-D): (r, c1 - r D, e - D.c1 + r D^2/2)."""
    D = L.D
    return CharVec(
        ch.r,
        ch.c1 - D.scale(ch.r),
        ch.e - L.pair(D, ch.c1) + ch.r * L.pair(D, D) / 2,
    )


def untwist_char(ch: CharVec, L: SurfaceLattice) -> CharVec:
    """Inverse of twist_char (multiply by exp(D))."""
    D = L.D
    return CharVec(
        ch.r,
        ch.c1 + D.scale(ch.r),
        ch.e + L.pair(D, ch.c1) + ch.r * L.pair(D, D) / 2,
    )


def vtilde(ch: CharVec, L: SurfaceLattice) -> VTilde:
    """Project the D-twisted character onto (H^2 ch0, H.ch1, ch2)."""
    t = twist_char(ch, L)
    H = L.H
    return VTilde(L.pair(H, H) * t.r, L.pair(H, t.c1), t.e)


def tensor_by_K(ch: CharVec, L: SurfaceLattice) -> CharVec:
    """Character of E tensor the canonical bundle: multiply by exp(K)."""
    K = L.K
    return CharVec(
        ch.r,
        ch.c1 + K.scale(ch.r),
        ch.e + L.pair(ch.c1, K) + ch.r * L.pair(K, K) / 2,
    )


def derived_dual(ch: CharVec) -> CharVec:
    """Character of the shifted derived dual: (r, -c1, e)."""
    return CharVec(ch.r, -ch.c1, ch.e)


def euler_pairing(a: CharVec, b: CharVec, L: SurfaceLattice) -> Fraction:
    """Euler form chi(a, b) by Riemann-Roch on the surface."""
    K = L.K
    return (
        a.r * b.r * L.chiO
        - Fraction(1, 2) * (a.r * L.pair(K, b.c1) - b.r * L.pair(K, a.c1))
        + a.r * b.e
        + b.r * a.e
        - L.pair(a.c1, b.c1)
    )


def discriminant(v: VTilde) -> Fraction:
    """Bogomolov-type quantity v1^2 - 2 v0 v2; >= 0 for honest sheaf characters."""
    return v.v1 * v.v1 - 2 * v.v0 * v.v2
