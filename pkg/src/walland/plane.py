"""Exact geometry of the projective character plane.

Points carry homogeneous rational coordinates [v0 : v1 : v2]; the affine
chart v0 != 0 is the (x, y) plane in which stability parameters live, and
v0 = 0 is the line at infinity.  Reference parabolas y = x^2/2 + C cut the
plane; lines meet them in points whose coordinates live in one quadratic
extension of the rationals per line.  Every predicate here is decided by
exact sign computation; floats appear only in display helpers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from .errors import DegenerateGeometryError, MixedRadicalError, PreconditionError

Rat = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def _sq_root_if_perfect(f: Fraction):
    """Rational square root of f, or None."""
    if f < 0:
        return None
    p, q = f.numerator, f.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


class QuadNum:
    """Number a + b*sqrt(d) with rational a, b and rational d >= 0.

    All arithmetic stays inside a single quadratic extension: combining two
    values whose radicands differ (both irrational) raises MixedRadicalError.
    Signs, equality and order are decided exactly, never through floats.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=0):
        a = _frac(a)
        b = _frac(b)
        d = _frac(d)
        if d < 0:
            raise PreconditionError("negative radicand")
        if b == 0:
            d = Fraction(0)
        elif d == 0:
            b = Fraction(0)
        else:
            r = _sq_root_if_perfect(d)
            if r is not None:
                a, b, d = a + b * r, Fraction(0), Fraction(0)
        self.a = a
        self.b = b
        self.d = d

    # -- field discipline ------------------------------------------------

    def _join(self, other: "QuadNum") -> Fraction:
        if self.d == 0:
            return other.d
        if other.d == 0 or self.d == other.d:
            return self.d
        raise MixedRadicalError(
            f"cannot combine sqrt({self.d}) with sqrt({other.d})"
        )

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise PreconditionError("irrational QuadNum has no Fraction value")
        return self.a

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, QuadNum):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadNum(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._join(other)
        return QuadNum(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._join(other)
        a = self.a * other.a + self.b * other.b * d
        b = self.a * other.b + self.b * other.a
        return QuadNum(a, b, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._join(other)
        # multiply by the conjugate of the divisor
        n = other.a * other.a - other.b * other.b * d
        if n == 0:
            raise ZeroDivisionError("division by zero QuadNum")
        inv = QuadNum(other.a / n, -other.b / n, d)
        return self * inv

    def __rtruediv__(self, other):
        return QuadNum(_frac(other)) / self

    # -- exact sign and order ----------------------------------------------

    def sign(self) -> int:
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against b^2 d
        t = a * a - b * b * d
        s = (t > 0) - (t < 0)
        return s if a > 0 else -s

    def _cmp(self, other) -> int:
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError("cannot compare QuadNum with that type")
        return (self - other).sign()

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    __hash__ = None  # mutable-free but not canonically normalized across radicands

    # -- display ------------------------------------------------------------

    def approx(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(float(self.d))

    def __repr__(self):
        if self.b == 0:
            return f"QuadNum({self.a})"
        return f"QuadNum({self.a} + {self.b}*sqrt({self.d}))"


Coord = Union[int, Fraction, QuadNum]


def sign_of(x: Coord) -> int:
    if isinstance(x, QuadNum):
        return x.sign()
    return (x > 0) - (x < 0)


def _canonical_int_triple(c0: Fraction, c1: Fraction, c2: Fraction):
    lcm = 1
    for f in (c0, c1, c2):
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    a = [int(f * lcm) for f in (c0, c1, c2)]
    g = gcd(gcd(abs(a[0]), abs(a[1])), abs(a[2]))
    if g == 0:
        raise PreconditionError("zero homogeneous triple")
    a = [x // g for x in a]
    for x in a:
        if x != 0:
            if x < 0:
                a = [-y for y in a]
            break
    return tuple(a)


@dataclass(frozen=True)
class PlanePoint:
    """Projective point [v0 : v1 : v2], canonical coprime integer triple."""

    h: tuple

    @staticmethod
    def make(v0, v1, v2) -> "PlanePoint":
        return PlanePoint(_canonical_int_triple(_frac(v0), _frac(v1), _frac(v2)))

    @staticmethod
    def affine(x, y) -> "PlanePoint":
        return PlanePoint.make(1, x, y)

    @property
    def at_infinity(self) -> bool:
        return self.h[0] == 0

    @property
    def x(self) -> Fraction:
        if self.at_infinity:
            raise PreconditionError("point at infinity has no affine coordinates")
        return Fraction(self.h[1], self.h[0])

    @property
    def y(self) -> Fraction:
        if self.at_infinity:
            raise PreconditionError("point at infinity has no affine coordinates")
        return Fraction(self.h[2], self.h[0])

    def affine_pair(self):
        return (self.x, self.y)

    def __repr__(self):
        return f"[{self.h[0]}:{self.h[1]}:{self.h[2]}]"


@dataclass(frozen=True)
class PlaneLine:
    """Projective line a*v0 + b*v1 + c*v2 = 0, canonical coefficient triple."""

    coeffs: tuple

    @staticmethod
    def make(a, b, c) -> "PlaneLine":
        return PlaneLine(_canonical_int_triple(_frac(a), _frac(b), _frac(c)))

    @property
    def is_line_at_infinity(self) -> bool:
        return self.coeffs[1] == 0 and self.coeffs[2] == 0

    @property
    def is_vertical(self) -> bool:
        # affine equation b*x + a = 0
        return self.coeffs[2] == 0 and self.coeffs[1] != 0

    def eval_point(self, p: PlanePoint) -> int:
        a, b, c = self.coeffs
        return a * p.h[0] + b * p.h[1] + c * p.h[2]

    def contains(self, p: PlanePoint) -> bool:
        return self.eval_point(p) == 0

    def slope(self) -> Fraction:
        a, b, c = self.coeffs
        if c == 0:
            raise PreconditionError("vertical line has no slope")
        return Fraction(-b, c)

    def y_intercept(self) -> Fraction:
        a, b, c = self.coeffs
        if c == 0:
            raise PreconditionError("vertical line has no intercept")
        return Fraction(-a, c)

    def __repr__(self):
        a, b, c = self.coeffs
        return f"Line({a} + {b}x + {c}y = 0)"


def _cross3(p, q):
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def line_through(p: PlanePoint, q: PlanePoint) -> PlaneLine:
    """Unique line through two distinct projective points."""
    if p == q:
        raise PreconditionError("line_through needs two distinct points")
    # coefficient vector orthogonal to both coordinate triples
    c = _cross3((p.h[0], p.h[1], p.h[2]), (q.h[0], q.h[1], q.h[2]))
    a, b, cc = c
    return PlaneLine.make(Fraction(a), Fraction(b), Fraction(cc))


def line_intersection(l1: PlaneLine, l2: PlaneLine) -> PlanePoint:
    if l1 == l2:
        raise PreconditionError("identical lines have no unique intersection")
    h = _cross3(l1.coeffs, l2.coeffs)
    return PlanePoint.make(Fraction(h[0]), Fraction(h[1]), Fraction(h[2]))


def collinear(p: PlanePoint, q: PlanePoint, r: PlanePoint) -> bool:
    """Exact 3x3 determinant test on homogeneous coordinates."""
    det = (
        p.h[0] * (q.h[1] * r.h[2] - q.h[2] * r.h[1])
        - p.h[1] * (q.h[0] * r.h[2] - q.h[2] * r.h[0])
        + p.h[2] * (q.h[0] * r.h[1] - q.h[1] * r.h[0])
    )
    return det == 0


def orientation(p: PlanePoint, q: PlanePoint, r: PlanePoint) -> int:
    """Sign of the signed area of the affine triangle p, q, r."""
    for pt in (p, q, r):
        if pt.at_infinity:
            raise PreconditionError("orientation needs affine points")
    return orientation_xy(p.affine_pair(), q.affine_pair(), r.affine_pair())


def orientation_xy(p, q, r) -> int:
    """Orientation of raw coordinate pairs; coordinates may be QuadNum."""
    det = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return sign_of(det)


@dataclass(frozen=True)
class ParabolaShift:
    """Reference parabola y = x^2/2 + C."""

    C: Fraction

    @staticmethod
    def make(C) -> "ParabolaShift":
        return ParabolaShift(_frac(C))

    @staticmethod
    def through(x, y) -> "ParabolaShift":
        x, y = _frac(x), _frac(y)
        return ParabolaShift(y - x * x / 2)

    def height(self, x):
        return x * x / 2 + self.C

    def side(self, x, y) -> int:
        """+1 above, 0 on, -1 below (exact; accepts QuadNum)."""
        return sign_of(y - x * x / 2 - self.C)


def line_parabola_intersect(line: PlaneLine, parabola: ParabolaShift):
    """Affine intersection points of a line with y = x^2/2 + C.

    Returns a list of (x, y) pairs with QuadNum coordinates ordered by x:
    two points for a secant, one for a tangent or a vertical line, none
    when the line misses the parabola.  The line at infinity is rejected.
    """
    if line.is_line_at_infinity:
        raise PreconditionError("line at infinity never meets the affine parabola")
    a, b, c = line.coeffs
    if c == 0:
        x0 = Fraction(-a, b)
        return [(QuadNum(x0), QuadNum(parabola.height(x0)))]
    m = line.slope()
    k = line.y_intercept()
    # x^2/2 + C = m x + k  =>  x^2 - 2 m x + 2(C - k) = 0
    disc = m * m - 2 * (parabola.C - k)
    if disc < 0:
        return []
    if disc == 0:
        x = QuadNum(m)
        return [(x, QuadNum(m * x.a + k))]
    xs = [QuadNum(m, -1, disc), QuadNum(m, 1, disc)]
    return [(x, x * m + k) for x in xs]


def parabola_translate(p: PlanePoint, delta) -> PlanePoint:
    """Slide an affine point along its own parabola y = x^2/2 + C by delta in x."""
    if p.at_infinity:
        raise PreconditionError("cannot translate a point at infinity along a parabola")
    delta = _frac(delta)
    par = ParabolaShift.through(p.x, p.y)
    nx = p.x + delta
    return PlanePoint.affine(nx, par.height(nx))


def _on_segment_collinear(p, q, r) -> bool:
    # r assumed collinear with p, q: is it inside the closed box?
    return (
        min_coord(p[0], q[0]) <= r[0] <= max_coord(p[0], q[0])
        and min_coord(p[1], q[1]) <= r[1] <= max_coord(p[1], q[1])
    )


def min_coord(a, b):
    return a if sign_of(a - b) <= 0 else b


def max_coord(a, b):
    return a if sign_of(a - b) >= 0 else b


def segments_intersect(s1, s2) -> bool:
    """Closed-segment intersection test via exact orientation signs.

    Each segment is a pair of (x, y) coordinate pairs; coordinates may be
    rational or QuadNum, but all irrational ones must share one radicand.
    """
    p1, p2 = s1
    q1, q2 = s2
    o1 = orientation_xy(p1, p2, q1)
    o2 = orientation_xy(p1, p2, q2)
    o3 = orientation_xy(q1, q2, p1)
    o4 = orientation_xy(q1, q2, p2)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_segment_collinear(p1, p2, q1):
        return True
    if o2 == 0 and _on_segment_collinear(p1, p2, q2):
        return True
    if o3 == 0 and _on_segment_collinear(q1, q2, p1):
        return True
    if o4 == 0 and _on_segment_collinear(q1, q2, p2):
        return True
    return False


def rational_strictly_between(lo, hi) -> Fraction:
    """Some rational r with lo < r < hi; endpoints may be QuadNum."""
    if sign_of(hi - lo) <= 0:
        raise PreconditionError("empty open interval")
    lo_f = lo.approx() if isinstance(lo, QuadNum) else float(lo)
    hi_f = hi.approx() if isinstance(hi, QuadNum) else float(hi)
    denom = 2
    while True:
        mid = Fraction(round((lo_f + hi_f) / 2 * denom), denom)
        if sign_of(mid - lo) > 0 and sign_of(hi - mid) > 0:
            return mid
        denom *= 2
        if denom > 2 ** 80:
            raise DegenerateGeometryError("interval too thin to separate")
