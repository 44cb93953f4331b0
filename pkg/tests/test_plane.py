"""Exact projective-plane geometry: points, lines, parabola, quadratic numbers."""

import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from walland import (
    MixedRadicalError,
    ParabolaShift,
    PlaneLine,
    PlanePoint,
    PreconditionError,
    QuadNum,
    collinear,
    line_intersection,
    line_parabola_intersect,
    line_through,
    orientation,
    orientation_xy,
    parabola_translate,
    rational_strictly_between,
    segments_intersect,
)

from conftest import rand_frac

F = Fraction


# ---------------------------------------------------------------------------
# QuadNum


def test_quadnum_rational_degeneration():
    assert QuadNum(F(3, 2)).sign() == 1
    assert QuadNum(0, 0, 5).sign() == 0
    # perfect-square radicand collapses to a rational
    q = QuadNum(1, 1, 4)
    assert q == QuadNum(3)
    assert q.to_fraction() == 3


def test_quadnum_arithmetic_and_sign():
    r6 = QuadNum(0, 1, 6)
    x = QuadNum(2, -1, 6)  # 2 - sqrt(6) < 0
    assert x.sign() == -1
    assert (-x).sign() == 1
    assert (x * x).sign() == 1  # 10 - 4 sqrt(6) > 0
    assert x + r6 == QuadNum(2)
    assert (r6 * r6) == QuadNum(6)
    # division: (2 - sqrt 6)(2 + sqrt 6) = -2
    assert x * QuadNum(2, 1, 6) == QuadNum(-2)
    assert QuadNum(-2) / x == QuadNum(2, 1, 6)


def test_quadnum_mixed_radicals_rejected():
    with pytest.raises(MixedRadicalError):
        QuadNum(0, 1, 2) + QuadNum(0, 1, 3)
    with pytest.raises(MixedRadicalError):
        QuadNum(0, 1, 2) * QuadNum(1, 1, 5)


def test_quadnum_comparisons_against_mpmath():
    # exact order must agree with 80-bit floats whenever they are separated
    mpmath.mp.prec = 96
    rng = random.Random(20240811)
    checked = 0
    for _ in range(10_000):
        d = rng.randint(0, 30)
        a1, b1 = rand_frac(rng), rand_frac(rng)
        a2, b2 = rand_frac(rng), rand_frac(rng)
        q1 = QuadNum(a1, b1, d)
        q2 = QuadNum(a2, b2, d)
        v1 = mpmath.mpf(a1.numerator) / a1.denominator + (
            mpmath.mpf(b1.numerator) / b1.denominator
        ) * mpmath.sqrt(d)
        v2 = mpmath.mpf(a2.numerator) / a2.denominator + (
            mpmath.mpf(b2.numerator) / b2.denominator
        ) * mpmath.sqrt(d)
        if abs(v1 - v2) > mpmath.mpf("1e-15"):
            expected = 1 if v1 > v2 else -1
            assert (q1 - q2).sign() == expected
            checked += 1
        else:
            (q1 - q2).sign()  # ties and near-ties must still be decided exactly
    assert checked > 9000


def test_quadnum_exact_tie():
    # perfect-square radicands collapse, so cross-radicand ties stay rational
    assert QuadNum(0, 2, F(9, 4)) == QuadNum(0, 1, 9)
    assert (QuadNum(-3, 1, 9) + QuadNum(3, -2, F(9, 4))).sign() == 0
    # sqrt(8) and sqrt(2) live in one field but are distinct radicands here
    with pytest.raises(MixedRadicalError):
        QuadNum(0, 1, 8) - QuadNum(0, 2, 2)


# ---------------------------------------------------------------------------
# points and lines


def test_plane_point_canonical_triple():
    p = PlanePoint.make(F(-1, 2), F(1, 4), F(-3, 4))
    assert p.h == (2, -1, 3)
    assert PlanePoint.make(4, 0, -2).h == (2, 0, -1)
    # first nonzero coordinate positive
    assert PlanePoint.make(0, -2, 4).h == (0, 1, -2)
    with pytest.raises(PreconditionError):
        PlanePoint.make(0, 0, 0)


def test_plane_point_projective_equality_and_affine():
    assert PlanePoint.make(2, 4, 6) == PlanePoint.make(1, 2, 3)
    p = PlanePoint.affine(F(1, 2), F(-2, 3))
    assert p.affine_pair() == (F(1, 2), F(-2, 3))
    inf = PlanePoint.make(0, 1, 1)
    assert inf.at_infinity
    with pytest.raises(PreconditionError):
        inf.x


def test_line_through_axis_case():
    # wall of the structure sheaf and a skyscraper: the vertical v1 = 0
    line = line_through(PlanePoint.make(1, 0, 0), PlanePoint.make(0, 0, 1))
    assert line.coeffs == (0, 1, 0)
    assert line.is_vertical


def test_line_through_affine_cases():
    # y = -x
    line = line_through(PlanePoint.make(1, 0, 0), PlanePoint.make(1, -1, 1))
    assert line.slope() == -1
    assert line.y_intercept() == 0
    # horizontal y = 2
    line = line_through(PlanePoint.make(1, 2, 2), PlanePoint.make(1, -2, 2))
    assert line.slope() == 0
    assert line.y_intercept() == 2
    with pytest.raises(PreconditionError):
        line_through(PlanePoint.make(1, 2, 2), PlanePoint.make(2, 4, 4))


def test_line_contains_is_exact():
    p = PlanePoint.affine(F(1, 3), F(7, 5))
    q = PlanePoint.affine(F(-2, 7), F(1, 2))
    line = line_through(p, q)
    assert line.contains(p) and line.contains(q)
    assert not line.contains(PlanePoint.affine(F(1, 3), F(7, 5) + F(1, 10 ** 9)))


def test_collinear_examples():
    a = PlanePoint.make(1, 0, 0)
    assert collinear(a, a, a)
    assert collinear(a, PlanePoint.make(1, 1, F(1, 2)), PlanePoint.make(1, 2, 1))
    assert not collinear(a, PlanePoint.make(1, 1, F(1, 2)), PlanePoint.make(1, 2, 2))


def test_orientation_examples():
    p = PlanePoint.affine(0, 0)
    q = PlanePoint.affine(1, 0)
    assert orientation(p, q, PlanePoint.affine(0, 1)) == 1
    assert orientation(p, q, PlanePoint.affine(2, 0)) == 0
    # the phase-comparison figure: x(E) = (-3,-2) on the left of P -> x(F)
    o = orientation(
        PlanePoint.affine(F(1, 2), F(3, 2)),
        PlanePoint.affine(3, -1),
        PlanePoint.affine(-3, -2),
    )
    assert o == -1
    with pytest.raises(PreconditionError):
        orientation(p, q, PlanePoint.make(0, 1, 0))


@settings(max_examples=80, deadline=None)
@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9),
       st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
def test_orientation_permutation_signs(ax, ay, bx, by, cx, cy):
    p = PlanePoint.affine(ax, ay)
    q = PlanePoint.affine(bx, by)
    r = PlanePoint.affine(cx, cy)
    o = orientation(p, q, r)
    assert o == -orientation(p, r, q)
    assert o == orientation(q, r, p) == orientation(r, p, q)
    assert (o == 0) == collinear(p, q, r)


# ---------------------------------------------------------------------------
# parabola


def test_line_parabola_secant():
    line = PlaneLine.make(0, 1, 1)  # y = -x
    pts = line_parabola_intersect(line, ParabolaShift.make(0))
    assert len(pts) == 2
    (ax, ay), (bx, by) = pts
    assert ax == QuadNum(-2) and ay == QuadNum(2)
    assert bx == QuadNum(0) and by == QuadNum(0)


def test_line_parabola_tangent_and_miss():
    tangent = PlaneLine.make(2, -2, 1)  # y = 2x - 2
    pts = line_parabola_intersect(tangent, ParabolaShift.make(0))
    assert len(pts) == 1
    assert pts[0][0] == QuadNum(2) and pts[0][1] == QuadNum(2)
    miss = PlaneLine.make(1, 0, 1)  # y = -1
    assert line_parabola_intersect(miss, ParabolaShift.make(0)) == []
    with pytest.raises(PreconditionError):
        line_parabola_intersect(PlaneLine.make(1, 0, 0), ParabolaShift.make(0))


def test_line_parabola_vertical():
    line = PlaneLine.make(-3, 1, 0)  # x = 3
    pts = line_parabola_intersect(line, ParabolaShift.make(F(1, 2)))
    assert len(pts) == 1
    assert pts[0][0] == QuadNum(3) and pts[0][1] == QuadNum(5)


def test_line_parabola_symbolic_substitution():
    # both defining equations must vanish exactly in QuadNum arithmetic
    rng = random.Random(77)
    secants = 0
    for _ in range(500):
        a, b, c = (rand_frac(rng) for _ in range(3))
        if b == 0 and c == 0:
            continue
        line = PlaneLine.make(a, b, c)
        if line.is_line_at_infinity:
            continue
        C = rand_frac(rng)
        pts = line_parabola_intersect(line, ParabolaShift.make(C))
        la, lb, lc = line.coeffs
        for x, y in pts:
            assert (la + lb * x + lc * y).sign() == 0
            assert (y - x * x * F(1, 2) - C).sign() == 0
        if len(pts) == 2:
            secants += 1
            assert (pts[1][0] - pts[0][0]).sign() > 0  # ordered by x
    assert secants > 150


def test_parabola_translate_examples():
    p = PlanePoint.affine(-1, 1)
    assert parabola_translate(p, 0) == p
    assert parabola_translate(p, -3) == PlanePoint.affine(-4, F(17, 2))
    assert parabola_translate(PlanePoint.affine(0, 0), -3) == PlanePoint.affine(
        -3, F(9, 2)
    )
    with pytest.raises(PreconditionError):
        parabola_translate(PlanePoint.make(0, 1, 0), 1)


def test_parabola_translate_preserves_shift():
    rng = random.Random(5150)
    for _ in range(200):
        x, y, d = rand_frac(rng), rand_frac(rng), rand_frac(rng)
        p = PlanePoint.affine(x, y)
        q = parabola_translate(p, d)
        assert q.y - q.x * q.x / 2 == y - x * x / 2
        assert q.x == x + d


# ---------------------------------------------------------------------------
# segments


def test_segments_disjoint_chords():
    s1 = ((QuadNum(-2), QuadNum(2)), (QuadNum(0), QuadNum(0)))
    s2 = ((QuadNum(-5), QuadNum(F(25, 2))), (QuadNum(-3), QuadNum(F(9, 2))))
    assert not segments_intersect(s1, s2)


def test_segments_crossing_and_touching():
    assert segments_intersect(((0, 0), (2, 2)), ((0, 2), (2, 0)))
    # closed convention: shared endpoint counts
    assert segments_intersect(((0, 0), (1, 1)), ((1, 1), (5, 0)))
    assert segments_intersect(((0, 0), (4, 4)), ((2, 2), (9, 2)))
    assert not segments_intersect(((0, 0), (1, 0)), ((0, 1), (1, 1)))


def test_segments_quadnum_coordinates():
    r2 = QuadNum(0, 1, 2)
    # vertical through x = sqrt(2) against the unit-ish horizontal box edge
    s1 = ((r2, QuadNum(-1)), (r2, QuadNum(3)))
    s2 = ((QuadNum(0), QuadNum(1)), (QuadNum(2), QuadNum(1)))
    assert segments_intersect(s1, s2)
    s3 = ((QuadNum(0), QuadNum(1)), (QuadNum(1), QuadNum(1)))  # stops left of sqrt 2
    assert not segments_intersect(s1, s3)


def test_line_intersection_and_between():
    l1 = PlaneLine.make(0, 1, 0)
    l2 = PlaneLine.make(-1, 0, 1)
    r = line_intersection(l1, l2)
    assert r.affine_pair() == (0, 1)
    with pytest.raises(PreconditionError):
        line_intersection(l1, PlaneLine.make(0, 2, 0))
    m = rational_strictly_between(QuadNum(2, -1, 6), QuadNum(2, 1, 6))
    assert QuadNum(2, -1, 6) < m < QuadNum(2, 1, 6)
    with pytest.raises(PreconditionError):
        rational_strictly_between(QuadNum(1), QuadNum(1))


def test_orientation_xy_accepts_quadnum():
    r3 = QuadNum(0, 1, 3)
    assert orientation_xy((QuadNum(0), QuadNum(0)), (QuadNum(1), QuadNum(0)), (r3, r3)) == 1
