"""Wall-crossing toolkit.

Four pieces built on the exact stability engine:

* phase-bound intervals: the two parabola intersection points of the line
  through a character and a parameter point bound, after lifting, the
  phases every numerical factor can reach at a deformed parameter;
* candidate-wall enumeration over a bounded integral search grid;
* destabilization-path simulation along a parameter segment, recursing
  through two-term integral splits at strict wall crossings;
* the Ext2-vanishing certificate: the geometric dichotomy (segment
  intersection with a strict phase inequality at the witness, or phase
  dominance of the canonically twisted character below the interval).

Everything is exact.  Lifted phases are (integer, ray) pairs; rotations
along parameter segments stay below a half turn, which pins each lift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as _iterproduct
from typing import Optional

from .errors import (
    CertificateFailure,
    DegenerateGeometryError,
    PreconditionError,
    ZeroChargeError,
)
from .jsonio import frac_str, quad_to_json
from .lattice import (
    CharVec,
    SurfaceLattice,
    VTilde,
    derived_dual,
    discriminant,
    euler_pairing,
    tensor_by_K,
    vtilde,
)
from .plane import (
    ParabolaShift,
    PlaneLine,
    PlanePoint,
    QuadNum,
    line_intersection,
    line_parabola_intersect,
    line_through,
    parabola_translate,
    rational_strictly_between,
)
from .stability import (
    HeartPosition,
    LiftedPhase,
    StabPoint,
    canonical_ray,
    central_charge,
    heart_sign_check,
    segment_point,
    wall_of,
)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _charge(s: Fraction, q: Fraction, x: VTilde):
    """Raw charge components at an arbitrary parameter pair."""
    return (-x.v2 + q * x.v0, x.v1 - s * x.v0)


def _ray_of(re: Fraction, im: Fraction):
    return canonical_ray(re, im)


# ---------------------------------------------------------------------------
# enumeration bounds and regions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EnumerationBounds:
    """Finite search box: |rank| <= rank_bound, |c1 coords| <= c1_bound."""

    rank_bound: int
    c1_bound: int

    def __post_init__(self):
        if self.rank_bound < 0 or self.c1_bound < 0:
            raise PreconditionError("enumeration bounds must be nonnegative")

    @staticmethod
    def coerce(bounds) -> "EnumerationBounds":
        if isinstance(bounds, EnumerationBounds):
            return bounds
        if bounds is None:
            raise PreconditionError("enumeration requires explicit rank/c1 bounds")
        try:
            rb, cb = bounds
        except (TypeError, ValueError) as exc:
            raise PreconditionError(f"bad enumeration bounds: {bounds!r}") from exc
        return EnumerationBounds(int(rb), int(cb))


def _line_eval(wall: PlaneLine, s: Fraction, q: Fraction) -> Fraction:
    # affine evaluation; eval_point on a PlanePoint carries the
    # canonicalization scale and would skew crossing parameters
    a, b, c = wall.coeffs
    return a + b * s + c * q


class SegmentRegion:
    """Closed segment between two stability parameters."""

    def __init__(self, P: StabPoint, Q: StabPoint):
        self.P = P
        self.Q = Q

    def corners(self):
        return (self.P, self.Q)

    def q_bounds(self):
        return (min(self.P.q, self.Q.q), max(self.P.q, self.Q.q))

    def point_at(self, t: Fraction):
        return (
            self.P.s + t * (self.Q.s - self.P.s),
            self.P.q + t * (self.Q.q - self.P.q),
        )

    def wall_clip(self, wall: PlaneLine):
        """Meet of the wall line with the segment.

        Returns None, ("point", [(s, q)]) or ("span", [(s0,q0), (s1,q1)]).
        """
        f0 = _line_eval(wall, self.P.s, self.P.q)
        f1 = _line_eval(wall, self.Q.s, self.Q.q)
        if f0 == 0 and f1 == 0:
            return ("span", [(self.P.s, self.P.q), (self.Q.s, self.Q.q)])
        if f0 * f1 > 0:
            return None
        t = Fraction(f0, f0 - f1)
        return ("point", [self.point_at(t)])


class BoxRegion:
    """Axis-aligned closed box strictly above the parabola."""

    def __init__(self, s_lo, s_hi, q_lo, q_hi):
        self.s_lo, self.s_hi = _frac(s_lo), _frac(s_hi)
        self.q_lo, self.q_hi = _frac(q_lo), _frac(q_hi)
        if self.s_lo > self.s_hi or self.q_lo > self.q_hi:
            raise PreconditionError("empty box region")
        # max of s^2/2 over [s_lo, s_hi] sits at a corner
        for s in (self.s_lo, self.s_hi):
            StabPoint.make(s, self.q_lo)

    def corners(self):
        return tuple(
            StabPoint.make(s, q)
            for s in (self.s_lo, self.s_hi)
            for q in (self.q_lo, self.q_hi)
        )

    def q_bounds(self):
        return (self.q_lo, self.q_hi)

    def wall_clip(self, wall: PlaneLine):
        a, b, c = (Fraction(x) for x in wall.coeffs)
        if b == 0 and c == 0:
            return None  # line at infinity misses the affine box
        if c != 0:
            base = (Fraction(0), Fraction(-a, c))
        else:
            base = (Fraction(-a, b), Fraction(0))
        dvec = (c, -b)
        lo, hi = None, None  # parameter interval along base + tau*dvec

        def clamp(p0, d, lo_lim, hi_lim, lo, hi):
            if d == 0:
                if lo_lim <= p0 <= hi_lim:
                    return lo, hi
                return (Fraction(1), Fraction(0))  # empty marker
            t0 = (lo_lim - p0) / d
            t1 = (hi_lim - p0) / d
            if t0 > t1:
                t0, t1 = t1, t0
            lo = t0 if lo is None or t0 > lo else lo
            hi = t1 if hi is None or t1 < hi else hi
            return lo, hi

        lo, hi = clamp(base[0], dvec[0], self.s_lo, self.s_hi, lo, hi)
        if lo is not None and hi is not None and lo > hi:
            return None
        lo, hi = clamp(base[1], dvec[1], self.q_lo, self.q_hi, lo, hi)
        if lo is None or hi is None:
            # wall parallel to both axes cannot happen; both unclamped means
            # the line is constant in the box in each axis separately
            return None
        if lo > hi:
            return None
        p_lo = (base[0] + lo * dvec[0], base[1] + lo * dvec[1])
        p_hi = (base[0] + hi * dvec[0], base[1] + hi * dvec[1])
        if lo == hi:
            return ("point", [p_lo])
        return ("span", [p_lo, p_hi])


def _region_re_envelope(region, v: VTilde) -> Fraction:
    """Max of |Re Z(v)| over the region (linear, so corners suffice)."""
    best = Fraction(0)
    for c in region.corners():
        re, _ = _charge(c.s, c.q, v)
        if abs(re) > best:
            best = abs(re)
    return best


# ---------------------------------------------------------------------------
# destabilization tests along a wall clip
# ---------------------------------------------------------------------------


def _proportional(v: VTilde, w: VTilde) -> bool:
    return (
        v.v1 * w.v2 - v.v2 * w.v1 == 0
        and v.v2 * w.v0 - v.v0 * w.v2 == 0
        and v.v0 * w.v1 - v.v1 * w.v0 == 0
    )


def _ratio_at(s, q, v: VTilde, w: VTilde):
    """t with Z(w) = t * Z(v) at (s, q), or None."""
    re_v, im_v = _charge(s, q, v)
    re_w, im_w = _charge(s, q, w)
    if re_v == 0 and im_v == 0:
        return None
    t = im_w / im_v if im_v != 0 else re_w / re_v
    if re_w == t * re_v and im_w == t * im_v:
        return t
    return None


def _span_test_params(p0, p1, v: VTilde, w: VTilde):
    """Rational test parameters along an affine clip p0 -> p1.

    Breakpoints are the roots of the linear charge components and of the
    ratio-equals-plus-minus-one combinations; together with interval
    midpoints they decide existence questions for the ratio exactly.
    """
    ds, dq = p1[0] - p0[0], p1[1] - p0[1]

    def lin(x: VTilde):
        re0, im0 = _charge(p0[0], p0[1], x)
        re1, im1 = _charge(p0[0] + ds, p0[1] + dq, x)
        return (re0, re1 - re0), (im0, im1 - im0)

    (rv, drv), (iv, div_) = lin(v)
    (rw, drw), (iw, diw) = lin(w)
    cuts = {Fraction(0), Fraction(1)}
    for a, b in (
        (rv, drv),
        (iv, div_),
        (rw, drw),
        (iw, diw),
        (rw - rv, drw - drv),
        (rw + rv, drw + drv),
        (iw - iv, diw - div_),
        (iw + iv, diw + div_),
    ):
        if b != 0:
            t = -a / b
            if 0 < t < 1:
                cuts.add(t)
    grid = sorted(cuts)
    params = list(grid)
    for a, b in zip(grid, grid[1:]):
        params.append((a + b) / 2)
    return sorted(params)


def _destab_exists(v: VTilde, w: VTilde, clip) -> bool:
    """Is w numerically destabilizing somewhere on the clip?

    Sign-agnostic: requires Z(w) = t * Z(v) with t != 0 and t^2 < 1 at
    some point of the clip, so both w and v - w carve out proper pieces
    of the charge regardless of heart orientation.
    """
    kind, pts = clip
    if kind == "point":
        params = [Fraction(0)]
        p0 = pts[0]
        p1 = pts[0]
    else:
        p0, p1 = pts
        params = _span_test_params(p0, p1, v, w)
    for t in params:
        s = p0[0] + t * (p1[0] - p0[0])
        q = p0[1] + t * (p1[1] - p0[1])
        ratio = _ratio_at(s, q, v, w)
        if ratio is not None and ratio != 0 and ratio * ratio < 1:
            return True
    return False


# ---------------------------------------------------------------------------
# candidate walls
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CandidateWall:
    wall: PlaneLine
    witnesses: tuple

    def to_dict(self) -> dict:
        return {
            "wall": [str(c) for c in self.wall.coeffs],
            "witnesses": [list(w.to_list()) for w in self.witnesses],
        }


def enumerate_candidate_walls(
    v: VTilde, region, rank_bound: int, c1_bound: int, L: SurfaceLattice
):
    """All potential walls of v meeting the region, with integral witnesses.

    Witness characters w = (r', c', e') run over |r'| <= rank_bound and
    |c' coords| <= c1_bound; e' is confined to the integrality grid inside
    an exact envelope (|Re Z(w)| cannot exceed |Re Z(v)| anywhere a ratio
    in (-1, 1) is achieved), which keeps every search finite.  Kept are w
    with discriminant(w) >= 0, discriminant(v - w) >= 0, the wall meeting
    the region, and the ratio condition achieved somewhere on the meet.
    """
    bounds = EnumerationBounds(int(rank_bound), int(c1_bound))
    if v.is_zero:
        raise ZeroChargeError("zero character has no walls")
    found = {}
    H, D = L.H, L.D
    H2 = L.pair(H, H)
    DD = L.pair(D, D)
    q_lo, q_hi = region.q_bounds()
    envelope = _region_re_envelope(region, v)
    for r in range(-bounds.rank_bound, bounds.rank_bound + 1):
        w0 = H2 * r
        env_lo = min(q_lo * w0, q_hi * w0) - envelope
        env_hi = max(q_lo * w0, q_hi * w0) + envelope
        for coords in _iterproduct(
            range(-bounds.c1_bound, bounds.c1_bound + 1), repeat=L.rank
        ):
            c = L.divisor(coords)
            w1 = L.pair(H, c)
            # w2 = base + k over integers k: integrality of e' plus twist shift
            base = L.pair(c, c) / 2 - L.pair(D, c) + Fraction(r) * DD / 2
            k_lo = env_lo - base
            k_hi = env_hi - base
            # Bogomolov constraints are linear in k once w0, u0 are fixed
            if w0 > 0:
                k_hi = min(k_hi, w1 * w1 / (2 * w0) - base)
            elif w0 < 0:
                k_lo = max(k_lo, w1 * w1 / (2 * w0) - base)
            u0, u1 = v.v0 - w0, v.v1 - w1
            if u0 > 0:
                k_lo = max(k_lo, v.v2 - base - u1 * u1 / (2 * u0))
            elif u0 < 0:
                k_hi = min(k_hi, v.v2 - base - u1 * u1 / (2 * u0))
            for k in range(math.ceil(k_lo), math.floor(k_hi) + 1):
                w = VTilde(w0, w1, base + k)
                if w.is_zero:
                    continue
                u = v - w
                if u.is_zero or _proportional(v, w):
                    continue
                if discriminant(w) < 0 or discriminant(u) < 0:
                    continue
                wall = wall_of(v, w)
                clip = region.wall_clip(wall)
                if clip is None:
                    continue
                if not _destab_exists(v, w, clip):
                    continue
                found.setdefault(wall.coeffs, {})[w.as_tuple()] = w
    out = []
    for coeffs in sorted(found):
        ws = found[coeffs]
        out.append(
            CandidateWall(
                PlaneLine(coeffs), tuple(ws[key] for key in sorted(ws))
            )
        )
    return out


# ---------------------------------------------------------------------------
# phase-bound intervals
# ---------------------------------------------------------------------------


@dataclass
class PhaseInterval:
    """Lifted phase window spanned by the two chord endpoints at Q."""

    lo: LiftedPhase
    hi: LiftedPhase
    labels: dict
    Q: StabPoint
    A: tuple
    B: tuple
    chord: PlaneLine
    anchor: LiftedPhase
    degenerate_endpoint: Optional[str] = None

    def contains(self, lp: LiftedPhase) -> bool:
        """Weak membership lo <= lp <= hi."""
        return self.lo.compare(lp) <= 0 and lp.compare(self.hi) <= 0

    def to_dict(self) -> dict:
        return {
            "lo": self.lo.to_dict(),
            "hi": self.hi.to_dict(),
            "labels": dict(self.labels),
            "Q": self.Q.to_dict(),
            "A": [quad_to_json(self.A[0]), quad_to_json(self.A[1])],
            "B": [quad_to_json(self.B[0]), quad_to_json(self.B[1])],
            "chord": [str(c) for c in self.chord.coeffs],
            "degenerate_endpoint": self.degenerate_endpoint,
        }


def _endpoint_lift(
    X, P: StabPoint, Q: StabPoint, zP, anchor: LiftedPhase
) -> LiftedPhase:
    """Lift of the chord endpoint X viewed from Q, branch pinned by anchor.

    The ray is i*(X - Q) on the side the heart ray leaves P, negated on
    the other side; the integer part is the unique even offset landing the
    value inside the open unit window around the anchor phase at P.
    """
    re, im = zP
    # plane direction of the charge ray at P
    dir_s, dir_q = im, -re
    side = ((X[0] - P.s) * dir_s + (X[1] - P.q) * dir_q).sign()
    if side == 0:
        raise DegenerateGeometryError("chord endpoint aligned with the base point")
    dx = X[0] - Q.s
    dy = X[1] - Q.q
    if side > 0:
        ray = (-dy, dx)  # i * (X - Q)
    else:
        ray = (dy, -dx)  # i * (Q - X)
    lo = anchor.shift(-1)
    hi = anchor.shift(1)
    picked = None
    for n in (0, 2):
        cand = LiftedPhase(n, ray)
        if lo.compare(cand) < 0 and cand.compare(hi) < 0:
            if picked is not None:
                raise DegenerateGeometryError("ambiguous endpoint lift window")
            picked = cand
    if picked is None:
        raise DegenerateGeometryError("endpoint lift fell on the window boundary")
    return picked


def phase_bound_interval(P: StabPoint, Q: StabPoint, v: VTilde) -> PhaseInterval:
    """Exact lifted window [phi_Q(A), phi_Q(B)] for factors deformed P -> Q.

    A and B are the parabola intersections of the line through v's plane
    point and P; their phases at Q are lifted through a rotation of less
    than a half turn from the anchor phase of v at P.
    """
    if v.is_zero:
        raise ZeroChargeError("zero character has no phase interval")
    zP = _charge(P.s, P.q, v)
    if zP[0] == 0 and zP[1] == 0:
        raise PreconditionError("character plane point coincides with P")
    Xv = v.plane_point()
    L = line_through(Xv, P.plane_point())
    pts = line_parabola_intersect(L, ParabolaShift(Fraction(0)))
    if len(pts) != 2:
        raise DegenerateGeometryError(
            "chord line is tangent to or misses the parabola"
        )
    A, B = pts
    anchor = LiftedPhase(0, _ray_of(*zP))
    lam_A = _endpoint_lift(A, P, Q, zP, anchor)
    lam_B = _endpoint_lift(B, P, Q, zP, anchor)
    degenerate = None
    if not Xv.at_infinity:
        if A[0] == Xv.x and A[1] == Xv.y:
            degenerate = "A"
        elif B[0] == Xv.x and B[1] == Xv.y:
            degenerate = "B"
    if lam_A.compare(lam_B) <= 0:
        lo, hi = lam_A, lam_B
        labels = {"lo": "A", "hi": "B"}
    else:
        lo, hi = lam_B, lam_A
        labels = {"lo": "B", "hi": "A"}
    return PhaseInterval(
        lo=lo,
        hi=hi,
        labels=labels,
        Q=Q,
        A=A,
        B=B,
        chord=L,
        anchor=anchor,
        degenerate_endpoint=degenerate,
    )


# ---------------------------------------------------------------------------
# destabilization-path simulation
# ---------------------------------------------------------------------------


@dataclass
class SplitPair:
    w: VTilde
    u: VTilde
    w_node: "PathNode"
    u_node: "PathNode"

    def to_dict(self) -> dict:
        return {
            "w": self.w.to_list(),
            "u": self.u.to_list(),
            "w_node": self.w_node.to_dict(),
            "u_node": self.u_node.to_dict(),
        }


@dataclass
class PathEvent:
    t: Fraction
    R: StabPoint
    wall: PlaneLine
    splits: list

    def to_dict(self) -> dict:
        return {
            "t": str(self.t),
            "R": self.R.to_dict(),
            "wall": [str(c) for c in self.wall.coeffs],
            "splits": [s.to_dict() for s in self.splits],
        }


@dataclass
class PathNode:
    char: VTilde
    t_start: Fraction
    entry_lift: LiftedPhase
    leaf_lift: LiftedPhase
    events: list

    def to_dict(self) -> dict:
        return {
            "char": self.char.to_list(),
            "t_start": str(self.t_start),
            "leaf_lift": self.leaf_lift.to_dict(),
            "events": [e.to_dict() for e in self.events],
        }


def collect_leaves(node: PathNode):
    """Every node doubles as a leaf: its character carried through to Q."""
    out = [(node.char, node.leaf_lift)]
    for ev in node.events:
        for sp in ev.splits:
            out.extend(collect_leaves(sp.w_node))
            out.extend(collect_leaves(sp.u_node))
    return out


def simulate_destabilization_paths(
    P: StabPoint, Q: StabPoint, v: VTilde, bounds, L: SurfaceLattice
) -> PathNode:
    """Walk the parameter segment and branch at strict wall crossings.

    At each candidate wall crossed transversally, the walked character is
    split into every two-term integral decomposition whose parts sit on
    the same charge ray with strict ratio in (0, 1) at the crossing; both
    parts recurse toward Q.  Lifts are transported exactly; each node also
    reports its own lift at Q (characters that happen not to destabilize
    keep walking).  Termination: each split strictly decreases the
    discriminant, which lives on a fixed rational grid and stays >= 0.
    """
    bounds = EnumerationBounds.coerce(bounds)
    if v.is_zero:
        raise ZeroChargeError("zero character cannot be walked")
    z0 = _charge(P.s, P.q, v)
    if z0[0] == 0 and z0[1] == 0:
        raise PreconditionError("character charge vanishes at the start point")
    memo = {}

    def build(char: VTilde, t0: Fraction, entry: LiftedPhase) -> PathNode:
        key = (char.as_tuple(), t0, entry.n)
        hit = memo.get(key)
        if hit is not None:
            return hit
        start = segment_point(P, Q, t0)
        z_end = _charge(Q.s, Q.q, char)
        leaf = entry.transport(_ray_of(*z_end))
        events = []
        for cand in enumerate_candidate_walls(
            char, SegmentRegion(start, Q), bounds.rank_bound, bounds.c1_bound, L
        ):
            f0 = _line_eval(cand.wall, start.s, start.q)
            f1 = _line_eval(cand.wall, Q.s, Q.q)
            if f0 * f1 >= 0:
                continue  # strict transversal crossings only
            t_local = Fraction(f0, f0 - f1)
            t_star = t0 + t_local * (1 - t0)
            R = segment_point(P, Q, t_star)
            zR = _charge(R.s, R.q, char)
            lift_R = entry.transport(_ray_of(*zR))
            splits = []
            seen = set()
            for w in cand.witnesses:
                ratio = _ratio_at(R.s, R.q, char, w)
                if ratio is None or not (0 < ratio < 1):
                    continue
                u = char - w
                pair_key = tuple(sorted((w.as_tuple(), u.as_tuple())))
                if pair_key in seen:
                    continue
                seen.add(pair_key)
                zw = _charge(R.s, R.q, w)
                zu = (zR[0] - zw[0], zR[1] - zw[1])
                w_node = build(w, t_star, LiftedPhase(lift_R.n, _ray_of(*zw)))
                u_node = build(u, t_star, LiftedPhase(lift_R.n, _ray_of(*zu)))
                splits.append(SplitPair(w, u, w_node, u_node))
            if splits:
                events.append(PathEvent(t_star, R, cand.wall, splits))
        events.sort(key=lambda e: (e.t, e.wall.coeffs))
        node = PathNode(char, t0, entry, leaf, events)
        memo[key] = node
        return node

    return build(v, Fraction(0), LiftedPhase(0, _ray_of(*z0)))


# ---------------------------------------------------------------------------
# Ext2-vanishing certificate
# ---------------------------------------------------------------------------


@dataclass
class Ext2Certificate:
    branch: str
    data: dict
    inner: Optional["Ext2Certificate"] = None

    def to_dict(self) -> dict:
        out = {"branch": self.branch, "data": self.data}
        if self.inner is not None:
            out["inner"] = self.inner.to_dict()
        return out


def dual_reduce(ch: CharVec, D, s: Fraction):
    """Involutive mirror (ch, D, s) -> ((r, -c1, e), -D, -s)."""
    return derived_dual(ch), -D, -s


def expected_moduli_dim(ch: CharVec, L: SurfaceLattice) -> Fraction:
    """1 - chi(ch, ch): tangent dimension of the moduli stack, verbatim."""
    return 1 - euler_pairing(ch, ch, L)


def _pt_json(xy) -> list:
    return [quad_to_json(xy[0]), quad_to_json(xy[1])]


def _fail(message: str, payload: dict):
    raise CertificateFailure(message, payload)


def ext2_vanishing_certificate(
    P: StabPoint, v: VTilde, ch: CharVec, L: SurfaceLattice
) -> Ext2Certificate:
    """Geometric witness that the twisted-endomorphism Hom space vanishes.

    Left branch (P strictly left of v's plane point, or rank zero):
    translate the parameter left along its parabola by (H.K)/(H.H), tensor
    the character by the canonical class, and compare chords: if the two
    chords meet, the strict lifted phase inequality at the witness closes
    the argument; otherwise the twisted phase must sit strictly below the
    whole phase-bound interval.  Right branch: mirror through the derived
    dual (s, D flip) and recurse.  Boundary case: perturb sideways and
    recurse nearby.  A failed inequality raises CertificateFailure with a
    counterexample payload.
    """
    if not L.poisson_mode:
        raise PreconditionError("surface is not in the anticanonical regime (H.K >= 0)")
    if vtilde(ch, L) != v:
        raise PreconditionError("character projection does not match v")
    if heart_sign_check(P, v) is HeartPosition.Fails:
        raise PreconditionError("character fails the heart sign test at P")
    if discriminant(v) < 0:
        raise PreconditionError("character has negative discriminant")

    if v.v0 != 0:
        x_v = v.v1 / v.v0
        if P.s == x_v:
            return _nearby_certificate(P, v, ch, L)
        if P.s > x_v:
            return _dual_certificate(P, v, ch, L)
    return _left_certificate(P, v, ch, L)


def _nearby_certificate(P, v, ch, L) -> Ext2Certificate:
    # boundary alignment: nudge sideways, direction set by the rank sign
    step = Fraction(-1) if v.v0 > 0 else Fraction(1)
    eps = Fraction(1)
    while True:
        s2 = P.s + step * eps
        if 2 * P.q > s2 * s2:
            P2 = StabPoint(s2, P.q)
            break
        eps /= 2
    inner = ext2_vanishing_certificate(P2, v, ch, L)
    data = {"P": P.to_dict(), "P_perturbed": P2.to_dict(), "v": v.to_list()}
    return Ext2Certificate("NearbyStability", data, inner)


def _dual_certificate(P, v, ch, L) -> Ext2Certificate:
    ch2, D2, s2 = dual_reduce(ch, L.D, P.s)
    L2 = SurfaceLattice(L.basis, L.gram, L.H, D2, L.K, L.chiO)
    P2 = StabPoint(s2, P.q)
    v2 = vtilde(ch2, L2)
    negated = False
    if heart_sign_check(P2, v2) is HeartPosition.Fails:
        ch2, v2, negated = -ch2, -v2, True
    inner = ext2_vanishing_certificate(P2, v2, ch2, L2)
    data = {
        "P": P.to_dict(),
        "P_mirror": P2.to_dict(),
        "v": v.to_list(),
        "v_mirror": v2.to_list(),
        "shift_normalized": negated,
    }
    return Ext2Certificate("DualReduction", data, inner)


def _left_certificate(P, v, ch, L) -> Ext2Certificate:
    HH = L.pair(L.H, L.H)
    HK = L.pair(L.H, L.K)
    delta = HK / HH
    Qpt = parabola_translate(P.plane_point(), delta)
    Q = StabPoint(Qpt.x, Qpt.y)
    chK = tensor_by_K(ch, L)
    vK = vtilde(chK, L)

    base = {
        "P": P.to_dict(),
        "Q": Q.to_dict(),
        "v": v.to_list(),
        "vK": vK.to_list(),
    }
    if vK.is_zero:
        _fail("twisted character vanishes", base)

    Xv = v.plane_point()
    XvK = vK.plane_point()
    chord1 = line_through(Xv, P.plane_point())
    pts1 = line_parabola_intersect(chord1, ParabolaShift(Fraction(0)))
    if len(pts1) != 2:
        _fail("character chord degenerates (vertical or tangent)", base)
    if Xv == XvK:
        _fail("twist does not move the plane point", base)
    chord2 = line_through(XvK, Qpt)
    pts2 = line_parabola_intersect(chord2, ParabolaShift(Fraction(0)))
    if len(pts2) != 2:
        _fail("twisted chord degenerates (vertical or tangent)", base)
    A, B = pts1
    A2, B2 = pts2
    data = dict(base)
    data.update(
        {"A": _pt_json(A), "B": _pt_json(B), "Ap": _pt_json(A2), "Bp": _pt_json(B2)}
    )

    zP = _charge(P.s, P.q, v)
    zQK = _charge(Q.s, Q.q, vK)
    if zQK == (0, 0):
        _fail("twisted charge vanishes at the translated parameter", data)

    if chord1 == chord2:
        lo = A[0] if A[0] >= A2[0] else A2[0]
        hi = B[0] if B[0] <= B2[0] else B2[0]
        overlap = (hi - lo).sign()
        if overlap > 0:
            rx = rational_strictly_between(lo, hi)
            ry = chord1.slope() * rx + chord1.y_intercept()
            return _segments_branch(P, Q, v, vK, zP, zQK, (rx, ry), data)
        if overlap == 0:
            _fail("chords touch only on the parabola", data)
        return _dominance_branch(P, Q, v, vK, zQK, data)

    R = line_intersection(chord1, chord2)
    if not R.at_infinity:
        side = 2 * R.y - R.x * R.x
        if side > 0:
            return _segments_branch(P, Q, v, vK, zP, zQK, (R.x, R.y), data)
        if side == 0:
            _fail("chords touch only on the parabola", data)
    return _dominance_branch(P, Q, v, vK, zQK, data)


def _segments_branch(P, Q, v, vK, zP, zQK, R, data) -> Ext2Certificate:
    rs, rq = R
    zRv = _charge(rs, rq, v)
    zRk = _charge(rs, rq, vK)
    if zRv == (0, 0) or zRk == (0, 0):
        _fail("a charge vanishes at the chord intersection", data)
    lam_v = LiftedPhase(0, _ray_of(*zP)).transport(_ray_of(*zRv))
    lam_k = LiftedPhase(0, _ray_of(*zQK)).transport(_ray_of(*zRk))
    data = dict(data)
    data.update(
        {
            "R": {"s": str(rs), "q": str(rq)},
            "phase_at_R": lam_v.to_dict(),
            "twisted_phase_at_R": lam_k.to_dict(),
        }
    )
    if lam_v.compare(lam_k) > 0:
        return Ext2Certificate("SegmentsIntersect", data)
    _fail("phase inequality fails at the chord intersection", data)


def _dominance_branch(P, Q, v, vK, zQK, data) -> Ext2Certificate:
    interval = phase_bound_interval(P, Q, v)
    lam_k = LiftedPhase(0, _ray_of(*zQK))
    data = dict(data)
    data.update(
        {
            "interval": interval.to_dict(),
            "twisted_phase": lam_k.to_dict(),
        }
    )
    if lam_k.compare(interval.lo) < 0:
        return Ext2Certificate("PhaseDominance", data)
    _fail("twisted phase does not sit below the interval", data)
