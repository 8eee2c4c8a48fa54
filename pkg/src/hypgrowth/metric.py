"""Model-agnostic metric verifiers: Gromov products, hyperbolicity defects,
thin-triangle / fellow-traveller / polygon inequality checks.

Every operation is a pure function of a MetricContext (model space plus the
configured delta, sampling step and strictness margin tau) and its points.
Suprema over continuous paths are approximated on grids of spacing <= step;
each bound assertion therefore carries a 2*step discretization slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import Config
from .errors import DegenerateTriangleError, InvalidInputError, PreconditionError


@dataclass(frozen=True)
class MetricContext:
    """A model space together with the constants every verifier reads."""

    space: object
    delta: float
    step: float = 1e-2
    tau: float = 1e-9

    def __post_init__(self):
        if not self.delta >= 0.0:
            raise InvalidInputError("delta must be nonnegative")
        if not self.step > 0.0:
            raise InvalidInputError("step must be positive")
        if not self.tau >= 0.0:
            raise InvalidInputError("tau must be nonnegative")

    @classmethod
    def from_config(cls, space, cfg: Config) -> "MetricContext":
        return cls(space=space, delta=cfg.delta, step=cfg.step, tau=cfg.tau)

    def grid(self, length: float):
        """Sample grid for [0, length] with spacing <= step, endpoints included."""
        h = self.space.grid_step(self.step)
        if length <= 0.0:
            return np.zeros(1)
        n = max(int(math.ceil(length / h)) + 1, 2)
        return np.linspace(0.0, length, n)


def _points(ctx: MetricContext, *pts):
    return tuple(ctx.space.check_point(p) for p in pts)


def gromov_product(ctx: MetricContext, x, y, base) -> float:
    """(x . y)_base = (|x-base| + |y-base| - |x-y|) / 2; clamped at 0."""
    x, y, base = _points(ctx, x, y, base)
    d = ctx.space.distance
    return max(0.5 * (d(x, base) + d(y, base) - d(x, y)), 0.0)


def four_point_defect(ctx: MetricContext, x, y, z, w) -> float:
    """Smallest delta making the four-point inequality hold for this quadruple
    with basepoint w: max(0, min((x.z)_w, (y.z)_w) - (x.y)_w)."""
    x, y, z, w = _points(ctx, x, y, z, w)
    gxy = gromov_product(ctx, x, y, w)
    gxz = gromov_product(ctx, x, z, w)
    gyz = gromov_product(ctx, y, z, w)
    return max(min(gxz, gyz) - gxy, 0.0)


@dataclass(frozen=True)
class Triangle:
    x: object
    y: object
    z: object

    def vertices(self):
        return (self.x, self.y, self.z)

    def sides(self, space):
        """Geodesic sides ([x,y], [y,z], [z,x]), oriented by first vertex."""
        return (space.geodesic(self.x, self.y),
                space.geodesic(self.y, self.z),
                space.geodesic(self.z, self.x))


def _require_distinct(ctx, *pairs):
    for u, v in pairs:
        if ctx.space.distance(u, v) <= ctx.tau:
            raise DegenerateTriangleError("triangle has coincident vertices")


def internal_vertices(ctx: MetricContext, tri: Triangle):
    """The three points of the inscribed (tripod) triangle.

    Returned in the order (opposite x, opposite y, opposite z): the point on
    [y,z] at distance (z.x)_y from y, on [z,x] at (x.y)_z from z, and on
    [x,y] at (y.z)_x from x.
    """
    x, y, z = _points(ctx, *tri.vertices())
    _require_distinct(ctx, (x, y), (y, z), (z, x))
    gx = gromov_product(ctx, y, z, x)
    gy = gromov_product(ctx, z, x, y)
    gz = gromov_product(ctx, x, y, z)
    opp_x = ctx.space.geodesic(y, z).point_at(gy)
    opp_y = ctx.space.geodesic(z, x).point_at(gz)
    opp_z = ctx.space.geodesic(x, y).point_at(gx)
    return opp_x, opp_y, opp_z


def thinness_defect(ctx: MetricContext, tri: Triangle) -> float:
    """max |s_y(t) - s_z(t)| over t in [0, (y.z)_x] for the two sides leaving x."""
    x, y, z = _points(ctx, *tri.vertices())
    _require_distinct(ctx, (x, y), (x, z))
    if ctx.space.distance(y, z) <= ctx.tau:
        return 0.0
    T = gromov_product(ctx, y, z, x)
    side_y = ctx.space.geodesic(x, y)
    side_z = ctx.space.geodesic(x, z)
    prof = ctx.space.pair_profile(side_y, side_z, ctx.grid(T))
    return float(np.max(prof))


def fellow_travel_defect(ctx: MetricContext, tri: Triangle, direction: str = "forward") -> float:
    """max matched-parameter separation of the two sides through x (forward)
    or of the reverse parameterizations from y and z; paths stop at their ends."""
    x, y, z = _points(ctx, *tri.vertices())
    _require_distinct(ctx, (x, y), (x, z))
    if direction == "forward":
        p1, p2 = ctx.space.geodesic(x, y), ctx.space.geodesic(x, z)
    elif direction == "reverse":
        p1, p2 = ctx.space.geodesic(y, x), ctx.space.geodesic(z, x)
    else:
        raise InvalidInputError(f"unknown direction: {direction!r}")
    ts = ctx.grid(max(p1.length, p2.length))
    prof = ctx.space.pair_profile(p1, p2, ts)
    return float(np.max(prof))


def biinfinite_fellow_travel_defect(ctx: MetricContext, g1, g2, c: float,
                                    horizon: Optional[float] = None) -> float:
    """max matched-parameter separation of two geodesics whose beginning and
    ending separations are at most c (within tau)."""
    T = min(g1.length, g2.length)
    if not math.isfinite(T):
        if horizon is None:
            raise InvalidInputError("infinite paths need an explicit horizon")
        T = horizon
    d0 = ctx.space.distance(g1.point_at(0.0), g2.point_at(0.0))
    t1 = min(T, g1.length)
    t2 = min(T, g2.length)
    d1 = ctx.space.distance(g1.point_at(t1), g2.point_at(t2))
    if d0 > c + ctx.tau or d1 > c + ctx.tau:
        raise PreconditionError("endpoint separations exceed c")
    prof = ctx.space.pair_profile(g1, g2, ctx.grid(T))
    return float(np.max(prof))


def obtuse_defect(ctx: MetricContext, tri: Triangle):
    """(length defect, (x.z)_y) for a triangle whose y-angle is obtuse.

    The obtuseness precondition is verified by sampled minimization: y must be
    the nearest sampled point to x on side [y,z], or the nearest to z on
    [y,x], up to one grid step.
    """
    x, y, z = _points(ctx, *tri.vertices())
    _require_distinct(ctx, (x, y), (y, z), (z, x))
    d = ctx.space.distance
    slack = ctx.space.grid_step(ctx.step) + ctx.tau

    side_yz = ctx.space.geodesic(y, z)
    prof1 = ctx.space.point_profile(x, side_yz, ctx.grid(side_yz.length))
    case1 = d(x, y) <= float(np.min(prof1)) + slack
    if not case1:
        side_yx = ctx.space.geodesic(y, x)
        prof2 = ctx.space.point_profile(z, side_yx, ctx.grid(side_yx.length))
        if not d(z, y) <= float(np.min(prof2)) + slack:
            raise PreconditionError("y-angle is not obtuse")
    length_defect = d(x, y) + d(y, z) - d(x, z)
    return length_defect, gromov_product(ctx, x, z, y)


@dataclass(frozen=True)
class PolygonReport:
    """polygon_check output.  Hypothesis failures make a rejection report, not
    an exception, so rejection sampling stays cheap."""

    n: int
    hypotheses_ok: bool
    failures: tuple
    side_lengths: tuple
    corner_products: tuple
    closing_length: Optional[float] = None
    length_defect: Optional[float] = None
    max_distance_to_closing: Optional[float] = None
    distance_bound: Optional[float] = None

    @property
    def passed(self) -> Optional[bool]:
        if not self.hypotheses_ok:
            return None
        return (self.length_defect <= 0.0
                and self.max_distance_to_closing <= self.distance_bound)


def polygon_check(ctx: MetricContext, points) -> PolygonReport:
    """Check the long-sided geodesic polygon inequality for 4 or 5 points.

    Hypotheses: consecutive sides longer than 180*delta and interior corner
    Gromov products at most 14*delta.  Conclusion: the polygonal line stays in
    the 28*delta-neighborhood of the closing side and the closing side is
    longer than the polyline length minus 168*delta.
    """
    pts = _points(ctx, *points)
    n = len(pts)
    if n not in (4, 5):
        raise InvalidInputError("polygon_check takes 4 or 5 points")
    d = ctx.space.distance
    dl = ctx.delta

    side_lengths = tuple(d(pts[i], pts[i + 1]) for i in range(n - 1))
    corner_products = tuple(gromov_product(ctx, pts[i - 1], pts[i + 1], pts[i])
                            for i in range(1, n - 1))
    failures = []
    for i, L in enumerate(side_lengths):
        if not L > 180.0 * dl:
            failures.append(f"side {i} too short: {L:.3f} <= {180 * dl:.3f}")
    for i, gp in enumerate(corner_products, start=1):
        if not gp <= 14.0 * dl:
            failures.append(f"corner {i} product too large: {gp:.3f} > {14 * dl:.3f}")
    if failures:
        return PolygonReport(n, False, tuple(failures), side_lengths, corner_products)

    closing = ctx.space.geodesic(pts[0], pts[-1])
    length_defect = (sum(side_lengths) - 168.0 * dl) - closing.length
    max_dist = 0.0
    for i in range(n - 1):
        side = ctx.space.geodesic(pts[i], pts[i + 1])
        prof = ctx.space.segment_profile(side, ctx.grid(side.length), closing)
        max_dist = max(max_dist, float(np.max(prof)))
    bound = 28.0 * dl + ctx.space.grid_step(ctx.step)
    return PolygonReport(n, True, (), side_lengths, corner_products,
                         closing.length, length_defect, max_dist, bound)


@dataclass(frozen=True)
class PentagonReport:
    fellow_travel: float
    lhs: float
    rhs: float

    @property
    def passed(self) -> bool:
        return self.lhs > self.rhs


def nearby_pentagon_check(ctx: MetricContext, points) -> PentagonReport:
    """Divergence check for geodesic pentagons with two short sides.

    Requires |x2-x3| <= 180*delta and |x4-x5| <= 180*delta; asserts
    |x1-x5| > |x1-x2| + |x3-x4| - 360*delta - 2*l0 - tau, where l0 is the
    380*delta fellow-travel time of [x2,x1] and [x3,x4].
    """
    pts = _points(ctx, *points)
    if len(pts) != 5:
        raise InvalidInputError("pentagon check takes 5 points")
    x1, x2, x3, x4, x5 = pts
    d = ctx.space.distance
    dl = ctx.delta
    if d(x2, x3) > 180.0 * dl or d(x4, x5) > 180.0 * dl:
        raise PreconditionError("short-side preconditions violated")
    g1 = ctx.space.geodesic(x2, x1)
    g2 = ctx.space.geodesic(x3, x4)
    ell0 = fellow_travel_time(ctx, g1, g2, 380.0 * dl)
    lhs = d(x1, x5)
    rhs = d(x1, x2) + d(x3, x4) - 360.0 * dl - 2.0 * ell0 - ctx.tau
    return PentagonReport(ell0, lhs, rhs)


def fellow_travel_time(ctx: MetricContext, g1, g2, eps: float,
                       horizon: Optional[float] = None) -> float:
    """Longest sampled interval on which |g1(t) - g2(t)| <= eps.

    Paths share the parameter domain truncated to the shorter; returns the
    full domain length exactly when the condition holds everywhere.
    """
    if not eps > 0.0:
        raise InvalidInputError("eps must be positive")
    T = min(g1.length, g2.length)
    if not math.isfinite(T):
        if horizon is None:
            raise InvalidInputError("infinite paths need an explicit horizon")
        T = horizon
    ts = ctx.grid(T)
    prof = ctx.space.pair_profile(g1, g2, ts)
    mask = prof <= eps
    if mask.all():
        return float(T)
    if not mask.any() or len(ts) < 2:
        return 0.0
    h = float(ts[1] - ts[0])
    best = run = 0
    for flag in mask:
        run = run + 1 if flag else 0
        best = max(best, run)
    return (best - 1) * h
