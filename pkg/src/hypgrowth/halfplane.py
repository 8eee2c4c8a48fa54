"""Upper half-plane model: points, geodesics, horoballs, and framed numerics.

Points are complex numbers with positive imaginary part.  Configurations that
reach arc-length coordinates of several hundred (long polygon sides) are not
faithfully representable by raw coordinates, so paths, and optionally points,
carry a *frame*: a real 2x2 matrix F with det F = 1, under the convention

    point(F) = F(i),        path(F): t -> F(i e^t)   (unit speed).

Every distance between framed objects reduces to the four-term identity

    cosh d(F1(i e^s), F2(i e^t))
        = (w11^2 e^(t-s) + w12^2 e^(-s-t) + w21^2 e^(s+t) + w22^2 e^(s-t)) / 2

with W = F1^-1 F2.  The right side is a sum of nonnegative terms, so it is
evaluated in log space with no cancellation and stays accurate at any depth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, PreconditionError

LN2 = math.log(2.0)
INF = math.inf

# ---------------------------------------------------------------------------
# plain-coordinate layer


def h2_distance(a, b):
    """Hyperbolic distance; accepts complex scalars or ndarrays.

    Uses 2*asinh(|a-b| / (2 sqrt(Im a) sqrt(Im b))), which is stable for both
    tiny and large separations (square roots are taken separately so heights
    down to ~1e-300 do not underflow in the product).
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    out = 2.0 * np.arcsinh(np.abs(a - b) / (2.0 * np.sqrt(a.imag) * np.sqrt(b.imag)))
    return float(out) if out.ndim == 0 else out


def check_point(z) -> complex:
    if isinstance(z, FramePoint):
        return z
    z = complex(z)
    if not (z.imag > 0.0) or not math.isfinite(z.imag) or not math.isfinite(z.real):
        raise InvalidInputError(f"not an upper half-plane point: {z!r}")
    return z


def mobius_point(mat, z: complex) -> complex:
    """Apply a real 2x2 matrix to a point by fractional linear action."""
    a, b = mat[0][0], mat[0][1]
    c, d = mat[1][0], mat[1][1]
    return (a * z + b) / (c * z + d)


def mobius_ideal(mat, x) -> float:
    """Apply a real 2x2 matrix to a boundary point (real number or inf)."""
    a, b = mat[0][0], mat[0][1]
    c, d = mat[1][0], mat[1][1]
    if math.isinf(x):
        return a / c if c != 0.0 else INF
    den = c * x + d
    if den == 0.0:
        return INF
    return (a * x + b) / den


# ---------------------------------------------------------------------------
# frames


def rotation(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, s], [-s, c]])


def translation(length: float) -> np.ndarray:
    h = 0.5 * length
    return np.array([[math.exp(h), 0.0], [0.0, math.exp(-h)]])


_FLIP = np.array([[0.0, 1.0], [-1.0, 0.0]])  # i e^t -> i e^-t


def frame_inv(F: np.ndarray) -> np.ndarray:
    # det F = 1 by construction, so the adjugate is the inverse
    return np.array([[F[1, 1], -F[0, 1]], [-F[1, 0], F[0, 0]]])


def frame_of_point(z: complex) -> np.ndarray:
    s = math.sqrt(z.imag)
    return np.array([[s, z.real / s], [0.0, 1.0 / s]])


def frame_at(z: complex, heading: float) -> np.ndarray:
    """Frame at z whose forward geodesic leaves in Euclidean direction `heading`."""
    # a rotation by phi about i turns the tangent by 2*phi
    return frame_of_point(z) @ rotation(0.5 * (heading - 0.5 * math.pi))


def apply_frame(F: np.ndarray, tau):
    """F(i e^tau), vectorized over tau; safe for |tau| up to ~700."""
    A, B, C, D = F[0, 0], F[0, 1], F[1, 0], F[1, 1]
    tau = np.asarray(tau, dtype=float)
    u = np.exp(-np.abs(tau))
    pos = tau >= 0
    # num/den scaled by e^{-2 tau} for tau >= 0, e^{+2 tau} handled via u = e^{tau}
    num_re = np.where(pos, B * D * u * u + A * C, B * D + A * C * u * u)
    den = np.where(pos, D * D * u * u + C * C, D * D + C * C * u * u)
    out = (num_re + 1j * u) / den
    return complex(out) if out.ndim == 0 else out


def heading_towards(a: complex, b: complex) -> float:
    """Euclidean direction at a of the geodesic from a to b (moderate scale)."""
    if a == b:
        raise InvalidInputError("heading undefined for coincident points")
    if a.real == b.real:
        return 0.5 * math.pi if b.imag > a.imag else -0.5 * math.pi
    c = (abs(b) ** 2 - abs(a) ** 2) / (2.0 * (b.real - a.real))
    v = 1j * (a - c)  # Re(v) = -Im(a) < 0, so v points toward decreasing Re
    if b.real > a.real:
        v = -v
    return math.atan2(v.imag, v.real)


class WalkAtlas:
    """Chart chain for a frame walk.

    Absolute frames of deep configurations saturate: the relative matrix of
    two such frames is no longer recoverable from their rounded entries.  The
    atlas instead keeps the moderate step matrices of the walk, and transfers
    between charts by multiplying steps in order, which stays accurate as
    long as the walk is quasi-geodesic (no deep backtracking).
    """

    __slots__ = ("anchor", "steps")

    def __init__(self, anchor_frame: np.ndarray):
        self.anchor = anchor_frame
        self.steps = []

    def extend(self, step: np.ndarray) -> int:
        """Append a step; returns the new chart index."""
        self.steps.append(step)
        return len(self.steps)

    def accumulate(self, M: np.ndarray, c1: int, c2: int) -> np.ndarray:
        """M @ (transfer from chart c1 to chart c2), multiplied step by step."""
        if c1 <= c2:
            for k in range(c1, c2):
                M = M @ self.steps[k]
        else:
            for k in range(c1 - 1, c2 - 1, -1):
                M = M @ frame_inv(self.steps[k])
        return M

    def absolute(self, chart: int) -> np.ndarray:
        return self.accumulate(self.anchor, 0, chart)


@dataclass(frozen=True)
class FramePoint:
    """A point carried together with a det-1 frame; point = frame(i).

    Atlas-backed points store the frame relative to their chart, so pairwise
    quantities between points of one walk are computed without touching the
    (possibly saturated) absolute frames.
    """

    frame: np.ndarray
    atlas: object = None
    chart: int = 0

    def absolute_frame(self) -> np.ndarray:
        if self.atlas is None:
            return self.frame
        return self.atlas.absolute(self.chart) @ self.frame

    @property
    def z(self) -> complex:
        return apply_frame(self.absolute_frame(), 0.0)

    def advanced(self, length: float) -> "FramePoint":
        if self.atlas is None:
            return FramePoint(self.frame @ translation(length))
        chart = self.atlas.extend(self.frame @ translation(length))
        return FramePoint(np.eye(2), self.atlas, chart)

    def turned(self, angle: float) -> "FramePoint":
        if self.atlas is None:
            return FramePoint(self.frame @ rotation(0.5 * angle))
        return FramePoint(self.frame @ rotation(0.5 * angle), self.atlas, self.chart)


def as_frame(p) -> np.ndarray:
    if isinstance(p, FramePoint):
        return p.absolute_frame()
    return frame_of_point(check_point(p))


def _atlas_of(obj):
    return getattr(obj, "atlas", None)


def relative_frame(obj1, obj2) -> np.ndarray:
    """F1^-1 F2 for two framed objects (FramePoint or H2Path).

    Objects sharing an atlas are related through the chart chain; otherwise
    the absolute frames are used directly (adequate at moderate depth)."""
    a1, a2 = _atlas_of(obj1), _atlas_of(obj2)
    if a1 is not None and a1 is a2:
        M = frame_inv(obj1.frame)
        M = a1.accumulate(M, obj1.chart, obj2.chart)
        return M @ obj2.frame
    F1 = obj1.absolute_frame() if isinstance(obj1, FramePoint) else _abs_path_frame(obj1)
    F2 = obj2.absolute_frame() if isinstance(obj2, FramePoint) else _abs_path_frame(obj2)
    return frame_inv(F1) @ F2


def _abs_path_frame(path) -> np.ndarray:
    if path.atlas is None:
        return path.frame
    return path.atlas.absolute(path.chart) @ path.frame


# ---------------------------------------------------------------------------
# four-term framed distance


def _log_sq(x: float) -> float:
    return 2.0 * math.log(abs(x)) if x != 0.0 else -INF


def frame_coeffs(W: np.ndarray):
    """Log-squared entries of a relative frame matrix, for the 4-term formula."""
    return (_log_sq(W[0, 0]), _log_sq(W[0, 1]), _log_sq(W[1, 0]), _log_sq(W[1, 1]))


def coeff_distance(logs, s, t):
    """d(F1(i e^s), F2(i e^t)) from frame_coeffs(F1^-1 F2); vectorized."""
    l11, l12, l21, l22 = logs
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    lc = np.logaddexp(
        np.logaddexp(l11 + (t - s), l12 - (s + t)),
        np.logaddexp(l21 + (s + t), l22 + (s - t)),
    ) - LN2
    out = _acosh_from_log(lc)
    return float(out) if out.ndim == 0 else out


def coeff_foot(logs, s):
    """Parameter on path 2 nearest to path 1's point at parameter s."""
    l11, l12, l21, l22 = logs
    s = np.asarray(s, dtype=float)
    out = 0.5 * (np.logaddexp(l12 - s, l22 + s) - np.logaddexp(l11 - s, l21 + s))
    return float(out) if out.ndim == 0 else out


def _acosh_from_log(lc):
    """arccosh(x) given lc = ln(x); switches to lc + ln 2 once exact."""
    lc = np.asarray(lc, dtype=float)
    small = lc < 30.0
    x = np.maximum(np.exp(np.where(small, lc, 0.0)), 1.0)
    return np.where(small, np.arccosh(x), lc + LN2)


def frame_distance(F1: np.ndarray, F2: np.ndarray) -> float:
    W = frame_inv(F1) @ F2
    return float(coeff_distance(frame_coeffs(W), 0.0, 0.0))


def point_distance(a, b) -> float:
    """Distance between two points, either raw complex or FramePoint."""
    if isinstance(a, FramePoint) or isinstance(b, FramePoint):
        if isinstance(a, FramePoint) and isinstance(b, FramePoint):
            W = relative_frame(a, b)
            return float(coeff_distance(frame_coeffs(W), 0.0, 0.0))
        return frame_distance(as_frame(a), as_frame(b))
    return h2_distance(check_point(a), check_point(b))


def _log_cosh(t):
    """ln cosh t, stable for any magnitude."""
    t = np.abs(np.asarray(t, dtype=float))
    big = t > 20.0
    safe = np.where(big, 0.0, t)
    return np.where(big, t - LN2 + np.log1p(np.exp(-2.0 * t)),
                    np.log(np.cosh(safe)))


def point_segment_distance(u, v, L):
    """Distance to a geodesic segment from the two endpoint distances u, v
    and the segment length L; vectorized and log-domain stable.

    Uses the right-triangle relation cosh(dist to line) = cosh u / cosh x
    where x solves cosh(L-x)/cosh x = cosh v / cosh u; a foot outside [0, L]
    clamps to the nearer endpoint.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    lcu, lcv, lcL = _log_cosh(u), _log_cosh(v), _log_cosh(L)
    R = lcv - lcu
    # interior foot: x = (ln 2 sinh L - ln(e^R - e^-L)) / 2
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        ln_2sinhL = L + np.log1p(-np.exp(-2.0 * np.asarray(L, dtype=float)))
        ln_num = R + np.log1p(-np.exp(-(np.asarray(L, dtype=float) + R)))
        x = 0.5 * (ln_2sinhL - ln_num)
        h = _acosh_from_log(np.maximum(lcu - _log_cosh(x), 0.0))
    out = np.where(R >= lcL, u, np.where(R <= -lcL, v, h))
    return float(out) if out.ndim == 0 else out


def kak(M: np.ndarray):
    """Cartan decomposition M = K1 @ translation(d) @ K2; returns (K1, d).

    K1's first column is the top eigenvector of M M^T, which is stable even
    when the singular values are e^(+-d/2) with d in the hundreds.
    """
    B = M @ M.T
    p, q, r = B[0, 0], B[0, 1], B[1, 1]
    d = float(_acosh_from_log(math.log(max(0.5 * (p + r), 1.0))))
    phi = 0.5 * math.atan2(2.0 * q, p - r)
    c, s = math.cos(phi), math.sin(phi)
    K1 = np.array([[c, -s], [s, c]])
    return K1, d


# ---------------------------------------------------------------------------
# paths


@dataclass(frozen=True)
class H2Path:
    """Unit-speed geodesic path t -> frame(i e^t) on the domain [lo, hi].

    Arc-length access (`point_at`) measures from the `lo` end; absolute
    parameter access (`at_param`) is used for bi-infinite paths.  Paths built
    inside a frame walk carry the walk's atlas and chart.
    """

    frame: np.ndarray
    lo: float
    hi: float
    atlas: object = None
    chart: int = 0

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def absolute_frame(self) -> np.ndarray:
        return _abs_path_frame(self)

    @property
    def start(self) -> complex:
        return apply_frame(self.absolute_frame(), self.lo)

    @property
    def end(self) -> complex:
        return apply_frame(self.absolute_frame(), self.hi)

    @property
    def forward_ideal(self) -> float:
        return mobius_ideal(self.absolute_frame(), INF)

    @property
    def backward_ideal(self) -> float:
        return mobius_ideal(self.absolute_frame(), 0.0)

    def at_param(self, tau):
        return apply_frame(self.absolute_frame(), tau)

    def point_at(self, t):
        if not math.isfinite(self.lo):
            raise InvalidInputError("arc-length access needs a finite start; use at_param")
        return apply_frame(self.absolute_frame(), self.lo + np.asarray(t, dtype=float))

    def frame_point_at(self, t: float) -> FramePoint:
        return FramePoint(self.frame @ translation(self.lo + t), self.atlas, self.chart)

    def subpath(self, tau0: float, tau1: float) -> "H2Path":
        return H2Path(self.frame, tau0, tau1, self.atlas, self.chart)

    def shifted(self, tau_center: float) -> "H2Path":
        """Reparameterize so that absolute parameter 0 sits at tau_center."""
        return H2Path(self.frame @ translation(tau_center),
                      self.lo - tau_center, self.hi - tau_center,
                      self.atlas, self.chart)

    def reverse(self) -> "H2Path":
        return H2Path(self.frame @ _FLIP, -self.hi, -self.lo,
                      self.atlas, self.chart)


def geodesic(a, b) -> H2Path:
    """Oriented geodesic segment from a to b, arc domain [0, d(a,b)].

    For atlas-backed endpoints the connecting frame comes from the Cartan
    decomposition of their relative matrix and lives in a's chart.
    """
    if isinstance(a, FramePoint) and isinstance(b, FramePoint):
        W = relative_frame(a, b)
        K1, d = kak(W)
        if d <= 0.0:
            raise InvalidInputError("geodesic endpoints coincide")
        return H2Path(a.frame @ K1, 0.0, d, a.atlas, a.chart)
    if isinstance(a, FramePoint) or isinstance(b, FramePoint):
        Fa, Fb = as_frame(a), as_frame(b)
        W = frame_inv(Fa) @ Fb
        K1, d = kak(W)
        if d <= 0.0:
            raise InvalidInputError("geodesic endpoints coincide")
        return H2Path(Fa @ K1, 0.0, d)
    a, b = check_point(a), check_point(b)
    if a == b:
        raise InvalidInputError("geodesic endpoints coincide")
    return H2Path(frame_at(a, heading_towards(a, b)), 0.0, h2_distance(a, b))


def ray(z: complex, xi: float) -> H2Path:
    """Geodesic ray from z toward the ideal point xi (real number or inf)."""
    z = check_point(z)
    if math.isinf(xi):
        heading = 0.5 * math.pi
    elif z.real == xi:
        heading = -0.5 * math.pi
    else:
        c = (abs(z) ** 2 - xi * xi) / (2.0 * (z.real - xi))
        v = 1j * (z - c)
        if xi > z.real:
            v = -v
        heading = math.atan2(v.imag, v.real)
    return H2Path(frame_at(z, heading), 0.0, INF)


def line(p: float, q: float) -> H2Path:
    """Bi-infinite geodesic from ideal point p (backward) to q (forward)."""
    if p == q:
        raise InvalidInputError("ideal endpoints coincide")
    if math.isinf(p) and math.isinf(q):
        raise InvalidInputError("ideal endpoints coincide at infinity")
    if math.isinf(q):
        F = np.array([[1.0, p], [0.0, 1.0]])
    elif math.isinf(p):
        F = np.array([[q, -1.0], [1.0, 0.0]])
    elif q > p:
        s = math.sqrt(q - p)
        F = np.array([[q / s, p / s], [1.0 / s, 1.0 / s]])
    else:
        s = math.sqrt(p - q)
        F = np.array([[q / s, -p / s], [1.0 / s, -1.0 / s]])
    return H2Path(F, -INF, INF)


# ---------------------------------------------------------------------------
# profiles used by the metric verifiers


def _clamped_params(path: H2Path, ts):
    return np.clip(path.lo + np.asarray(ts, dtype=float), path.lo, path.hi)


def pair_profile(p1: H2Path, p2: H2Path, ts):
    """d(p1(t), p2(t)) for matched arc parameters; paths stop at their ends."""
    logs = frame_coeffs(frame_inv(p1.frame) @ p2.frame)
    return coeff_distance(logs, _clamped_params(p1, ts), _clamped_params(p2, ts))


def segment_profile(path: H2Path, ts, seg: H2Path):
    """Distance from path(t) to the segment seg (foot clamped to seg's domain)."""
    logs = frame_coeffs(frame_inv(path.frame) @ seg.frame)
    s = _clamped_params(path, ts)
    foot = np.clip(coeff_foot(logs, s), seg.lo, seg.hi)
    return coeff_distance(logs, s, foot)


def point_profile(point, path: H2Path, ts):
    """Distances from a fixed point to path(t); vectorized over ts."""
    logs = frame_coeffs(frame_inv(as_frame(point)) @ path.frame)
    return coeff_distance(logs, 0.0, _clamped_params(path, ts))


def nearest_parameter(seg: H2Path, point) -> float:
    """Arc parameter (from seg's start) of the point on seg nearest to `point`."""
    logs = frame_coeffs(frame_inv(as_frame(point)) @ seg.frame)
    foot = float(np.clip(coeff_foot(logs, 0.0), seg.lo, seg.hi))
    return foot - seg.lo


# ---------------------------------------------------------------------------
# horofunctions and horoballs


def busemann(center, z) -> float:
    """Horofunction about the ideal point `center`, normalized to 0 on the
    unit horosphere about inf (and its Moebius transport for finite centers).

    Decreases at unit rate along geodesics into the center.
    """
    if isinstance(z, FramePoint):
        z = z.z
    z = check_point(z)
    if math.isinf(center):
        return -math.log(z.imag)
    # conjugate by z -> -1/(z - center), which sends center to inf
    return -math.log(z.imag) + 2.0 * math.log(abs(z - center))


@dataclass(frozen=True)
class Horoball:
    """Closed horoball about `center`: points with busemann <= -level.

    For center inf this is {Im z >= exp(level)}; larger level = deeper ball.
    """

    center: float
    level: float = 0.0

    def contains(self, z) -> bool:
        return busemann(self.center, z) <= -self.level

    def in_interior(self, z, tau: float = 0.0) -> bool:
        return busemann(self.center, z) < -self.level - tau

    def project_to_sphere(self, z: complex) -> complex:
        """Radial projection (along the geodesic to the center) onto the sphere."""
        z = check_point(z)
        if math.isinf(self.center):
            return complex(z.real, math.exp(self.level))
        M = ((0.0, -1.0), (1.0, -self.center))
        Minv = ((-self.center, 1.0), (-1.0, 0.0))
        w = mobius_point(M, z)
        return mobius_point(Minv, complex(w.real, math.exp(self.level)))


def horoball_contains(ball: Horoball, z) -> bool:
    return ball.contains(z)


@dataclass(frozen=True)
class PinchingConstants:
    """Curvature pinching -kappa^2 <= K <= -1; kappa = 1 for the half-plane."""

    kappa: float = 1.0

    def __post_init__(self):
        if not self.kappa >= 1.0:
            raise InvalidInputError("pinching constant must be >= 1")


@dataclass(frozen=True)
class HoroballCrossing:
    ball: Horoball
    t_enter: float
    t_exit: float
    arc_length: float


@dataclass(frozen=True)
class NeuteredReport:
    """Sandwich check d_X <= d_path <= sinh(kappa^2 d_X) for a detour path."""

    ambient: float
    path_length: float
    upper_bound: float
    crossings: tuple
    lower_ok: bool
    upper_ok: bool

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok


def _busemann_profile(ball: Horoball, pts):
    im = pts.imag
    if math.isinf(ball.center):
        return -np.log(im)
    return -np.log(im) + 2.0 * np.log(np.abs(pts - ball.center))


def _horocycle_arc(ball: Horoball, u: complex, v: complex) -> float:
    if math.isinf(ball.center):
        return abs(u.real - v.real) / math.exp(ball.level)
    M = ((0.0, -1.0), (1.0, -ball.center))
    return abs(mobius_point(M, u).real - mobius_point(M, v).real) / math.exp(ball.level)


def neutered_path_bound_check(a, b, horoballs, kappa=PinchingConstants(),
                              step: float = 1e-2, tau: float = 1e-9) -> NeuteredReport:
    """Upper-bound the neutered-space distance by detouring along horospheres.

    The geodesic [a, b] is followed; each sub-arc inside a horoball is replaced
    by the horocycle arc between its entry and exit points.  Both endpoints
    must lie outside every open horoball.
    """
    a, b = check_point(a), check_point(b)
    if isinstance(kappa, (int, float)):
        kappa = PinchingConstants(float(kappa))
    for ball in horoballs:
        if ball.in_interior(a, tau) or ball.in_interior(b, tau):
            raise PreconditionError("endpoint lies inside a horoball interior")
    d_amb = h2_distance(a, b)
    if not horoballs or d_amb == 0.0:
        bound = math.sinh(kappa.kappa ** 2 * d_amb)
        return NeuteredReport(d_amb, d_amb, bound, (), True, d_amb <= bound + tau)

    path = geodesic(a, b)
    n = max(int(math.ceil(d_amb / step)) + 1, 9)
    ts = np.linspace(0.0, d_amb, n)
    pts = path.point_at(ts)

    crossings = []
    for ball in horoballs:
        prof = _busemann_profile(ball, pts) + ball.level
        inside = prof < -1e-12
        if not inside.any():
            continue
        runs = _true_runs(inside)
        for i0, i1 in runs:
            t_in = 0.0 if i0 == 0 else _bisect_crossing(path, ball, ts[i0 - 1], ts[i0], tau)
            t_out = d_amb if i1 == n - 1 else _bisect_crossing(path, ball, ts[i1 + 1], ts[i1], tau)
            u = path.point_at(t_in)
            v = path.point_at(t_out)
            crossings.append(HoroballCrossing(ball, t_in, t_out, _horocycle_arc(ball, u, v)))

    crossings.sort(key=lambda c: c.t_enter)
    for c0, c1 in zip(crossings, crossings[1:]):
        if c1.t_enter < c0.t_exit - tau:
            raise InvalidInputError("horoballs overlap along the geodesic; "
                                    "the system must be pairwise disjoint")

    d_path = 0.0
    cursor = 0.0
    for c in crossings:
        d_path += max(c.t_enter - cursor, 0.0) + c.arc_length
        cursor = c.t_exit
    d_path += max(d_amb - cursor, 0.0)

    k2 = kappa.kappa ** 2
    bound = math.sinh(k2 * d_amb) if k2 * d_amb < 700 else INF
    return NeuteredReport(d_amb, d_path, bound, tuple(crossings),
                          d_amb <= d_path + tau, d_path <= bound + tau)


def _true_runs(mask):
    runs = []
    start = None
    for i, flag in enumerate(mask):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(mask) - 1))
    return runs


def _bisect_crossing(path: H2Path, ball: Horoball, t_out: float, t_in: float,
                     tau: float) -> float:
    """Bisect for the horosphere crossing between an outside and an inside t."""
    f = lambda t: busemann(ball.center, path.point_at(t)) + ball.level
    for _ in range(80):
        mid = 0.5 * (t_out + t_in)
        if abs(t_in - t_out) < tau:
            break
        if f(mid) < 0.0:
            t_in = mid
        else:
            t_out = mid
    return 0.5 * (t_out + t_in)


def ambient_distance_floor(d_path: float, kappa=PinchingConstants()) -> float:
    """Invert the distortion bound: a lower bound on ambient distance given a
    neutered path length.  Monotone increasing and unbounded."""
    if isinstance(kappa, (int, float)):
        kappa = PinchingConstants(float(kappa))
    if d_path < 0:
        raise InvalidInputError("path length must be nonnegative")
    return math.asinh(d_path) / kappa.kappa ** 2


# ---------------------------------------------------------------------------
# the model-space facade used by the metric verifiers


class HalfPlane:
    """Model-space adapter: distance, geodesics, and sampled profiles."""

    name = "H2"

    @staticmethod
    def check_point(p):
        return check_point(p)

    @staticmethod
    def distance(a, b) -> float:
        return point_distance(a, b)

    @staticmethod
    def geodesic(a, b) -> H2Path:
        return geodesic(a, b)

    @staticmethod
    def pair_profile(p1: H2Path, p2: H2Path, ts):
        return pair_profile(p1, p2, ts)

    @staticmethod
    def segment_profile(path: H2Path, ts, seg: H2Path):
        return segment_profile(path, ts, seg)

    @staticmethod
    def point_profile(point, path: H2Path, ts):
        return point_profile(point, path, ts)

    @staticmethod
    def nearest_parameter(seg: H2Path, point) -> float:
        return nearest_parameter(seg, point)

    @staticmethod
    def grid_step(step: float) -> float:
        return step


HALF_PLANE = HalfPlane()
