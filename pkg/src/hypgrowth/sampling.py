"""Seeded samplers for the randomized verifier suites.

Points in the half-plane are drawn hyperbolic-uniformly in geodesic polar
coordinates about i.  Long polygon configurations are built by frame walks
(advance along the current geodesic, turn, repeat), which keeps every derived
quantity accurate at depths where raw coordinates saturate.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .halfplane import FramePoint, frame_at, h2_distance
from .isometry import GeneratingSet, Isometry, compose, inverse
from .metric import MetricContext, Triangle, gromov_product, polygon_check


# ---------------------------------------------------------------------------
# half-plane point clouds


def ball_points(rng, n: int, radius: float):
    """n points hyperbolic-uniform in the radius ball about i, as complex."""
    u = rng.random(n)
    r = np.arccosh(1.0 + u * (np.cosh(radius) - 1.0))
    a = rng.random(n) * np.pi  # rotation angle th/2 with th uniform in [0, 2pi)
    z = 1j * np.exp(r)
    return (np.cos(a) * z + np.sin(a)) / (-np.sin(a) * z + np.cos(a))


def ball_point(rng, radius: float) -> complex:
    return complex(ball_points(rng, 1, radius)[0])


def four_point_defects(rng, n: int, radius: float):
    """Vectorized Monte-Carlo oracle: four-point defects of n random ordered
    quadruples in the radius ball of the half-plane."""
    x, y, z, w = (ball_points(rng, n, radius) for _ in range(4))
    dxw, dyw, dzw = h2_distance(x, w), h2_distance(y, w), h2_distance(z, w)
    dxy, dxz, dyz = h2_distance(x, y), h2_distance(x, z), h2_distance(y, z)
    gxy = 0.5 * (dxw + dyw - dxy)
    gxz = 0.5 * (dxw + dzw - dxz)
    gyz = 0.5 * (dyw + dzw - dyz)
    return np.maximum(np.minimum(gxz, gyz) - gxy, 0.0)


def empirical_delta(seed: int, samples: int, radius: float,
                    safety: float = 1.5, chunk: int = 1_000_000):
    """(sup defect, safety * sup) over `samples` quadruples; deterministic."""
    rng = np.random.default_rng(seed)
    sup = 0.0
    left = samples
    while left > 0:
        take = min(left, chunk)
        sup = max(sup, float(np.max(four_point_defects(rng, take, radius))))
        left -= take
    return sup, safety * sup


# ---------------------------------------------------------------------------
# tree sampling


def random_address(rng, max_depth: int, k: int = 3) -> tuple:
    depth = int(rng.integers(0, max_depth + 1))
    out = []
    prev = -1
    for _ in range(depth):
        step = int(rng.integers(0, k - 1 if prev >= 0 else k))
        letter = step if prev < 0 or step < prev else step + 1
        out.append(letter)
        prev = letter
    return tuple(out)


# ---------------------------------------------------------------------------
# triangles


def sample_triangle(rng, ctx: MetricContext, radius: float,
                    max_tries: int = 200) -> Triangle:
    """Random triangle in the radius ball, rejecting near-degenerate ones
    (a vertex within tau of the opposite side, detected by a vanishing
    Gromov product)."""
    floor = max(10.0 * ctx.tau, 1e-6)
    for _ in range(max_tries):
        x, y, z = (ball_point(rng, radius) for _ in range(3))
        try:
            products = (gromov_product(ctx, y, z, x),
                        gromov_product(ctx, z, x, y),
                        gromov_product(ctx, x, y, z))
        except Exception:
            continue
        sides = (ctx.space.distance(x, y), ctx.space.distance(y, z),
                 ctx.space.distance(z, x))
        if min(products) > floor and min(sides) > floor:
            return Triangle(x, y, z)
    raise RuntimeError("triangle sampler failed to find a nondegenerate triangle")


def sample_obtuse_triangle(rng, ctx: MetricContext, radius: float = 6.0) -> Triangle:
    """Triangle with an obtuse angle at y: two geodesic legs leaving y at an
    angle of at least pi/2 (plus a small margin)."""
    y = ball_point(rng, radius)
    th1 = rng.random() * 2.0 * math.pi
    gap = 0.5 * math.pi + 0.05 + rng.random() * (0.5 * math.pi - 0.1)
    th2 = th1 + gap
    l1 = 0.5 + rng.random() * 10.0
    l2 = 0.5 + rng.random() * 10.0
    x = FramePoint(frame_at(y, th1)).advanced(l1).z
    z = FramePoint(frame_at(y, th2)).advanced(l2).z
    return Triangle(x, y, z)


# ---------------------------------------------------------------------------
# frame-walk polygons


def _walk(rng, start: FramePoint, lengths, turns):
    pts = [start]
    cur = start
    for L, phi in zip(lengths, turns):
        cur = cur.advanced(L)
        pts.append(cur)
        cur = cur.turned(phi)
    return pts


def remote_polygon(rng, ctx: MetricContext, n: int, max_tries: int = 50):
    """Rejection-sampled long-sided polygon (4 or 5 framed vertices) whose
    hypotheses pass polygon_check; near-orthogonal turns keep the corner
    Gromov products far below 14*delta."""
    dl = ctx.delta
    for _ in range(max_tries):
        start = FramePoint(frame_at(ball_point(rng, 2.0), rng.random() * 2 * math.pi))
        lengths = 181.0 * dl + rng.random(n - 1) * 30.0 * dl
        signs = np.where(rng.random(n - 2) < 0.5, -1.0, 1.0)
        turns = signs * (0.5 * math.pi + (rng.random(n - 2) - 0.5) * 0.6)
        pts = _walk(rng, start, lengths, list(turns) + [0.0])
        report = polygon_check(ctx, pts)
        if report.hypotheses_ok:
            return pts, report
    raise RuntimeError("polygon sampler exhausted its rejection budget")


def nearby_pentagon(rng, ctx: MetricContext):
    """Pentagon with short [x2,x3] and [x4,x5] sides and long, genuinely
    diverging [x2,x1] and [x3,x4] sides (so the fellow-travel time is a
    nontrivial, finite quantity)."""
    dl = ctx.delta
    x2 = FramePoint(frame_at(ball_point(rng, 2.0), rng.random() * 2 * math.pi))
    long1 = (370.0 + rng.random() * 60.0) * dl
    x1 = x2.advanced(long1)

    # hop a short distance off x2, then launch the second long side at an
    # angle at least pi/3 away from the first
    hop = rng.random() * 120.0 * dl
    x3 = x2.turned(rng.random() * 2 * math.pi).advanced(hop)
    x3 = x3.turned(math.pi / 3.0 + rng.random() * (math.pi - math.pi / 3.0))
    long2 = (370.0 + rng.random() * 60.0) * dl
    x4 = x3.advanced(long2)
    x5 = x4.turned(rng.random() * 2 * math.pi).advanced(rng.random() * 120.0 * dl)
    return [x1, x2, x3, x4, x5]


def perturbed_geodesic_pair(rng, ctx: MetricContext, length: float = 20.0,
                            c_max: float = 1.0):
    """Two geodesic segments whose start and end separations are at most c."""
    a = ball_point(rng, 3.0)
    heading = rng.random() * 2.0 * math.pi
    b = FramePoint(frame_at(a, heading)).advanced(length).z
    a2 = FramePoint(frame_at(a, rng.random() * 2 * math.pi)) \
        .advanced(rng.random() * 0.5 * c_max).z
    b2 = FramePoint(frame_at(b, rng.random() * 2 * math.pi)) \
        .advanced(rng.random() * 0.5 * c_max).z
    g1 = ctx.space.geodesic(a, b)
    g2 = ctx.space.geodesic(a2, b2)
    c = max(ctx.space.distance(a, a2), ctx.space.distance(b, b2))
    return g1, g2, c


# ---------------------------------------------------------------------------
# exact rational isometries


def _random_fraction(rng, num_range: int = 4, den_range: int = 3) -> Fraction:
    num = int(rng.integers(-num_range, num_range + 1))
    den = int(rng.integers(1, den_range + 1))
    return Fraction(num, den)


def random_conjugator(rng, factors: int = 2) -> Isometry:
    """Random element of SL(2, Q) as a short product of elementary matrices."""
    g = Isometry.identity()
    for _ in range(factors):
        r = _random_fraction(rng)
        if rng.random() < 0.5:
            g = compose(g, Isometry(1, r, 0, 1))
        else:
            g = compose(g, Isometry(1, 0, r, 1))
    return g


def random_parabolic(rng) -> Isometry:
    k = int(rng.integers(1, 5)) * (1 if rng.random() < 0.5 else -1)
    s = random_conjugator(rng)
    return compose(compose(s, Isometry(1, k, 0, 1)), inverse(s))


def random_elliptic(rng) -> Isometry:
    # rational trace strictly inside (-2, 2)
    traces = (Fraction(0), Fraction(1), Fraction(-1), Fraction(3, 2),
              Fraction(-3, 2), Fraction(1, 2))
    t = traces[int(rng.integers(0, len(traces)))]
    s = random_conjugator(rng)
    return compose(compose(s, Isometry(0, -1, 1, t)), inverse(s))


def random_hyperbolic(rng) -> Isometry:
    t = Fraction(int(rng.integers(3, 9)))
    s = random_conjugator(rng)
    return compose(compose(s, Isometry(0, -1, 1, t)), inverse(s))


def random_generating_set(rng, size: int = 2) -> GeneratingSet:
    makers = (random_parabolic, random_elliptic, random_hyperbolic)
    gens = []
    for i in range(size):
        maker = makers[int(rng.integers(0, len(makers)))]
        gens.append((f"g{i}", maker(rng)))
    return GeneratingSet(tuple(gens))
