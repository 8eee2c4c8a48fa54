"""Search algorithms: minimal-displacement descent, short hyperbolic element
extraction, axis-separation and translation-spectrum estimators, and the
uniform free-pair pipeline.

The descent operationalizes a contradiction argument as a terminating loop:
while the generating set moves every point far (size > 100*delta), either a
one- or two-letter word is certified hyperbolic, or moving 20*delta toward
the largest displacement drops the size by more than 10*delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .config import Config
from .criteria import (FreePairCertificate, FreenessRejection,
                       hyperbolic_witness_check, product_hyperbolic_check,
                       freeness_check)
from .errors import (AsymptoticAxesError, ClassError, DescentContractError,
                     ElementaryGroupError, InvalidInputError,
                     IterationLimitError)
from .growth import ball_with_words
from .halfplane import H2Path, check_point, geodesic, point_distance
from .isometry import (Axis, GeneratingSet, Isometry, IsometryClass, axis,
                       compose, displacement, inverse, moved_points_distance,
                       power, translation_length)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ShortHyperbolic:
    """A word of length <= 2 over the set whose element is hyperbolic."""

    word: tuple
    element: Isometry


@dataclass(frozen=True)
class LowDisplacementPoint:
    """A point where the whole set moves by at most 100*delta."""

    point: complex
    size: float


@dataclass
class DescentTrace:
    points: list = field(default_factory=list)
    sizes: list = field(default_factory=list)
    outcome: Union[ShortHyperbolic, LowDisplacementPoint, None] = None


def _project_outside(x: complex, horoballs, tau: float) -> complex:
    for ball in horoballs:
        if ball.in_interior(x, tau):
            return ball.project_to_sphere(x)
    return x


def descent(S: GeneratingSet, x_init, delta: float, *,
            max_iter: int = 1000, tau: float = 1e-9,
            horoballs=()) -> DescentTrace:
    """Walk toward almost-minimal displacement until a short hyperbolic word
    or a low-displacement point appears.

    Each accepted move travels exactly 20*delta along the geodesic toward the
    image of the current point under the largest-displacement generator, and
    must shrink the set size by more than 10*delta.  With a horoball system
    configured, basepoints inside a horoball are projected to its sphere
    before evaluation.
    """
    if not delta > 0:
        raise InvalidInputError("descent needs delta > 0")
    x = _project_outside(check_point(x_init), horoballs, tau)
    trace = DescentTrace()
    prev_size = None

    for _ in range(max_iter):
        disps = [(displacement(g, x), name, g) for name, g in S.generators]
        size = max(d for d, _, _ in disps)
        trace.points.append(x)
        trace.sizes.append(size)
        if prev_size is not None and not size < prev_size - 10.0 * delta:
            raise DescentContractError(
                f"descent step dropped size by only {prev_size - size:.6f} "
                f"(needs > {10 * delta:.6f}); delta is misconfigured")
        prev_size = size

        # a single generator may already witness hyperbolicity here
        for d_a, name, g in disps:
            if hyperbolic_witness_check(g, x, delta, tau) is not None:
                trace.outcome = ShortHyperbolic((name,), g)
                return trace

        if size <= 100.0 * delta:
            trace.outcome = LowDisplacementPoint(x, size)
            return trace

        d1, name1, a1 = max(disps, key=lambda t: t[0])
        a1x = a1.apply(x)
        for d_a, name, a in disps:
            if d_a < 50.0 * delta:
                continue
            gromov = 0.5 * (d1 + d_a - moved_points_distance(a1, a, x))
            if gromov <= 20.0 * delta:
                candidate = compose(a, a1)
                if (product_hyperbolic_check(a1, a, x, delta, tau)
                        and candidate.classify() is IsometryClass.HYPERBOLIC):
                    trace.outcome = ShortHyperbolic((name, name1), candidate)
                    return trace

        x = geodesic(x, a1x).point_at(20.0 * delta)
        x = _project_outside(x, horoballs, tau)

    raise IterationLimitError(
        f"descent did not resolve within {max_iter} iterations", trace=trace)


DEFAULT_BASEPOINTS = (complex(0.0, 1.0), complex(2.0, 3.0), complex(-1.0, 0.5))


def short_hyperbolic(S: GeneratingSet, delta: float, *,
                     basepoints=DEFAULT_BASEPOINTS, fallback_len: int = 4,
                     tau: float = 1e-9, max_iter: int = 1000,
                     horoballs=()) -> Optional[tuple]:
    """(word, element) with the element hyperbolic, or None.

    Runs the descent from a basepoint grid; if every run ends at a
    low-displacement point, falls back to an exhaustive scan of words up to
    fallback_len (deterministic breadth-first order).
    """
    for bp in basepoints:
        trace = descent(S, bp, delta, max_iter=max_iter, tau=tau,
                        horoballs=horoballs)
        if isinstance(trace.outcome, ShortHyperbolic):
            out = trace.outcome
            if out.element.classify() is not IsometryClass.HYPERBOLIC:
                raise DescentContractError("descent returned a non-hyperbolic word")
            return out.word, out.element

    for g, word in ball_with_words(S, fallback_len).items():
        if g.classify() is IsometryClass.HYPERBOLIC:
            return word, g
    return None


def translation_spectrum(S: GeneratingSet, max_len: int) -> float:
    """Minimum translation length over hyperbolic elements of word length
    <= max_len; +inf if there are none.  Trace comparisons are exact."""
    best: Optional[Fraction] = None
    best_g = None
    for g in ball_with_words(S, max_len):
        if g.classify() is IsometryClass.HYPERBOLIC:
            t = abs(g.trace)
            if best is None or t < best:
                best, best_g = t, g
    if best_g is None:
        return math.inf
    return translation_length(best_g)


def small_displacement_count(S: GeneratingSet, eps: float, radius: int,
                             basepoints=DEFAULT_BASEPOINTS) -> int:
    """Empirical orbit-packing count: the largest number of distinct elements
    of the radius-`radius` Cayley ball moving some sampled basepoint by at
    most eps.  Always >= 1 (the identity)."""
    elements = list(ball_with_words(S, radius))
    best = 0
    for x in basepoints:
        count = sum(1 for g in elements if displacement(g, x) <= eps)
        best = max(best, count)
    return max(best, 1)


# ---------------------------------------------------------------------------
# axis separation


def _fixed_point_form(g: Isometry):
    """Quadratic form c*t^2 + (d-a)*t - b whose roots are the fixed points."""
    return (g.c, g.d - g.a, -g.b)


def _form_transform(form, s: Isometry):
    """Pull the homogeneous fixed-point form back along s; exact."""
    A, B, C = form
    al, be, ga, de = s.a, s.b, s.c, s.d
    A2 = A * al * al + B * al * ga + C * ga * ga
    B2 = 2 * A * al * be + B * (al * de + be * ga) + 2 * C * ga * de
    C2 = A * be * be + B * be * de + C * de * de
    return (A2, B2, C2)


def fixes_axis_endpoints(s: Isometry, g: Isometry) -> bool:
    """Exact test: does s map the fixed-point pair of g to itself (setwise)?"""
    form = _fixed_point_form(g)
    moved = _form_transform(form, s)
    A, B, C = form
    A2, B2, C2 = moved
    return A * B2 == A2 * B and A * C2 == A2 * C and B * C2 == B2 * C


def shares_fixed_point(g: Isometry, h: Isometry) -> bool:
    """Exact test for a common fixed point on the boundary circle."""
    A1, B1, C1 = _fixed_point_form(g)
    A2, B2, C2 = _fixed_point_form(h)
    if A1 == 0 and A2 == 0:
        return True  # both fix infinity
    if A1 == 0 or A2 == 0:
        # one fixes infinity and one finite rational point; check the other form
        A, B, C = (A2, B2, C2) if A1 == 0 else (A1, B1, C1)
        _, Bz, Cz = (A1, B1, C1) if A1 == 0 else (A2, B2, C2)
        # finite fixed point of the infinity-fixing element: root of Bz*t + Cz
        if Bz == 0:
            return False
        t = -Cz / Bz
        return A * t * t + B * t + C == 0
    res = (A1 * C2 - A2 * C1) ** 2 - (A1 * B2 - A2 * B1) * (B1 * C2 - B2 * C1)
    return res == 0


def _golden_min(f, lo: float, hi: float, tol: float):
    """Golden-section minimum of a unimodal f on [lo, hi]; ties go left."""
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _expand_bracket(f, width: float = 1.0, cap: float = 1e6):
    """Expand [-w, w] until the minimum of a convex f is interior."""
    w = width
    while w < cap:
        if f(-w) > f(0.0) < f(w) or f(-w) > f(-0.5 * w) or f(w) > f(0.5 * w):
            return -w, w
        w *= 4.0
    return -cap, cap


def nearest_parameters(p1: H2Path, p2: H2Path, tau: float = 1e-9):
    """Parameters (s, t) of mutually nearest points of two disjoint geodesics.

    Nested minimization: golden-section over s, with the inner minimum over t
    given by the closed-form foot of the perpendicular.
    """
    from .halfplane import coeff_foot, coeff_distance, frame_coeffs, frame_inv

    logs = frame_coeffs(frame_inv(p1.frame) @ p2.frame)

    def inner(s: float) -> float:
        t = float(coeff_foot(logs, s))
        t = min(max(t, p2.lo), p2.hi)
        return float(coeff_distance(logs, s, t))

    lo, hi = _expand_bracket(inner)
    s_star = _golden_min(inner, lo, hi, tol=max(tau, 1e-12))
    t_star = float(coeff_foot(logs, s_star))
    t_star = min(max(t_star, p2.lo), p2.hi)
    return s_star, t_star


@dataclass(frozen=True)
class SeparationEstimate:
    """Fellow-travel time of two equal-length axes against the orbit-packing
    bound (b_eps + 1) * amplitude."""

    eps: float
    b_eps: int
    ell: float
    amplitude: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.ell < self.bound


def separation_estimate(g: Isometry, h: Isometry, eps: float,
                        S: GeneratingSet, radius: int, *,
                        basepoints=DEFAULT_BASEPOINTS, step: float = 1e-2,
                        tau: float = 1e-9) -> SeparationEstimate:
    """Measure how long the axes of g and h eps-fellow-travel, and compare
    with the empirical separation bound.

    Both elements must be hyperbolic with equal translation length and
    disjoint fixed-point sets (axes sharing an endpoint are the asymptotic
    branch of the dichotomy and are rejected).
    """
    if g.classify() is not IsometryClass.HYPERBOLIC or \
            h.classify() is not IsometryClass.HYPERBOLIC:
        raise ClassError("separation estimate needs hyperbolic elements")
    if abs(g.trace) != abs(h.trace):
        raise InvalidInputError("translation lengths differ; no rescaling rule "
                                "is applied")
    if shares_fixed_point(g, h):
        raise AsymptoticAxesError("axes share an ideal endpoint")

    from .metric import MetricContext, fellow_travel_time
    from .halfplane import HALF_PLANE

    amp = translation_length(g)
    b_eps = small_displacement_count(S, eps, radius, basepoints)
    bound = (b_eps + 1) * amp + tau

    ax_g, ax_h = axis(g), axis(h)
    s_star, t_star = nearest_parameters(ax_g.path, ax_h.path, tau)
    window = 1.25 * (bound + eps) + 10.0
    pg = ax_g.path.shifted(s_star).subpath(-window, window)
    ph = ax_h.path.shifted(t_star).subpath(-window, window)
    ctx = MetricContext(space=HALF_PLANE, delta=1.0, step=step, tau=tau)
    ell = fellow_travel_time(ctx, pg, ph, eps)
    return SeparationEstimate(eps, b_eps, ell, amp, bound)


# ---------------------------------------------------------------------------
# the uniform free-pair pipeline


@dataclass(frozen=True)
class NotFound:
    reason: str


def uniform_free_pair(S: GeneratingSet, delta: float, *, cfg: Config = None,
                      tau: float = 1e-9,
                      horoballs=()) -> Union[FreePairCertificate, NotFound]:
    """Produce a certified free pair (g0^m, s g0^m s^-1) from any generating
    set, or report why none was found.

    Pipeline: find a short hyperbolic g0; floor the translation spectrum for
    the discreteness constant c0; count orbit packing for b0; take
    m > 722*delta/c0 + 2*b0; conjugate by a generator moving g0's axis; base
    the freeness check at the mutually nearest axis points.  On rejection the
    power doubles, up to the configured cap: the empirical c0 and b0 only
    steer m, soundness rests on the final certificate.
    """
    cfg = cfg or Config()
    if not delta > 0:
        raise InvalidInputError("delta must be positive")
    basepoints = tuple(complex(re, im) for re, im in cfg.basepoints)

    found = short_hyperbolic(S, delta, basepoints=basepoints,
                             fallback_len=cfg.fallback_len, tau=tau,
                             max_iter=cfg.descent_max_iter, horoballs=horoballs)
    if found is None:
        return NotFound("no-hyperbolic-element")
    g0_word, g0 = found

    c0 = translation_spectrum(S, cfg.spectrum_len)
    c0 = min(c0, translation_length(g0))
    eps = cfg.separation_eps_mult * delta
    b0 = small_displacement_count(S, eps, cfg.separation_radius, basepoints) + 1
    m = int(math.floor(cfg.power_coeff * delta / c0 + 2.0 * b0)) + 1

    conjugator = None
    for name, s in S.generators:
        if not fixes_axis_endpoints(s, g0):
            conjugator = (name, s)
            break
    if conjugator is None:
        raise ElementaryGroupError(
            "every generator fixes the axis endpoint pair of the hyperbolic "
            "element; the group is elementary along this axis")
    s_name, s = conjugator

    last_rejection = None
    while m <= cfg.max_m:
        g = power(g0, m)
        h = compose(compose(s, g), inverse(s))
        ax_g, ax_h = axis(g), axis(h)
        s_star, _ = nearest_parameters(ax_g.path, ax_h.path, tau)
        x0 = ax_g.path.at_param(s_star)
        g_word = tuple(g0_word) * m
        h_word = (s_name,) + g_word + (f"{s_name}^-1",)
        result = freeness_check(g, h, x0, delta, tau,
                                g_word=g_word, h_word=h_word,
                                config_hash=cfg.config_hash())
        if isinstance(result, FreePairCertificate):
            return result
        last_rejection = result
        m *= 2

    return NotFound(f"max-m-exceeded (last rejection: {last_rejection})")
