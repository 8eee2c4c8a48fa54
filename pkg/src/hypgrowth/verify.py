"""Randomized verifier suites over the half-plane model.

Each suite draws seeded samples and reports one record per checked bound:
{"lemma": name, "samples": n, "max_defect": worst value, "bound": allowed,
"pass": bool}.  A defect is always measured so that pass means
max_defect <= bound.
"""

from __future__ import annotations

import numpy as np

from .config import Config
from .criteria import hyperbolic_witness_check, product_hyperbolic_check
from .errors import PreconditionError
from .halfplane import HALF_PLANE, Horoball, neutered_path_bound_check
from .isometry import IsometryClass, compose, inverse
from .metric import (MetricContext, biinfinite_fellow_travel_defect,
                     fellow_travel_defect, internal_vertices,
                     nearby_pentagon_check, obtuse_defect, thinness_defect)
from . import sampling


def _record(lemma: str, samples: int, max_defect: float, bound: float) -> dict:
    return {"lemma": lemma, "samples": int(samples),
            "max_defect": float(max_defect), "bound": float(bound),
            "pass": bool(max_defect <= bound)}


def _ctx(cfg: Config) -> MetricContext:
    return MetricContext.from_config(HALF_PLANE, cfg)


def suite_triangles(cfg: Config, samples: int, seed: int) -> list:
    """Thin-triangle, inscribed-triangle, fellow-traveller and obtuse bounds
    on random triangles of diameter <= 20."""
    rng = np.random.default_rng(seed)
    ctx = _ctx(cfg)
    dl, step, tau = cfg.delta, cfg.step, cfg.tau
    radius = 10.0

    thin = inscribed = fwd = rev = biinf = 0.0
    for _ in range(samples):
        tri = sampling.sample_triangle(rng, ctx, radius)
        thin = max(thin, thinness_defect(ctx, tri))
        pa, pb, pc = internal_vertices(ctx, tri)
        inscribed = max(inscribed,
                        ctx.space.distance(pa, pb),
                        ctx.space.distance(pb, pc),
                        ctx.space.distance(pc, pa))
        c = ctx.space.distance(tri.y, tri.z)
        fwd = max(fwd, fellow_travel_defect(ctx, tri, "forward") - c)
        rev = max(rev, fellow_travel_defect(ctx, tri, "reverse") - c)
    for _ in range(samples):
        g1, g2, c = sampling.perturbed_geodesic_pair(rng, ctx)
        biinf = max(biinf,
                    biinfinite_fellow_travel_defect(ctx, g1, g2, c) - 2.0 * c)

    records = [
        _record("thin-triangles", samples, thin, 4.0 * dl + 2.0 * step),
        _record("inscribed-triangle-diameter", samples, inscribed, 4.0 * dl + tau),
        _record("fellow-traveller-forward", samples, fwd, 8.0 * dl + 2.0 * step),
        _record("fellow-traveller-reverse", samples, rev, 8.0 * dl + 2.0 * step),
        _record("fellow-traveller-biinfinite", samples, biinf, 16.0 * dl + 2.0 * step),
    ]

    n_obtuse = max(samples // 10, 1)
    length_defect = gromov = 0.0
    for _ in range(n_obtuse):
        tri = sampling.sample_obtuse_triangle(rng, ctx)
        ld, gp = obtuse_defect(ctx, tri)
        length_defect = max(length_defect, ld)
        gromov = max(gromov, gp)
    records.append(_record("obtuse-length-defect", n_obtuse, length_defect, 16.0 * dl))
    records.append(_record("obtuse-corner-product", n_obtuse, gromov, 8.0 * dl))
    return records


def suite_polygons(cfg: Config, samples: int, seed: int) -> list:
    """Long-sided 4/5-gon conclusions and the short-sided pentagon bound, on
    rejection-sampled frame-walk configurations."""
    rng = np.random.default_rng(seed)
    ctx = _ctx(cfg)
    records = []

    for n_gon in (4, 5):
        n_samples = max(samples // 2, 1)
        worst_len = -np.inf
        worst_dist = 0.0
        bound_dist = 0.0
        for _ in range(n_samples):
            _, report = sampling.remote_polygon(rng, ctx, n_gon)
            worst_len = max(worst_len, report.length_defect)
            worst_dist = max(worst_dist, report.max_distance_to_closing)
            bound_dist = report.distance_bound
        records.append(_record(f"polygon-{n_gon}-length", n_samples, worst_len, 0.0))
        records.append(_record(f"polygon-{n_gon}-neighborhood", n_samples,
                               worst_dist, bound_dist))

    worst = -np.inf
    for _ in range(samples):
        pts = sampling.nearby_pentagon(rng, ctx)
        report = nearby_pentagon_check(ctx, pts)
        worst = max(worst, report.rhs - report.lhs)
    records.append(_record("pentagon-short-sides", samples, worst, 0.0))
    return records


def suite_soundness(cfg: Config, samples: int, seed: int) -> list:
    """Criterion soundness sweeps: no hyperbolicity witness may appear on
    parabolic or elliptic elements, and positive product checks must agree
    with the exact trace classification."""
    rng = np.random.default_rng(seed)
    dl, tau = cfg.delta, cfg.tau
    radius = 8.0

    false_parabolic = 0
    for _ in range(samples):
        g = sampling.random_parabolic(rng)
        x = sampling.ball_point(rng, radius)
        if hyperbolic_witness_check(g, x, dl, tau) is not None:
            false_parabolic += 1

    false_elliptic = 0
    for _ in range(samples):
        g = sampling.random_elliptic(rng)
        x = sampling.ball_point(rng, radius)
        if hyperbolic_witness_check(g, x, dl, tau) is not None:
            false_elliptic += 1

    witnessed = 0
    mismatches = 0
    for _ in range(samples):
        g = sampling.random_hyperbolic(rng)
        x = sampling.ball_point(rng, radius)
        if hyperbolic_witness_check(g, x, dl, tau) is not None:
            witnessed += 1
            if g.classify() is not IsometryClass.HYPERBOLIC:
                mismatches += 1

    product_true = 0
    product_mismatch = 0
    for _ in range(samples):
        g = sampling.random_hyperbolic(rng)
        s = sampling.random_conjugator(rng)
        h = compose(compose(s, g), inverse(s))
        x = sampling.ball_point(rng, radius)
        if product_hyperbolic_check(g, h, x, dl, tau):
            product_true += 1
            gh, hg = compose(g, h), compose(h, g)
            if (gh.classify() is not IsometryClass.HYPERBOLIC
                    or hg.classify() is not IsometryClass.HYPERBOLIC):
                product_mismatch += 1

    return [
        _record("witness-parabolic-sweep", samples, false_parabolic, 0),
        _record("witness-elliptic-sweep", samples, false_elliptic, 0),
        _record("witness-hyperbolic-agreement", witnessed, mismatches, 0),
        _record("product-criterion-agreement", product_true, product_mismatch, 0),
    ]


def suite_distortion(cfg: Config, samples: int, seed: int) -> list:
    """Detour-path sandwich d_X <= d_path <= sinh(d_X) against the standard
    horoball, for horosphere pairs and for generic outside pairs."""
    rng = np.random.default_rng(seed)
    tau = cfg.tau
    ball = Horoball(center=float("inf"), level=0.0)

    lower = upper = -np.inf
    for _ in range(samples):
        x1 = -15.0 + 30.0 * rng.random()
        x2 = -15.0 + 30.0 * rng.random()
        if abs(x1 - x2) < 1e-6:
            x2 += 0.1
        rep = neutered_path_bound_check(complex(x1, 1.0), complex(x2, 1.0),
                                        [ball], step=cfg.step, tau=tau)
        lower = max(lower, rep.ambient - rep.path_length)
        upper = max(upper, rep.path_length - rep.upper_bound)
    records = [
        _record("distortion-horosphere-lower", samples, lower, tau),
        _record("distortion-horosphere-upper", samples, upper, tau),
    ]

    n_gen = max(samples // 10, 1)
    lower = upper = -np.inf
    done = 0
    while done < n_gen:
        a = complex(-10.0 + 20.0 * rng.random(), 0.05 + 0.95 * rng.random())
        b = complex(-10.0 + 20.0 * rng.random(), 0.05 + 0.95 * rng.random())
        if a == b:
            continue
        try:
            rep = neutered_path_bound_check(a, b, [ball], step=cfg.step, tau=tau)
        except PreconditionError:
            continue
        lower = max(lower, rep.ambient - rep.path_length)
        upper = max(upper, rep.path_length - rep.upper_bound)
        done += 1
    records.append(_record("distortion-general-lower", n_gen, lower, tau))
    records.append(_record("distortion-general-upper", n_gen, upper, tau))
    return records


SUITES = {
    "triangles": suite_triangles,
    "polygons": suite_polygons,
    "soundness": suite_soundness,
    "distortion": suite_distortion,
}


def run_suites(cfg: Config, names, samples: int, seed: int) -> dict:
    """Run the named suites; samples == 0 is a vacuous pass with a warning."""
    report = {"config_hash": cfg.config_hash(), "seed": int(seed),
              "samples": int(samples), "records": [], "pass": True}
    if samples == 0:
        report["warning"] = "samples == 0: vacuous pass"
        return report
    polygon_samples = max(samples // 100, 4)
    for name in names:
        suite = SUITES[name]
        n = polygon_samples if name == "polygons" else samples
        records = suite(cfg, n, seed)
        report["records"].extend(records)
    report["pass"] = all(r["pass"] for r in report["records"])
    return report
