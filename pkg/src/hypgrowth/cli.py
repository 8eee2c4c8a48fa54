"""Command-line surface.

Exit codes: 0 success, 1 criterion-not-found (no certificate / elementary
group), 2 invalid input, 3 resource budget exceeded.  Every command is
deterministic given (input file, flags, seed).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from .config import Config, load_config
from .criteria import FreePairCertificate, recheck_certificate
from .errors import (BudgetError, ElementaryGroupError, HypgrowthError,
                     InvalidInputError)
from .growth import (enumerate_ball, free_pair_growth_bound, growth_estimate)
from .halfplane import Horoball
from .isometry import GeneratingSet, Isometry, IsometryClass, axis, translation_length
from .search import NotFound, uniform_free_pair
from .sampling import empirical_delta, random_address
from .tree import Tree
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3


def _parse_center(raw) -> float:
    if isinstance(raw, str) and raw.strip() in ("inf", "+inf", "infinity"):
        return math.inf
    if isinstance(raw, str):
        return float(Fraction(raw))
    return float(raw)


def load_group_file(path):
    """Parse a group description file into (model, GeneratingSet, horoballs)."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read group file {path}: {exc}") from exc
    model = data.get("model", "H2")
    if model != "H2" and not str(model).startswith("tree:"):
        raise InvalidInputError(f"unknown model {model!r}")
    gens = []
    for i, item in enumerate(data.get("generators", [])):
        name = item.get("name", f"g{i}")
        try:
            gens.append((name, Isometry.from_matrix(item["matrix"])))
        except (KeyError, InvalidInputError) as exc:
            raise InvalidInputError(
                f"generator {name!r} (index {i}): {exc}") from exc
    horoballs = tuple(Horoball(_parse_center(h["center"]), float(h.get("level", 0.0)))
                      for h in data.get("horoballs", []))
    genset = GeneratingSet(tuple(gens)) if gens else None
    return model, genset, horoballs


def _require_h2_generators(model, genset):
    if model != "H2":
        raise InvalidInputError("this command needs an H2 matrix group file")
    if genset is None:
        raise InvalidInputError("group file lists no generators")


def _emit(payload: dict, out_path=None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    print(text)


def cmd_classify(args, cfg: Config) -> int:
    model, genset, _ = load_group_file(args.group)
    _require_h2_generators(model, genset)
    rows = []
    for name, g in genset.generators:
        kind = g.classify()
        row = {"name": name, "class": kind.value, "trace": str(g.trace),
               "matrix": g.matrix_literal()}
        if kind is IsometryClass.HYPERBOLIC:
            ax = axis(g)
            row["translation_length"] = translation_length(g)
            row["axis_endpoints"] = [_ideal_str(ax.repelling), _ideal_str(ax.attracting)]
        rows.append(row)
    _emit({"model": model, "generators": rows}, args.out)
    return EXIT_OK


def _ideal_str(x: float):
    return "inf" if math.isinf(x) else x


def cmd_free_pair(args, cfg: Config) -> int:
    if args.recheck:
        with open(args.recheck) as fh:
            cert = FreePairCertificate.from_json_dict(json.load(fh))
        same, _ = recheck_certificate(cert)
        _emit({"recheck": args.recheck, "bit_identical": same})
        return EXIT_OK if same else EXIT_NOT_FOUND

    model, genset, horoballs = load_group_file(args.group)
    _require_h2_generators(model, genset)
    if args.delta is not None:
        cfg = cfg.with_patch(delta=args.delta)
    if args.max_m is not None:
        cfg = cfg.with_patch(max_m=args.max_m)
    if args.spectrum_len is not None:
        cfg = cfg.with_patch(spectrum_len=args.spectrum_len)
    try:
        result = uniform_free_pair(genset, cfg.delta, cfg=cfg, tau=cfg.tau,
                                   horoballs=horoballs)
    except ElementaryGroupError as exc:
        _emit({"found": False, "reason": "elementary", "detail": str(exc)})
        return EXIT_NOT_FOUND
    if isinstance(result, NotFound):
        _emit({"found": False, "reason": result.reason})
        return EXIT_NOT_FOUND
    payload = result.to_json_dict()
    payload["found"] = True
    _emit(payload, args.out)
    return EXIT_OK


def cmd_growth(args, cfg: Config) -> int:
    model, genset, _ = load_group_file(args.group)
    _require_h2_generators(model, genset)
    max_elements = cfg.max_elements
    env = os.environ.get("HYPGROWTH_MAX_ELEMENTS")
    if env:
        max_elements = int(env)
    try:
        census = enumerate_ball(genset, args.radius, max_elements=max_elements,
                                max_entry_bits=cfg.max_entry_bits,
                                workers=args.workers)
    except BudgetError as exc:
        payload = exc.census.to_json_dict() if exc.census else {}
        payload.update({"error": str(exc), "complete": False})
        _emit(payload, args.out)
        return EXIT_BUDGET
    payload = census.to_json_dict()
    if census.radii[-1] >= 1:
        bound = None
        if args.certificate:
            with open(args.certificate) as fh:
                cert = FreePairCertificate.from_json_dict(json.load(fh))
            bound = free_pair_growth_bound(cert)
        est = growth_estimate(census, omega_lower=bound)
        payload.update(est.to_json_dict())
    _emit(payload, args.out)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(census.to_csv())
    return EXIT_OK


def cmd_verify(args, cfg: Config) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    report = run_suites(cfg, names, args.samples, args.seed)
    _emit(report, args.out)
    return EXIT_OK if report["pass"] else EXIT_NOT_FOUND


def cmd_delta_estimate(args, cfg: Config) -> int:
    if args.samples < 1:
        raise InvalidInputError("delta estimation needs at least one sample")
    if str(args.model).startswith("tree:"):
        k = int(str(args.model).split(":", 1)[1])
        tree = Tree(k)
        import numpy as np

        from .metric import MetricContext, four_point_defect
        rng = np.random.default_rng(args.seed)
        ctx = MetricContext(space=tree, delta=0.0, step=1.0, tau=0.0)
        sup = 0
        for _ in range(args.samples):
            pts = [random_address(rng, int(args.radius), k) for _ in range(4)]
            sup = max(sup, four_point_defect(ctx, *pts))
        estimate = 1.5 * sup
    else:
        sup, estimate = empirical_delta(args.seed, args.samples, args.radius)
    _emit({"delta": estimate, "sup_defect": sup, "samples": args.samples,
           "radius": args.radius, "seed": args.seed, "model": args.model},
          args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hypgrowth",
        description="Free-subgroup certificates and growth estimates for "
                    "matrix isometry groups of the hyperbolic plane")
    p.add_argument("--config", help="JSON config patch file")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify each generator")
    c.add_argument("group")
    c.add_argument("--out")
    c.set_defaults(fn=cmd_classify)

    f = sub.add_parser("free-pair", help="produce a free-pair certificate")
    f.add_argument("group", nargs="?")
    f.add_argument("--delta", type=float)
    f.add_argument("--max-m", type=int, dest="max_m")
    f.add_argument("--spectrum-len", type=int, dest="spectrum_len")
    f.add_argument("--out")
    f.add_argument("--recheck", help="re-verify a stored certificate file")
    f.set_defaults(fn=cmd_free_pair)

    g = sub.add_parser("growth", help="exact Cayley-ball census")
    g.add_argument("group")
    g.add_argument("--radius", type=int, required=True)
    g.add_argument("--certificate", help="free-pair certificate for a lower bound")
    g.add_argument("--workers", type=int, default=1)
    g.add_argument("--out")
    g.add_argument("--csv")
    g.set_defaults(fn=cmd_growth)

    v = sub.add_parser("verify", help="run randomized inequality suites")
    v.add_argument("--suite", choices=["all"] + list(SUITES), default="all")
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out")
    v.set_defaults(fn=cmd_verify)

    d = sub.add_parser("delta-estimate", help="Monte-Carlo four-point calibration")
    d.add_argument("--samples", type=int, default=1_000_000)
    d.add_argument("--radius", type=float, default=10.0)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--model", default="H2")
    d.add_argument("--out")
    d.set_defaults(fn=cmd_delta_estimate)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (OSError, json.JSONDecodeError, TypeError) as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.fn(args, cfg)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except HypgrowthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND


if __name__ == "__main__":
    sys.exit(main())
