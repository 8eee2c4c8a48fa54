"""Displacement criteria: hyperbolicity witnesses, the product criterion, and
the two-generator freeness certificate.

All criteria are one-sided: a rejection never claims non-hyperbolicity or
non-freeness.  Strict inequalities are decided as LHS > RHS + tau.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

from .errors import InvalidInputError
from .halfplane import check_point
from .isometry import (Isometry, compose, displacement, inverse,
                       moved_points_distance, power)

DEFAULT_TAU = 1e-9


@dataclass(frozen=True)
class HyperbolicityWitness:
    """A point where doubling the element more than doubles displacement
    (margin over the 2*delta allowance is positive)."""

    g: Isometry
    x: complex
    lhs: float  # |g^2 x - x|
    rhs: float  # |g x - x| + 2*delta
    margin: float


def hyperbolic_witness_check(g: Isometry, x, delta: float,
                             tau: float = DEFAULT_TAU) -> Optional[HyperbolicityWitness]:
    """Witness that g is hyperbolic, or None.

    Sound for any valid delta: issues a witness only when
    |g^2 x - x| > |g x - x| + 2*delta + tau.
    """
    if delta < 0:
        raise InvalidInputError("delta must be nonnegative")
    lhs = displacement(compose(g, g), x)
    rhs = displacement(g, x) + 2.0 * delta
    margin = lhs - rhs
    if margin > tau:
        return HyperbolicityWitness(g, x, lhs, rhs, margin)
    return None


def product_hyperbolic_check(g: Isometry, h: Isometry, x, delta: float,
                             tau: float = DEFAULT_TAU) -> bool:
    """One-sided test that gh and hg are hyperbolic:
    min(|gx-x|, |hx-x|) >= 2 (gx . hx)_x + 6*delta, with margin tau."""
    if not delta > 0:
        raise InvalidInputError("delta must be positive for the product criterion")
    dg = displacement(g, x)
    dh = displacement(h, x)
    dgh = moved_points_distance(g, h, x)
    gromov = 0.5 * (dg + dh - dgh)
    return min(dg, dh) >= 2.0 * gromov + 6.0 * delta + tau


_SIGN_PAIRS = (("+", "+"), ("+", "-"), ("-", "+"), ("-", "-"))


@dataclass(frozen=True)
class FreenessRejection:
    """Which inequality failed, and by how much (most negative margin)."""

    condition: str
    margin: float


@dataclass(frozen=True)
class FreePairCertificate:
    """Machine-checkable record that (g, h) generate a rank-2 free group.

    Stores every number entering the six inequalities so a verifier can
    reproduce the decision bit-exactly from the stored fields.
    """

    g: Isometry
    h: Isometry
    basepoint: complex
    g_displacement: float
    h_displacement: float
    cross_distances: dict  # "(e,f)" -> |g^e x0 - h^f x0|
    cross_margin: float
    self_margins: tuple  # (g condition, h condition)
    delta_used: float
    tau_used: float
    g_word: Optional[tuple] = None
    h_word: Optional[tuple] = None
    config_hash: Optional[str] = None

    def to_json_dict(self) -> dict:
        return {
            "g_matrix": self.g.matrix_literal(),
            "h_matrix": self.h.matrix_literal(),
            "basepoint": [repr(self.basepoint.real), repr(self.basepoint.imag)],
            "g_displacement": self.g_displacement,
            "h_displacement": self.h_displacement,
            "cross_distances": dict(sorted(self.cross_distances.items())),
            "cross_margin": self.cross_margin,
            "self_margins": list(self.self_margins),
            "delta_used": self.delta_used,
            "tau_used": self.tau_used,
            "g_word": list(self.g_word) if self.g_word is not None else None,
            "h_word": list(self.h_word) if self.h_word is not None else None,
            "config_hash": self.config_hash,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, d: dict) -> "FreePairCertificate":
        return cls(
            g=Isometry.from_matrix(d["g_matrix"]),
            h=Isometry.from_matrix(d["h_matrix"]),
            basepoint=complex(float(d["basepoint"][0]), float(d["basepoint"][1])),
            g_displacement=d["g_displacement"],
            h_displacement=d["h_displacement"],
            cross_distances=dict(d["cross_distances"]),
            cross_margin=d["cross_margin"],
            self_margins=tuple(d["self_margins"]),
            delta_used=d["delta_used"],
            tau_used=d["tau_used"],
            g_word=tuple(d["g_word"]) if d.get("g_word") else None,
            h_word=tuple(d["h_word"]) if d.get("h_word") else None,
            config_hash=d.get("config_hash"),
        )


def freeness_check(g: Isometry, h: Isometry, x0, delta: float,
                   tau: float = DEFAULT_TAU, g_word=None, h_word=None,
                   config_hash=None) -> Union[FreePairCertificate, FreenessRejection]:
    """Ping-pong freeness certificate for the pair (g, h) at basepoint x0.

    Certifies when all six inequalities hold with margin > tau:
    the four sign combinations of
        |g^{+-1} x0 - h^{+-1} x0| > max(|g x0 - x0|, |h x0 - x0|) + 2*delta
    and the two displacement-doubling conditions for g and h.
    """
    if delta < 0:
        raise InvalidInputError("delta must be nonnegative")
    if not isinstance(x0, complex):
        x0 = check_point(x0)
    dg = displacement(g, x0)
    dh = displacement(h, x0)
    base = max(dg, dh) + 2.0 * delta

    elements = {"+": (g, h), "-": (inverse(g), inverse(h))}
    cross = {}
    cross_margins = {}
    for eg, eh in _SIGN_PAIRS:
        dist = moved_points_distance(elements[eg][0], elements[eh][1], x0)
        key = f"({eg},{eh})"
        cross[key] = dist
        cross_margins[key] = dist - base

    self_g = displacement(power(g, 2), x0) - (dg + 2.0 * delta)
    self_h = displacement(power(h, 2), x0) - (dh + 2.0 * delta)

    failures = [(k, m) for k, m in cross_margins.items() if not m > tau]
    if not self_g > tau:
        failures.append(("self-g", self_g))
    if not self_h > tau:
        failures.append(("self-h", self_h))
    if failures:
        worst = min(failures, key=lambda km: km[1])
        return FreenessRejection(condition=worst[0], margin=worst[1])

    return FreePairCertificate(
        g=g, h=h, basepoint=x0,
        g_displacement=dg, h_displacement=dh,
        cross_distances=cross,
        cross_margin=min(cross_margins.values()),
        self_margins=(self_g, self_h),
        delta_used=delta, tau_used=tau,
        g_word=tuple(g_word) if g_word is not None else None,
        h_word=tuple(h_word) if h_word is not None else None,
        config_hash=config_hash,
    )


def recheck_certificate(cert: FreePairCertificate):
    """Re-run the check on the stored inputs.

    Returns (bit_identical, result); bit_identical is True only if the rerun
    certifies and every stored float is reproduced exactly.
    """
    result = freeness_check(cert.g, cert.h, cert.basepoint, cert.delta_used,
                            cert.tau_used, cert.g_word, cert.h_word,
                            cert.config_hash)
    if isinstance(result, FreenessRejection):
        return False, result
    same = (result.g_displacement == cert.g_displacement
            and result.h_displacement == cert.h_displacement
            and result.cross_distances == cert.cross_distances
            and result.cross_margin == cert.cross_margin
            and result.self_margins == cert.self_margins)
    return same, result
