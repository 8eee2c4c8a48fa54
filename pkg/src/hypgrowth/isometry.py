"""Exact 2x2 rational matrices acting on the half-plane by Moebius maps.

All group arithmetic and classification is exact (stdlib Fractions); only
distances are floating point.  Matrices are kept in canonical projective
form: determinant exactly 1, and the first nonzero entry of (a, b, c, d)
positive, so g and -g share one key and deduplication never sees rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import ClassError, InvalidInputError
from .halfplane import (FramePoint, H2Path, LN2, _acosh_from_log, as_frame,
                        frame_inv, line)

_ZERO = Fraction(0)
_ONE = Fraction(1)
_TWO = Fraction(2)


def parse_rational(v) -> Fraction:
    """Accept int, Fraction, or strings like '3' and '-5/7'.  Floats are
    rejected: matrix literals must be exact."""
    if isinstance(v, bool) or isinstance(v, float):
        raise InvalidInputError(f"matrix entries must be exact rationals, got {v!r}")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"bad rational literal {v!r}") from exc
    raise InvalidInputError(f"bad rational literal {v!r}")


def _exact_sqrt(fr: Fraction):
    """sqrt of a positive rational if it is rational, else None."""
    if fr <= 0:
        return None
    n, d = fr.numerator, fr.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class IsometryClass(Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


class Isometry:
    """Canonical-form element of PSL(2, Q) acting on the upper half-plane."""

    __slots__ = ("a", "b", "c", "d", "_hash")

    def __init__(self, a, b, c, d):
        a, b, c, d = (parse_rational(v) for v in (a, b, c, d))
        det = a * d - b * c
        if det != _ONE:
            root = _exact_sqrt(det)
            if root is None:
                raise InvalidInputError(
                    f"determinant {det} is not the square of a rational")
            a, b, c, d = a / root, b / root, c / root, d / root
        for v in (a, b, c, d):
            if v != 0:
                if v < 0:
                    a, b, c, d = -a, -b, -c, -d
                break
        self.a, self.b, self.c, self.d = a, b, c, d
        self._hash = None

    @classmethod
    def _raw(cls, a, b, c, d) -> "Isometry":
        """Internal fast path: entries are Fractions with det exactly 1."""
        self = object.__new__(cls)
        for v in (a, b, c, d):
            if v != 0:
                if v < 0:
                    a, b, c, d = -a, -b, -c, -d
                break
        self.a, self.b, self.c, self.d = a, b, c, d
        self._hash = None
        return self

    @classmethod
    def identity(cls) -> "Isometry":
        return cls._raw(_ONE, _ZERO, _ZERO, _ONE)

    @classmethod
    def from_matrix(cls, rows) -> "Isometry":
        try:
            (a, b), (c, d) = rows
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"not a 2x2 matrix: {rows!r}") from exc
        return cls(a, b, c, d)

    def matrix_literal(self):
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, Isometry):
            return NotImplemented
        return self.entries() == other.entries()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.entries())
        return self._hash

    def __repr__(self):
        return f"Isometry[[{self.a}, {self.b}], [{self.c}, {self.d}]]"

    @property
    def trace(self) -> Fraction:
        return self.a + self.d

    def is_identity(self) -> bool:
        return self.entries() == (_ONE, _ZERO, _ZERO, _ONE)

    # -- group arithmetic ---------------------------------------------------

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return compose(self, other)

    def scaled_floats(self):
        """(F, E) with the matrix equal to 2^E * F and F entries of order 1.

        Safe for entries far beyond float range; E is an integer.
        """
        mags = [f.numerator.bit_length() - f.denominator.bit_length()
                for f in self.entries() if f != 0]
        E = max(mags)
        shift = Fraction(1, 1 << E) if E >= 0 else Fraction(1 << -E)
        F = np.array([[float(self.a * shift), float(self.b * shift)],
                      [float(self.c * shift), float(self.d * shift)]])
        return F, E

    def apply(self, z: complex) -> complex:
        """Moebius image of an interior point (scale-invariant, so the scaled
        float entries are safe)."""
        F, _ = self.scaled_floats()
        a, b, c, d = F[0, 0], F[0, 1], F[1, 0], F[1, 1]
        num = a * z + b
        den = c * z + d
        # stable imaginary part: Im(gz) = det * Im z / |den|^2 with det = a*d - b*c
        det = a * d - b * c
        w = num / den
        return complex(w.real, det * z.imag / abs(den) ** 2)

    def apply_ideal(self, x: float) -> float:
        F, _ = self.scaled_floats()
        a, b, c, d = F[0, 0], F[0, 1], F[1, 0], F[1, 1]
        if math.isinf(x):
            return a / c if c != 0.0 else math.inf
        den = c * x + d
        if den == 0.0:
            return math.inf
        return (a * x + b) / den

    # -- classification -----------------------------------------------------

    def classify(self) -> IsometryClass:
        if self.is_identity():
            return IsometryClass.IDENTITY
        t = abs(self.trace)
        if t < _TWO:
            return IsometryClass.ELLIPTIC
        if t == _TWO:
            return IsometryClass.PARABOLIC
        return IsometryClass.HYPERBOLIC


def compose(g: Isometry, h: Isometry) -> Isometry:
    return Isometry._raw(g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
                         g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d)


def inverse(g: Isometry) -> Isometry:
    return Isometry._raw(g.d, -g.b, -g.c, g.a)


def power(g: Isometry, n: int) -> Isometry:
    if n < 0:
        return power(inverse(g), -n)
    result = Isometry.identity()
    base = g
    while n:
        if n & 1:
            result = compose(result, base)
        base = compose(base, base)
        n >>= 1
    return result


def apply(g: Isometry, z: complex) -> complex:
    return g.apply(z)


def classify(g: Isometry) -> IsometryClass:
    return g.classify()


# ---------------------------------------------------------------------------
# metric quantities


def _frac_log(fr: Fraction) -> float:
    """ln |fr| via bit lengths; exact to ~1e-15 relative for huge rationals."""
    n, d = abs(fr.numerator), fr.denominator
    if n == 0:
        return -math.inf
    sn = max(n.bit_length() - 53, 0)
    sd = max(d.bit_length() - 53, 0)
    return (math.log2(n >> sn) + sn - math.log2(d >> sd) - sd) * LN2


def displacement(g: Isometry, x) -> float:
    """d(x, g x), computed in log space so it survives matrix entries (and
    displacements) far beyond float range."""
    Fx = as_frame(x)
    Ghat, E = g.scaled_floats()
    W = frame_inv(Fx) @ Ghat @ Fx
    shift = 2.0 * E * LN2
    terms = [2.0 * math.log(abs(w)) + shift if w != 0.0 else -math.inf
             for w in W.ravel()]
    m = max(terms)
    if m == -math.inf:
        return 0.0
    lc = m + math.log(sum(math.exp(t - m) for t in terms)) - LN2
    return float(_acosh_from_log(lc))


def moved_points_distance(g: Isometry, h: Isometry, x) -> float:
    """d(g x, h x) = displacement of g^-1 h at x; exact group arithmetic first."""
    return displacement(compose(inverse(g), h), x)


def set_size(elements, x) -> float:
    """max_s d(x, s x) over the given isometries."""
    elements = list(elements)
    if not elements:
        raise InvalidInputError("size of an empty set is undefined")
    return max(displacement(g, x) for g in elements)


def translation_length(g: Isometry) -> float:
    """2 * arccosh(|tr|/2) for a hyperbolic element."""
    if g.classify() is not IsometryClass.HYPERBOLIC:
        raise ClassError(f"translation length needs a hyperbolic element: {g!r}")
    t = abs(g.trace)
    if t.numerator.bit_length() - t.denominator.bit_length() < 500:
        return 2.0 * math.acosh(float(t) / 2.0)
    # arccosh(T/2) = ln T - O(1/T^2) for huge T
    return 2.0 * _frac_log(t)


@dataclass(frozen=True)
class Axis:
    """Invariant geodesic of a hyperbolic element, oriented toward the
    attracting fixed point; path parameter 0 at the circle summit."""

    repelling: float
    attracting: float
    path: H2Path
    translation_length: float

    @property
    def endpoints(self):
        return (self.repelling, self.attracting)


def axis(g: Isometry) -> Axis:
    if g.classify() is not IsometryClass.HYPERBOLIC:
        raise ClassError(f"axis needs a hyperbolic element: {g!r}")
    F, _ = g.scaled_floats()
    a, b, c, d = F[0, 0], F[0, 1], F[1, 0], F[1, 1]
    if g.c == 0:
        fixed = b / (d - a)
        if abs(g.a) > abs(g.d):
            rep, att = fixed, math.inf
        else:
            rep, att = math.inf, fixed
    else:
        # fixed points: roots of c t^2 + (d - a) t - b, via the stable form
        A, B, C = c, d - a, -b
        disc = B * B - 4.0 * A * C
        q = -0.5 * (B + math.copysign(math.sqrt(disc), B))
        r1, r2 = q / A, C / q
        # attracting root has |c t + d| > |c s + d| (derivative 1/(ct+d)^2)
        if abs(c * r1 + d) > abs(c * r2 + d):
            rep, att = r2, r1
        else:
            rep, att = r1, r2
    return Axis(rep, att, line(rep, att), translation_length(g))


# ---------------------------------------------------------------------------
# generating sets


@dataclass(frozen=True)
class GeneratingSet:
    """Named finite generating set; the symmetric closure derives inverses."""

    generators: tuple
    allow_identity: bool = False

    def __post_init__(self):
        gens = tuple((str(n), g) for n, g in self.generators)
        object.__setattr__(self, "generators", gens)
        names = [n for n, _ in gens]
        if not gens:
            raise InvalidInputError("generating set is empty")
        if len(set(names)) != len(names):
            raise InvalidInputError("generator names must be unique")
        if not self.allow_identity:
            for n, g in gens:
                if g.is_identity():
                    raise InvalidInputError(
                        f"generator {n!r} is the identity (set allow_identity to permit)")

    @classmethod
    def from_named(cls, pairs, allow_identity: bool = False) -> "GeneratingSet":
        return cls(tuple(pairs), allow_identity=allow_identity)

    def symmetric_closure(self):
        """Generators plus inverses, deduplicated by canonical form, in a
        deterministic order (listed order, inverses appended)."""
        out = []
        seen = {}
        for name, g in self.generators:
            if g not in seen:
                seen[g] = name
                out.append((name, g))
        for name, g in self.generators:
            gi = inverse(g)
            if gi not in seen:
                seen[gi] = f"{name}^-1"
                out.append((f"{name}^-1", gi))
        return out

    def name_map(self):
        return dict(self.symmetric_closure())

    def word_element(self, word) -> Isometry:
        table = self.name_map()
        g = Isometry.identity()
        for token in word:
            if token not in table:
                raise InvalidInputError(f"unknown generator name {token!r}")
            g = compose(g, table[token])
        return g
