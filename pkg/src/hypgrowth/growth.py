"""Cayley-ball enumeration with exact projective dedupe, and growth estimates.

Counts are exact: elements are deduplicated by canonical rational matrix
form, never by floating point.  The enumerator tracks entry bit sizes and an
element budget, aborting with a partial census rather than degrading.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetError, InvalidInputError
from .isometry import GeneratingSet, Isometry, compose

DEFAULT_MAX_ELEMENTS = 2_000_000
DEFAULT_MAX_ENTRY_BITS = 200_000


def generating_set_hash(S: GeneratingSet) -> str:
    blob = json.dumps([[n, g.matrix_literal()] for n, g in S.generators],
                      sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class BallCensus:
    """|B_S(r)| for r = 0..k, by breadth-first word enumeration."""

    radii: tuple
    counts: tuple
    generating_set_hash: str
    complete: bool = True

    def to_json_dict(self) -> dict:
        return {"radii": list(self.radii), "counts": list(self.counts),
                "generating_set_hash": self.generating_set_hash,
                "complete": self.complete}

    def to_csv(self) -> str:
        lines = ["radius,count"]
        lines += [f"{r},{c}" for r, c in zip(self.radii, self.counts)]
        return "\n".join(lines) + "\n"


def _entry_bits(g: Isometry) -> int:
    return max(max(f.numerator.bit_length(), f.denominator.bit_length())
               for f in g.entries())


def _expand_chunk(chunk, closure_elements):
    return [compose(g, s) for g in chunk for s in closure_elements]


def enumerate_ball(S: GeneratingSet, k: int, *,
                   max_elements: int = DEFAULT_MAX_ELEMENTS,
                   max_entry_bits: int = DEFAULT_MAX_ENTRY_BITS,
                   workers: int = 1) -> BallCensus:
    """Breadth-first census of the radius-k ball in the Cayley graph.

    Deterministic: elements are discovered in (word length, generator order)
    order, and parallel frontier expansion merges results in that same order,
    so counts are identical for any `workers` value.

    Raises BudgetError (carrying the partial census, flagged incomplete) if
    the element or entry-size budget is exceeded.
    """
    if k < 0:
        raise InvalidInputError("radius must be nonnegative")
    closure = [g for _, g in S.symmetric_closure()]
    gs_hash = generating_set_hash(S)

    ident = Isometry.identity()
    seen = {ident}
    frontier = [ident]
    counts = [1]
    for _ in range(k):
        if workers > 1 and len(frontier) > 1:
            chunks = [frontier[i::workers] for i in range(workers)]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                products = list(pool.map(lambda ch: _expand_chunk(ch, closure), chunks))
            # deterministic merge: reassemble in original frontier order
            candidates = []
            m = len(closure)
            for j in range(len(frontier)):
                chunk_idx, pos = j % workers, j // workers
                candidates.extend(products[chunk_idx][pos * m:(pos + 1) * m])
        else:
            candidates = _expand_chunk(frontier, closure)

        new = []
        for g in candidates:
            if g in seen:
                continue
            if _entry_bits(g) > max_entry_bits:
                partial = BallCensus(tuple(range(len(counts))), tuple(counts),
                                     gs_hash, complete=False)
                raise BudgetError("entry bit-size budget exceeded", census=partial)
            seen.add(g)
            new.append(g)
            if len(seen) > max_elements:
                partial = BallCensus(tuple(range(len(counts))), tuple(counts),
                                     gs_hash, complete=False)
                raise BudgetError("element budget exceeded", census=partial)
        frontier = new
        counts.append(len(seen))
    return BallCensus(tuple(range(k + 1)), tuple(counts), gs_hash)


def ball_with_words(S: GeneratingSet, k: int, *,
                    max_elements: int = DEFAULT_MAX_ELEMENTS):
    """Ordered dict element -> shortest word (tuple of closure names), in the
    same deterministic order the census uses."""
    closure = S.symmetric_closure()
    ident = Isometry.identity()
    words = {ident: ()}
    frontier = [ident]
    for _ in range(k):
        new = []
        for g in frontier:
            base = words[g]
            for name, s in closure:
                gs = compose(g, s)
                if gs not in words:
                    words[gs] = base + (name,)
                    new.append(gs)
                    if len(words) > max_elements:
                        raise BudgetError("element budget exceeded in word scan")
        frontier = new
    return words


@dataclass(frozen=True)
class GrowthEstimate:
    """Per-radius growth roots; no extrapolated limit is claimed."""

    omega_k: tuple
    entropy_k: tuple
    omega_monotone: bool
    omega_lower: Optional[float] = None

    def to_json_dict(self) -> dict:
        return {"omega_k": list(self.omega_k), "entropy_k": list(self.entropy_k),
                "omega_monotone": self.omega_monotone,
                "omega_lower": self.omega_lower}


def growth_estimate(census: BallCensus, omega_lower: Optional[float] = None) -> GrowthEstimate:
    if not census.complete:
        raise InvalidInputError("growth estimate needs a complete census")
    if census.radii[-1] < 1:
        raise InvalidInputError("growth estimate needs radius >= 1")
    omega = tuple(census.counts[r] ** (1.0 / r) for r in census.radii[1:])
    entropy = tuple(math.log(w) for w in omega)
    monotone = all(b <= a + 1e-12 for a, b in zip(omega, omega[1:]))
    return GrowthEstimate(omega, entropy, monotone, omega_lower)


def free_pair_growth_bound(cert, word_len_g: Optional[int] = None,
                           word_len_h: Optional[int] = None) -> float:
    """Growth-rate lower bound 2^(1/max word length) from a certified free
    pair: the 2^k positive words of length k in {g, h} are distinct and have
    generator length <= k * max, so |B(k * max)| >= 2^k."""
    if word_len_g is None:
        if cert is None or cert.g_word is None:
            raise InvalidInputError("word length for g unavailable")
        word_len_g = len(cert.g_word)
    if word_len_h is None:
        if cert is None or cert.h_word is None:
            raise InvalidInputError("word length for h unavailable")
        word_len_h = len(cert.h_word)
    if word_len_g < 1 or word_len_h < 1:
        raise InvalidInputError("word lengths must be positive")
    return 2.0 ** (1.0 / max(word_len_g, word_len_h))
