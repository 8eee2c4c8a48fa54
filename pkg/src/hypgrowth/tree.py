"""Rooted k-regular tree: the exact 0-hyperbolic reference space.

Vertices are addresses: tuples over a k-letter alphabet in which no letter
repeats consecutively (each letter is its own inverse, so such words are the
freely reduced ones).  The root is the empty tuple and every vertex has
degree k.  All distances are exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError


def tree_point(letters) -> tuple:
    """Build and validate a vertex address from an iterable of letters."""
    addr = tuple(int(x) for x in letters)
    for prev, cur in zip(addr, addr[1:]):
        if prev == cur:
            raise InvalidInputError(f"address not freely reduced: {addr}")
    return addr


def common_prefix_len(a: tuple, b: tuple) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def tree_distance(a: tuple, b: tuple) -> int:
    """Path distance: |a| + |b| - 2 * (common prefix length).  Exact."""
    return len(a) + len(b) - 2 * common_prefix_len(a, b)


@dataclass(frozen=True)
class TreePath:
    """Geodesic vertex path; unit-speed sampling lands on vertices only."""

    vertices: tuple

    @property
    def lo(self) -> float:
        return 0.0

    @property
    def hi(self) -> float:
        return float(len(self.vertices) - 1)

    @property
    def length(self) -> float:
        return self.hi

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    def vertex_at(self, t) -> tuple:
        i = int(round(float(t)))
        return self.vertices[min(max(i, 0), len(self.vertices) - 1)]

    def point_at(self, t):
        t = np.asarray(t, dtype=float)
        if t.ndim == 0:
            return self.vertex_at(float(t))
        return [self.vertex_at(v) for v in t]


class Tree:
    """Model-space adapter for the rooted k-regular tree."""

    def __init__(self, k: int = 3):
        if k < 2:
            raise InvalidInputError("tree degree must be >= 2")
        self.k = k
        self.name = f"tree:{k}"

    def check_point(self, p) -> tuple:
        addr = tree_point(p)
        if any(x < 0 or x >= self.k for x in addr):
            raise InvalidInputError(f"letter out of range for {self.name}: {addr}")
        return addr

    @staticmethod
    def distance(a, b) -> int:
        return tree_distance(a, b)

    def geodesic(self, a, b) -> TreePath:
        a, b = self.check_point(a), self.check_point(b)
        cp = common_prefix_len(a, b)
        up = [a[:i] for i in range(len(a), cp, -1)]
        down = [b[:i] for i in range(cp, len(b) + 1)]
        return TreePath(tuple(up + down))

    @staticmethod
    def pair_profile(p1: TreePath, p2: TreePath, ts):
        return np.array([tree_distance(p1.vertex_at(t), p2.vertex_at(t)) for t in ts],
                        dtype=float)

    @staticmethod
    def segment_profile(path: TreePath, ts, seg: TreePath):
        out = []
        for t in ts:
            v = path.vertex_at(t)
            out.append(min(tree_distance(v, w) for w in seg.vertices))
        return np.array(out, dtype=float)

    @staticmethod
    def point_profile(point, path: TreePath, ts):
        return np.array([tree_distance(point, path.vertex_at(t)) for t in ts],
                        dtype=float)

    @staticmethod
    def nearest_parameter(seg: TreePath, point) -> float:
        ds = [tree_distance(point, w) for w in seg.vertices]
        return float(ds.index(min(ds)))

    @staticmethod
    def grid_step(step: float) -> float:
        # vertices are the only exactly-representable sample points
        return 1.0
