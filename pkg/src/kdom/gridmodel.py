"""The finite grid graph, its k-margin, and domination verification.

Grid vertices are the lattice points [0, m-1] x [0, n-1]; graph distance
between orthogonal neighbors equals Manhattan distance.  Dominators may
lie outside the grid (the construction keeps them in the enlarged box Y
until the final projection), so the verifier works on the grid enlarged
by k on every side and reads off the grid portion.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .lattice import (
    MAX_BOX_SIDE,
    Box,
    LatticePoint,
    Radius,
    VertexSet,
)

__all__ = [
    "GridDims",
    "VertexSet",
    "CoverageReport",
    "grid_box",
    "neighborhood_box",
    "grid_distance",
    "verify_domination",
    "is_dominating",
]


@dataclass(frozen=True)
class GridDims:
    """Grid dimensions: m columns (i in [0, m-1]), n rows (j in [0, n-1])."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise DomainError(f"grid dims must be >= 1, got {self.m}x{self.n}")
        if self.m > MAX_BOX_SIDE or self.n > MAX_BOX_SIDE:
            raise DomainError(f"grid side exceeds the supported cap {MAX_BOX_SIDE}")

    @property
    def area(self) -> int:
        return self.m * self.n


@dataclass(frozen=True)
class CoverageReport:
    """Per-vertex nearest-dominator summary for one verification run."""

    dims: GridDims
    k: Radius
    covered_count: int
    uncovered: VertexSet
    max_nearest_distance: int
    multiplicity_histogram: dict[int, int]


def grid_box(dims: GridDims) -> Box:
    """The grid as a lattice box [0, m-1] x [0, n-1]."""
    return Box(0, dims.m - 1, 0, dims.n - 1)


def neighborhood_box(dims: GridDims, k: Radius) -> Box:
    """The grid enlarged by k rows and columns on every side."""
    return Box(-k.k, dims.m + k.k - 1, -k.k, dims.n + k.k - 1)


def grid_distance(a: LatticePoint, b: LatticePoint) -> int:
    """Graph distance on the grid lattice: |di| + |dj|."""
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def _box_distance(dims: GridDims, point: LatticePoint) -> int:
    """Manhattan distance from a point to the nearest grid vertex."""
    i, j = point
    di = max(0, -i, i - (dims.m - 1))
    dj = max(0, -j, j - (dims.n - 1))
    return di + dj


def _relevant_sources(dims: GridDims, k: Radius, s: VertexSet) -> list[LatticePoint]:
    # Points farther than k from the grid cannot cover any grid vertex;
    # dropping them keeps the working array bounded by the k-margin.
    return [q for q in s if _box_distance(dims, q) <= k.k]


def _nearest_distances(dims: GridDims, k: Radius, s: VertexSet) -> np.ndarray:
    """m x n array of nearest-dominator distances, truncated at k+1.

    Synchronous min-plus dilation: after t rounds every vertex within
    distance t of a source carries its exact distance; k+1 rounds leave
    anything farther at the k+1 sentinel.
    """
    kk = k.k
    m, n = dims.m, dims.n
    sentinel = kk + 1
    big = np.full((m + 2 * kk, n + 2 * kk), sentinel, dtype=np.int32)
    for (i, j) in _relevant_sources(dims, k, s):
        big[i + kk, j + kk] = 0
    for _ in range(kk + 1):
        prev = big
        big = prev.copy()
        np.minimum(big[1:, :], prev[:-1, :] + 1, out=big[1:, :])
        np.minimum(big[:-1, :], prev[1:, :] + 1, out=big[:-1, :])
        np.minimum(big[:, 1:], prev[:, :-1] + 1, out=big[:, 1:])
        np.minimum(big[:, :-1], prev[:, 1:] + 1, out=big[:, :-1])
        np.minimum(big, sentinel, out=big)
    return big[kk:kk + m, kk:kk + n]


def _multiplicity(dims: GridDims, k: Radius, s: VertexSet) -> np.ndarray:
    """m x n array counting dominators within distance k of each vertex."""
    kk = k.k
    m, n = dims.m, dims.n
    ind = np.zeros((m + 2 * kk, n + 2 * kk), dtype=np.int32)
    for (i, j) in _relevant_sources(dims, k, s):
        ind[i + kk, j + kk] += 1
    mult = np.zeros((m, n), dtype=np.int32)
    for dx in range(-kk, kk + 1):
        span = kk - abs(dx)
        for dy in range(-span, span + 1):
            mult += ind[kk + dx:kk + dx + m, kk + dy:kk + dy + n]
    return mult


def verify_domination(dims: GridDims, k: Radius, s: VertexSet) -> CoverageReport:
    """Exact coverage report; an empty s yields all vertices uncovered."""
    dist = _nearest_distances(dims, k, s)
    uncovered_mask = dist > k.k
    ui, uj = np.nonzero(uncovered_mask)
    uncovered = VertexSet.from_iterable(
        (int(i), int(j)) for i, j in zip(ui.tolist(), uj.tolist())
    )
    mult = _multiplicity(dims, k, s)
    counts, freqs = np.unique(mult, return_counts=True)
    histogram = {int(c): int(f) for c, f in zip(counts, freqs)}
    return CoverageReport(
        dims=dims,
        k=k,
        covered_count=dims.area - len(uncovered),
        uncovered=uncovered,
        max_nearest_distance=int(dist.max()),
        multiplicity_histogram=histogram,
    )


def is_dominating(dims: GridDims, k: Radius, s: VertexSet) -> bool:
    """True iff every grid vertex has a dominator within distance k."""
    return bool((_nearest_distances(dims, k, s) <= k.k).all())
