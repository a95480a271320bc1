"""Takens delay embedding and the delay-coordinate distance.

A series x_1..x_T with embedding dimension ``dim`` and delay ``tau`` yields
the points v_i = (x_i, x_{i+tau}, ..., x_{i+(dim-1)tau}) for
i = 1..T-(dim-1)tau.  Distances between embedded points are measured in the
coordinate-wise maximum (Chebyshev) metric, which is what the membership
oracle evaluates one coordinate comparison at a time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .ingest import TimeSeries


@dataclass(frozen=True)
class EmbeddingParams:
    dim: int
    tau: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"embedding dimension must be >= 1, got {self.dim}")
        if self.tau < 1:
            raise ValueError(f"delay must be >= 1, got {self.tau}")

    def point_count(self, series_length: int) -> int:
        return series_length - (self.dim - 1) * self.tau


@dataclass(frozen=True, eq=False)
class PointCloud:
    points: np.ndarray  # shape (n, dim)
    params: EmbeddingParams

    @property
    def n(self) -> int:
        return int(self.points.shape[0])


def delay_embed(ts: TimeSeries, params: EmbeddingParams) -> PointCloud:
    """Embed a series into ``point_count`` points of dimension ``dim``.

    Raises ``DataError`` when the parameters leave no points, i.e. when
    T <= (dim-1)*tau.
    """
    n = params.point_count(len(ts))
    if n < 1:
        raise DataError(
            f"series of length {len(ts)} leaves no embedded points for "
            f"dim={params.dim}, tau={params.tau}"
        )
    index = np.arange(n)[:, None] + np.arange(params.dim)[None, :] * params.tau
    return PointCloud(ts.values[index], params)


def chebyshev_distance(v, w) -> float:
    """Coordinate-wise maximum absolute difference of two equal-length points."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    if v.shape != w.shape:
        raise ValueError(f"dimension mismatch: {v.shape} vs {w.shape}")
    return float(np.max(np.abs(v - w)))


def distance_matrix(cloud: PointCloud) -> np.ndarray:
    """Symmetric n x n matrix of pairwise Chebyshev distances, zero diagonal."""
    p = cloud.points
    return np.max(np.abs(p[:, None, :] - p[None, :, :]), axis=2)
