"""Indexed-read model of the stored series with query accounting.

``QramModel`` answers three kinds of queries: an exact read of x_t, a
comparator bit [|x_t1 - x_t2| <= eps] costing two reads, and a simplex
membership bit that checks every coordinate pair of a candidate simplex and
may stop at the first failing comparison.  A k-simplex query therefore makes
at most dim*k*(k+1)/2 comparator calls; counters record both the actual and
the worst-case totals, per simplex dimension.

Comparisons are exact by default.  The accounting accuracy ``delta`` only
scales the reported device-cost estimates; setting ``noise`` > 0 instead
perturbs each compared difference uniformly in [-noise, noise] for
robustness experiments (seeded, off by default).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .embedding import EmbeddingParams
from .ingest import TimeSeries
from .masks import vertices_of


@dataclass
class DimensionStats:
    """Per-simplex-dimension membership accounting."""

    queries: int = 0
    comparator_calls: int = 0
    max_calls_per_query: int = 0
    bound_per_query: int = 0


@dataclass
class OracleStats:
    qram_reads: int = 0
    comparator_calls: int = 0
    membership_calls: int = 0
    worst_case_comparator_calls: int = 0
    delta: float = 1.0
    series_length: int = 0
    per_dimension: dict[int, DimensionStats] = field(default_factory=dict)

    @property
    def estimated_qram_cost(self) -> int:
        """Device-model QRAM calls: each comparator needs ceil(1/delta) reads
        per operand to reach accuracy delta."""
        return self.comparator_calls * math.ceil(1.0 / self.delta)

    @property
    def estimated_gate_cost(self) -> int:
        """Gate-count estimate: ceil(1/delta) * (log2 T)^2 per comparator."""
        log_t = max(1, math.ceil(math.log2(max(self.series_length, 2))))
        return self.comparator_calls * math.ceil(1.0 / self.delta) * log_t * log_t


class QramModel:
    """Exact lookup table over a series, with monotone query counters."""

    def __init__(
        self,
        series: TimeSeries,
        delta: float = 1.0,
        noise: float = 0.0,
        rng: np.random.Generator | None = None,
    ):
        if delta <= 0:
            raise ValueError(f"accuracy delta must be positive, got {delta}")
        if noise < 0:
            raise ValueError(f"noise amplitude must be >= 0, got {noise}")
        self.series = series
        self.delta = float(delta)
        self.noise = float(noise)
        self._rng = rng if rng is not None else np.random.default_rng(0)
        self.qram_reads = 0
        self.comparator_calls = 0
        self.membership_calls = 0
        self.worst_case_comparator_calls = 0
        self.per_dimension: dict[int, DimensionStats] = {}

    @property
    def length(self) -> int:
        return len(self.series)

    def read(self, t: int) -> float:
        """Return x_t for a 1-based index t."""
        if not 1 <= t <= self.length:
            raise IndexError(f"time index {t} out of range 1..{self.length}")
        self.qram_reads += 1
        return float(self.series.values[t - 1])

    def comparator(self, t1: int, t2: int, eps: float) -> int:
        """1 if |x_t1 - x_t2| <= eps else 0 (non-strict threshold)."""
        x1 = self.read(t1)
        x2 = self.read(t2)
        self.comparator_calls += 1
        diff = abs(x1 - x2)
        if self.noise:
            diff += float(self._rng.uniform(-self.noise, self.noise))
        return 1 if diff <= eps else 0

    def membership(self, mask: int, eps: float, params: EmbeddingParams) -> int:
        """1 iff every coordinate pair of the simplex passes the comparator
        at scale eps, i.e. the simplex belongs to the complex at eps.

        Vertices are 0-based indices into the embedded cloud of
        ``params.point_count(T)`` points; vertex i occupies time indices
        i+1, i+1+tau, ..., i+1+(dim-1)*tau.
        """
        verts = vertices_of(mask)
        if not verts:
            raise ValueError("empty simplex mask")
        n = params.point_count(self.length)
        if verts[-1] >= n:
            raise IndexError(
                f"vertex {verts[-1]} out of range for a cloud of {n} points"
            )
        k = len(verts) - 1
        bound = params.dim * k * (k + 1) // 2

        calls = 0
        result = 1
        for a in range(len(verts)):
            for b in range(a + 1, len(verts)):
                for t in range(params.dim):
                    i = verts[a] + 1 + t * params.tau
                    j = verts[b] + 1 + t * params.tau
                    calls += 1
                    if not self.comparator(i, j, eps):
                        result = 0
                        break
                if result == 0:
                    break
            if result == 0:
                break

        self.membership_calls += 1
        self.worst_case_comparator_calls += bound
        stats = self.per_dimension.setdefault(k, DimensionStats())
        stats.queries += 1
        stats.comparator_calls += calls
        stats.max_calls_per_query = max(stats.max_calls_per_query, calls)
        stats.bound_per_query = bound
        return result

    def call_report(self) -> OracleStats:
        """Snapshot of the counters plus derived cost estimates."""
        return OracleStats(
            qram_reads=self.qram_reads,
            comparator_calls=self.comparator_calls,
            membership_calls=self.membership_calls,
            worst_case_comparator_calls=self.worst_case_comparator_calls,
            delta=self.delta,
            per_dimension={
                k: DimensionStats(
                    s.queries, s.comparator_calls, s.max_calls_per_query, s.bound_per_query
                )
                for k, s in sorted(self.per_dimension.items())
            },
            series_length=self.length,
        )

    def fork(self) -> "QramModel":
        """Fresh counters over the same backing series, for per-task
        accumulation; merge back with ``absorb``."""
        return QramModel(self.series, delta=self.delta, noise=self.noise,
                         rng=np.random.default_rng(self._rng.integers(2**63)))

    def absorb(self, other: "QramModel") -> None:
        self.qram_reads += other.qram_reads
        self.comparator_calls += other.comparator_calls
        self.membership_calls += other.membership_calls
        self.worst_case_comparator_calls += other.worst_case_comparator_calls
        for k, s in other.per_dimension.items():
            mine = self.per_dimension.setdefault(k, DimensionStats())
            mine.queries += s.queries
            mine.comparator_calls += s.comparator_calls
            mine.max_calls_per_query = max(mine.max_calls_per_query, s.max_calls_per_query)
            mine.bound_per_query = max(mine.bound_per_query, s.bound_per_query)
