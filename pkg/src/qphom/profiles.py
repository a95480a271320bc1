"""Built-in demo inputs."""

from __future__ import annotations

import numpy as np

from .ingest import TimeSeries

# Quarter-period samples of a unit sine over one full period: the values at
# t = 0, 1/4, 1/2, 3/4, 1 are exactly 0, 1, 0, -1, 0.  Regenerated from this
# exact table rather than from float sin(), whose residues (~1e-16) would
# perturb the integer birth/death scales.
_QUARTER_SINE = (0.0, 1.0, 0.0, -1.0)


def periodic_series(periods: int = 1) -> TimeSeries:
    """Unit sine sampled four times per period, closing the final period."""
    if periods < 1:
        raise ValueError("periods must be >= 1")
    count = 4 * periods + 1
    return TimeSeries(np.array([_QUARTER_SINE[i % 4] for i in range(count)]))
