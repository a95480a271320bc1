"""Scale sweeps: persistent Betti tables over a grid and their conversion
into persistence diagrams.

A table holds beta_k(eps_i, eps_j) for every grid pair i <= j, computed
either through the spectral pipeline (complexes via the membership oracle,
symmetric block operator, eigenvalue multiplicity) or through the exact
classical reduction.  Diagram multiplicities come from the inclusion-
exclusion difference

    mu(i, j) = beta(i, j-1) - beta(i, j) - beta(i-1, j-1) + beta(i-1, j)

with out-of-range indices read as the empty complex (beta = 0); classes
still alive at the last grid scale are emitted with death = inf.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import classical as classical_mod
from . import dirac
from .embedding import EmbeddingParams, delay_embed
from .errors import InconsistentTableError
from .oracles import QramModel
from .simplicial import VRComplex, build_vr

QUANTUM_SIM = "quantum-sim"
CLASSICAL = "classical"

INF = math.inf


@dataclass(frozen=True)
class ScaleGrid:
    """Strictly increasing non-negative scales."""

    scales: tuple[float, ...]

    def __post_init__(self):
        scales = tuple(float(s) for s in self.scales)
        object.__setattr__(self, "scales", scales)
        if not scales:
            raise ValueError("empty scale grid")
        if scales[0] < 0:
            raise ValueError(f"scales must be >= 0, got {scales[0]}")
        for a, b in zip(scales, scales[1:]):
            if b <= a:
                raise ValueError(f"scales must increase strictly: {a} then {b}")

    @classmethod
    def parse(cls, text: str) -> "ScaleGrid":
        """Parse 'start:stop:step' (inclusive endpoints) or a comma list."""
        text = text.strip()
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError(f"expected start:stop:step, got {text!r}")
            start, stop, step = (float(p) for p in parts)
            if step <= 0 or stop < start:
                raise ValueError(f"bad scale range {text!r}")
            count = int(math.floor((stop - start) / step + 1e-6)) + 1
            return cls(tuple(round(start + i * step, 10) for i in range(count)))
        return cls(tuple(float(p) for p in text.split(",") if p.strip()))

    def __len__(self) -> int:
        return len(self.scales)

    def __iter__(self) -> Iterator[float]:
        return iter(self.scales)

    def __getitem__(self, i: int) -> float:
        return self.scales[i]


@dataclass(eq=False)
class BettiTable:
    """beta_k over all grid pairs i <= j; cells below the diagonal unused."""

    k: int
    grid: ScaleGrid
    values: np.ndarray  # (m, m) int

    def value(self, i: int, j: int) -> int:
        if j < i:
            raise IndexError(f"need i <= j, got ({i}, {j})")
        return int(self.values[i, j])

    def set(self, i: int, j: int, v: int) -> None:
        self.values[i, j] = v

    def rows_json(self) -> list[list[int | None]]:
        m = len(self.grid)
        return [
            [self.value(i, j) if j >= i else None for j in range(m)]
            for i in range(m)
        ]

    def to_json_dict(self) -> dict:
        return {"k": self.k, "grid": list(self.grid), "rows": self.rows_json()}


def _empty_table(k: int, grid: ScaleGrid) -> BettiTable:
    m = len(grid)
    return BettiTable(k=k, grid=grid, values=np.zeros((m, m), dtype=int))


def build_grid_complexes(
    oracle: QramModel, params: EmbeddingParams, grid: ScaleGrid, kmax: int
) -> list[VRComplex]:
    """One complex per grid scale, tracked up to dimension kmax."""
    return [build_vr(oracle, params, eps, kmax) for eps in grid]


def betti_table_from_complexes(
    complexes: Sequence[VRComplex],
    grid: ScaleGrid,
    k: int,
    xi: int = 1,
    construction: str = dirac.DEFAULT_CONSTRUCTION,
    threads: int = 1,
) -> BettiTable:
    """Spectral-readout table from prebuilt per-scale complexes."""
    if len(complexes) != len(grid):
        raise ValueError("one complex per grid scale required")
    table = _empty_table(k, grid)
    pairs = [(i, j) for i in range(len(grid)) for j in range(i, len(grid))]

    def entry(ij):
        i, j = ij
        try:
            pb = dirac.persistent_boundary(complexes[i], complexes[j], k, construction)
            op = dirac.assemble_dirac(pb, xi)
            eig = dirac.spectrum(op)
            return i, j, dirac.betti_by_multiplicity(eig, xi)
        except Exception as exc:  # re-raise with the offending cell attached
            raise type(exc)(f"betti({k}; {grid[i]}, {grid[j]}): {exc}") from exc

    if threads == 1:
        results = map(entry, pairs)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(entry, pairs))
    for i, j, beta in results:
        table.set(i, j, beta)
    return table


def betti_table(
    oracle: QramModel,
    params: EmbeddingParams,
    grid: ScaleGrid,
    k: int,
    mode: str = QUANTUM_SIM,
    xi: int = 1,
    construction: str = dirac.DEFAULT_CONSTRUCTION,
    threads: int = 1,
) -> BettiTable:
    """Persistent Betti table over the grid in the requested mode.

    ``quantum-sim`` builds complexes through the membership oracle and reads
    multiplicities off the block-operator spectrum; ``classical`` runs the
    exact reduction on the embedded cloud and bypasses the oracle counters.
    """
    if k < 0:
        raise ValueError(f"homology dimension must be >= 0, got {k}")
    if mode == QUANTUM_SIM:
        complexes = build_grid_complexes(oracle, params, grid, k + 1)
        return betti_table_from_complexes(complexes, grid, k, xi, construction, threads)
    if mode == CLASSICAL:
        cloud = delay_embed(oracle.series, params)
        pairs = classical_mod.classical_persistence(cloud, k, max_scale=None)
        return betti_table_from_pairs(pairs, grid, k)
    raise ValueError(f"unknown mode {mode!r}")


def betti_table_from_pairs(pairs, grid: ScaleGrid, k: int) -> BettiTable:
    table = _empty_table(k, grid)
    for i in range(len(grid)):
        for j in range(i, len(grid)):
            table.set(i, j, classical_mod.betti_from_pairs(pairs, k, grid[i], grid[j]))
    return table


@dataclass(frozen=True)
class DiagramPoint:
    dimension: int
    birth: float
    death: float  # math.inf for classes surviving the grid
    multiplicity: int


def diagram_from_table(table: BettiTable) -> list[DiagramPoint]:
    """Diagram points with positive multiplicity, plus death = inf points
    for classes alive at the last scale.

    Raises ``InconsistentTableError`` on any negative multiplicity or on a
    row that increases along j: both indicate a Betti-computation bug.
    """
    grid = table.grid
    m = len(grid)

    def beta(i: int, j: int) -> int:
        if i < 0:
            return 0
        return table.value(i, j)

    for i in range(m):
        for j in range(i + 1, m):
            if table.value(i, j) > table.value(i, j - 1):
                raise InconsistentTableError(
                    f"beta_{table.k} increases along row {i} at column {j}"
                )

    points: list[DiagramPoint] = []
    for i in range(m):
        for j in range(i + 1, m):
            mu = beta(i, j - 1) - beta(i, j) - beta(i - 1, j - 1) + beta(i - 1, j)
            if mu < 0:
                raise InconsistentTableError(
                    f"negative multiplicity {mu} at grid cell ({i}, {j})"
                )
            if mu > 0:
                points.append(DiagramPoint(table.k, grid[i], grid[j], mu))
        essential = beta(i, m - 1) - beta(i - 1, m - 1)
        if essential < 0:
            raise InconsistentTableError(
                f"negative essential multiplicity {essential} at grid row {i}"
            )
        if essential > 0:
            points.append(DiagramPoint(table.k, grid[i], INF, essential))
    points.sort(key=lambda p: (p.dimension, p.birth, p.death))
    return points


def merge_diagrams(diagrams: Sequence[Sequence[DiagramPoint]]) -> list[DiagramPoint]:
    points = [p for d in diagrams for p in d]
    points.sort(key=lambda p: (p.dimension, p.birth, p.death))
    return points


def diagram_to_json(points: Sequence[DiagramPoint]) -> list[dict]:
    """Records sorted by (dimension, birth, death); infinite deaths are the
    string "inf"."""
    return [
        {
            "dimension": p.dimension,
            "birth": p.birth,
            "death": "inf" if math.isinf(p.death) else p.death,
            "multiplicity": p.multiplicity,
        }
        for p in sorted(points, key=lambda p: (p.dimension, p.birth, p.death))
    ]


_SVG_COLORS = ["#ff7f0e", "#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#8c564b"]


def diagram_to_svg(points: Sequence[DiagramPoint], axis_max: float | None = None) -> str:
    """600x600 scatter: birth on the horizontal axis, death vertical, marker
    area proportional to multiplicity, diagonal reference line; classes
    surviving the grid sit on the top margin band."""
    finite = [v for p in points for v in (p.birth, p.death) if math.isfinite(v)]
    if axis_max is None:
        axis_max = max(finite) if finite else 1.0
    if axis_max <= 0:
        axis_max = 1.0
    width = height = 600.0
    left, right, top, bottom = 70.0, 30.0, 40.0, 60.0
    span_x = width - left - right
    span_y = height - top - bottom

    def sx(v: float) -> float:
        return left + (v / axis_max) * span_x

    def sy(v: float) -> float:
        if math.isinf(v):
            return top  # infinity band
        return (height - bottom) - (v / axis_max) * span_y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:.0f} {height:.0f}">',
        "<style>"
        + "".join(
            f".dim-{k}{{fill:{c};fill-opacity:0.75;stroke:#333;stroke-width:0.5}}"
            for k, c in enumerate(_SVG_COLORS)
        )
        + ".axis{stroke:#000;stroke-width:1}.diag{stroke:#999;stroke-dasharray:4 3}"
        + ".lbl{font:13px sans-serif;fill:#000}.tick{font:11px sans-serif;fill:#333}"
        + "</style>",
        f'<line class="axis" x1="{left:.1f}" y1="{height - bottom:.1f}" '
        f'x2="{width - right:.1f}" y2="{height - bottom:.1f}"/>',
        f'<line class="axis" x1="{left:.1f}" y1="{height - bottom:.1f}" '
        f'x2="{left:.1f}" y2="{top:.1f}"/>',
        f'<line class="diag" x1="{sx(0):.1f}" y1="{sy(0):.1f}" '
        f'x2="{sx(axis_max):.1f}" y2="{sy(axis_max):.1f}"/>',
        f'<text class="lbl" x="{left + span_x / 2:.1f}" y="{height - 15:.1f}" '
        'text-anchor="middle">birth</text>',
        f'<text class="lbl" x="18" y="{top + span_y / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {top + span_y / 2:.1f})">death</text>',
        f'<text class="tick" x="{left:.1f}" y="{height - bottom + 16:.1f}" '
        'text-anchor="middle">0</text>',
        f'<text class="tick" x="{width - right:.1f}" y="{height - bottom + 16:.1f}" '
        f'text-anchor="middle">{axis_max:g}</text>',
        f'<text class="tick" x="{left - 8:.1f}" y="{top + 4:.1f}" '
        'text-anchor="end">&#8734;</text>',
    ]
    for p in sorted(points, key=lambda p: (p.dimension, p.birth, p.death)):
        r = 4.0 * math.sqrt(p.multiplicity)
        parts.append(
            f'<circle class="dim-{p.dimension % len(_SVG_COLORS)}" '
            f'cx="{sx(p.birth):.2f}" cy="{sy(p.death):.2f}" r="{r:.2f}">'
            f"<title>dim {p.dimension}: ({p.birth:g}, "
            f"{'inf' if math.isinf(p.death) else format(p.death, 'g')}) "
            f"x{p.multiplicity}</title></circle>"
        )
    parts.append("</svg>")
    return "\n".join(parts)
