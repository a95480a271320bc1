"""Exact persistent homology by boundary-matrix column reduction.

Ground truth for the spectral pipeline: simplices are ordered by appearance
scale (their Chebyshev diameter), the boundary matrix is reduced column by
column over the rationals, and the surviving pivot pairs give birth/death
scales per dimension.  No performance tricks: this module is a verifier,
not a speed contender.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import TYPE_CHECKING

from .embedding import PointCloud, distance_matrix
from .masks import mask_from_vertices

if TYPE_CHECKING:  # persistence imports this module at runtime
    from .persistence import BettiTable

INF = math.inf


@dataclass(frozen=True)
class FilteredSimplex:
    mask: int
    dim: int
    diameter: float


@dataclass(frozen=True)
class FiltrationOrder:
    """All simplices up to a dimension cap, sorted by (diameter, dim, mask);
    faces never appear after cofaces."""

    simplices: tuple[FilteredSimplex, ...]

    def __len__(self) -> int:
        return len(self.simplices)


def build_filtration(cloud: PointCloud, kmax: int, max_scale: float | None = None) -> FiltrationOrder:
    """Enumerate simplices of dimension <= kmax with their appearance scale,
    optionally truncated to diameters <= max_scale."""
    if cloud.n < 1:
        raise ValueError("empty point cloud")
    dist = distance_matrix(cloud)
    items: list[FilteredSimplex] = []
    for k in range(min(kmax, cloud.n - 1) + 1):
        for combo in combinations(range(cloud.n), k + 1):
            diam = 0.0
            for a, b in combinations(combo, 2):
                d = float(dist[a, b])
                if d > diam:
                    diam = d
            if max_scale is not None and diam > max_scale:
                continue
            items.append(FilteredSimplex(mask_from_vertices(combo), k, diam))
    items.sort(key=lambda s: (s.diameter, s.dim, s.mask))
    return FiltrationOrder(tuple(items))


@dataclass(frozen=True)
class PersistencePair:
    dim: int
    birth: float
    death: float  # math.inf when the class survives the whole filtration


def _reduce(order: FiltrationOrder) -> list[tuple[int, int]]:
    """Standard column reduction over Q; returns (birth_index, death_index)
    pivot pairs in filtration positions."""
    position = {s.mask: i for i, s in enumerate(order.simplices)}
    columns: list[dict[int, Fraction]] = []
    pivot_of_low: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []
    one = Fraction(1)
    for j, simplex in enumerate(order.simplices):
        col: dict[int, Fraction] = {}
        if simplex.dim > 0:
            mask = simplex.mask
            sign = one
            m = mask
            l = 0
            while m:
                v = (m & -m).bit_length() - 1
                face = mask & ~(1 << v)
                col[position[face]] = -one if l % 2 else one
                m &= m - 1
                l += 1
        while col:
            low = max(col)
            if low not in pivot_of_low:
                break
            other = columns[pivot_of_low[low]]
            factor = col[low] / other[low]
            for r, val in other.items():
                new = col.get(r, 0) - factor * val
                if new:
                    col[r] = new
                else:
                    col.pop(r, None)
        columns.append(col)
        if col:
            low = max(col)
            pivot_of_low[low] = j
            pairs.append((low, j))
    return pairs


def classical_persistence(cloud: PointCloud, kmax: int, max_scale: float | None = None) -> list[PersistencePair]:
    """Birth/death pairs for homology dimensions 0..kmax.

    The filtration internally extends to dimension kmax+1 so that deaths in
    dimension kmax are seen.  Pairs with birth == death are dropped.  With
    ``max_scale`` set, simplices past that scale are omitted and classes
    still alive there are reported with death = inf; queries are then only
    meaningful for scales <= max_scale.
    """
    order = build_filtration(cloud, kmax + 1, max_scale)
    raw = _reduce(order)
    killed = set()
    pairs: list[PersistencePair] = []
    for low, j in raw:
        killed.add(low)
        killed.add(j)
        birth = order.simplices[low]
        death = order.simplices[j]
        if birth.dim <= kmax and death.diameter > birth.diameter:
            pairs.append(PersistencePair(birth.dim, birth.diameter, death.diameter))
    for i, s in enumerate(order.simplices):
        if i not in killed and s.dim <= kmax:
            pairs.append(PersistencePair(s.dim, s.diameter, INF))
    pairs.sort(key=lambda p: (p.dim, p.birth, p.death))
    return pairs


def betti_from_pairs(pairs: list[PersistencePair], k: int, eps: float, eps_prime: float) -> int:
    """Persistent Betti number implied by a pairing: classes of dimension k
    born by eps and not yet dead at eps_prime (death strictly later)."""
    if eps > eps_prime:
        raise ValueError(f"need eps <= eps', got {eps} > {eps_prime}")
    return sum(1 for p in pairs if p.dim == k and p.birth <= eps and p.death > eps_prime)


@dataclass(frozen=True)
class TableDiscrepancy:
    i: int
    j: int
    left: int
    right: int


def compare(a: "BettiTable", b: "BettiTable") -> list[TableDiscrepancy]:
    """Cell-by-cell discrepancies between two tables on the same grid and
    dimension; an empty list means equivalence."""
    if a.k != b.k:
        raise ValueError(f"dimension mismatch: {a.k} vs {b.k}")
    if tuple(a.grid.scales) != tuple(b.grid.scales):
        raise ValueError("grid mismatch")
    out = []
    m = len(a.grid)
    for i in range(m):
        for j in range(i, m):
            va = a.value(i, j)
            vb = b.value(i, j)
            if va != vb:
                out.append(TableDiscrepancy(i, j, va, vb))
    return out
