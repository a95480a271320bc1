"""Simplices as vertex bitmasks.

Bit i of a mask is set exactly when vertex i belongs to the simplex; the
dimension is popcount-1.  Orientation is always the increasing vertex order,
so the l-th face of a simplex is obtained by deleting its l-th smallest
vertex, with sign (-1)^l.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator


def mask_from_vertices(vertices) -> int:
    mask = 0
    for v in vertices:
        if v < 0:
            raise ValueError(f"negative vertex index {v}")
        mask |= 1 << v
    return mask


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def simplex_dim(mask: int) -> int:
    return bin(mask).count("1") - 1


def enumerate_masks(n: int, k: int) -> list[int]:
    """All C(n, k+1) masks of k-simplices on n vertices, ascending."""
    masks = [mask_from_vertices(c) for c in combinations(range(n), k + 1)]
    masks.sort()
    return masks


def faces_of(mask: int) -> Iterator[tuple[int, int]]:
    """Yield (l, face_mask) for each codimension-1 face, l the deleted
    vertex's rank in increasing order."""
    for l, v in enumerate(vertices_of(mask)):
        yield l, mask & ~(1 << v)
