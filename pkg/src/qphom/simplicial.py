"""Vietoris-Rips complexes at a scale, boundary operators, and projectors.

A complex at scale eps holds, per dimension, the sorted bitmasks of every
simplex whose vertex pairs all pass the membership oracle at eps.  Boundary
matrices carry entries in {-1, 0, +1} under the increasing-vertex
orientation; projectors are 0/1 diagonal selections over a full simplex
basis.  Everything is materialized on explicit chain bases, never on the
2^n-dimensional ambient space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .embedding import EmbeddingParams
from .errors import DataError
from .masks import enumerate_masks, faces_of, simplex_dim, vertices_of

if TYPE_CHECKING:  # import only for annotations; oracles does not import us back
    from .oracles import QramModel


def enumerate_simplices(n: int, k: int) -> list[int]:
    """Sorted masks of all C(n, k+1) k-simplices on n vertices."""
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got k={k}, n={n}")
    return enumerate_masks(n, k)


@dataclass(frozen=True, eq=False)
class VRComplex:
    scale: float
    kmax: int
    n_vertices: int
    simplices: dict[int, tuple[int, ...]]  # dimension -> sorted masks

    def simplex_masks(self, k: int) -> tuple[int, ...]:
        return self.simplices.get(k, ())

    def simplex_count(self, k: int) -> int:
        return len(self.simplex_masks(k))

    def __contains__(self, mask: int) -> bool:
        return mask in self._mask_sets().get(simplex_dim(mask), frozenset())

    def _mask_sets(self) -> dict[int, frozenset[int]]:
        cached = getattr(self, "_sets", None)
        if cached is None:
            cached = {k: frozenset(v) for k, v in self.simplices.items()}
            object.__setattr__(self, "_sets", cached)
        return cached

    def to_json_dict(self) -> dict:
        return {
            "epsilon": self.scale,
            "simplices": {
                str(k): [list(vertices_of(m)) for m in self.simplex_masks(k)]
                for k in range(self.kmax + 1)
            },
        }


def build_vr(oracle: "QramModel", params: EmbeddingParams, scale: float, kmax: int) -> VRComplex:
    """Build the complex at ``scale`` up to dimension ``kmax`` by putting
    every candidate basis simplex through the membership oracle.

    The result contains exactly the simplices all of whose vertex pairs sit
    within ``scale``; equivalently a k-simplex enters exactly when its
    C(k+1,2) edges do.  With a noisy oracle, independent queries can
    disagree and leave a simplex without one of its faces; that is reported
    as a ``DataError`` naming the offending simplex rather than surfacing
    later as a broken boundary assembly.
    """
    if kmax < 0:
        raise ValueError(f"kmax must be >= 0, got {kmax}")
    if scale < 0:
        raise ValueError(f"scale must be >= 0, got {scale}")
    n = params.point_count(oracle.length)
    simplices: dict[int, tuple[int, ...]] = {}
    for k in range(kmax + 1):
        if k >= n:
            simplices[k] = ()
            continue
        simplices[k] = tuple(
            m for m in enumerate_masks(n, k) if oracle.membership(m, scale, params)
        )
    complex_ = VRComplex(scale=scale, kmax=kmax, n_vertices=n, simplices=simplices)
    if getattr(oracle, "noise", 0.0):
        _check_closure(complex_)
    return complex_


def _check_closure(complex_: VRComplex) -> None:
    for k in range(1, complex_.kmax + 1):
        present = set(complex_.simplex_masks(k - 1))
        for mask in complex_.simplex_masks(k):
            for _, face in faces_of(mask):
                if face not in present:
                    raise DataError(
                        f"noisy oracle produced a non-closed complex at scale "
                        f"{complex_.scale}: simplex {vertices_of(mask)} is present "
                        f"without its face {vertices_of(face)}"
                    )


@dataclass(frozen=True, eq=False)
class BoundaryMatrix:
    """Signed incidence matrix of k-simplices (columns) against their
    (k-1)-faces (rows); every column has exactly k+1 nonzeros with signs
    alternating along the increasing vertex order."""

    matrix: np.ndarray  # int8, shape (len(codomain), len(domain))
    domain: tuple[int, ...]
    codomain: tuple[int, ...]


def boundary_matrix(domain: Sequence[int], codomain: Sequence[int]) -> BoundaryMatrix:
    """Boundary operator from the span of ``domain`` (k-simplices) to the
    span of ``codomain`` ((k-1)-simplices).

    Vertices (k=0) map to zero: pass an empty codomain.  A face of a domain
    simplex missing from the codomain raises ``ValueError``.
    """
    domain = tuple(domain)
    codomain = tuple(codomain)
    dims = {simplex_dim(m) for m in domain}
    if len(dims) > 1:
        raise ValueError(f"domain mixes dimensions {sorted(dims)}")
    mat = np.zeros((len(codomain), len(domain)), dtype=np.int8)
    if not domain:
        return BoundaryMatrix(mat, domain, codomain)
    k = dims.pop()
    if k == 0:
        if codomain:
            raise ValueError("codomain of the vertex boundary must be empty")
        return BoundaryMatrix(mat, domain, codomain)
    row = {m: i for i, m in enumerate(codomain)}
    for c, mask in enumerate(domain):
        for l, face in faces_of(mask):
            if face not in row:
                raise ValueError(
                    f"face {vertices_of(face)} of simplex {vertices_of(mask)} "
                    "missing from codomain basis"
                )
            mat[row[face], c] = -1 if l % 2 else 1
    return BoundaryMatrix(mat, domain, codomain)


def projector(complex_: VRComplex, k: int, full_basis: Sequence[int]) -> np.ndarray:
    """0/1 diagonal over ``full_basis`` selecting the k-simplices present in
    the complex.  Idempotent by construction."""
    present = set(complex_.simplex_masks(k))
    return np.array([1 if m in present else 0 for m in full_basis], dtype=np.int8)
