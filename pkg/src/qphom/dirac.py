"""Persistent spectral readout of Betti numbers.

For a homology dimension k and scales eps <= eps', the pipeline assembles a
symmetric block operator

        [ -xi I    d_k      0      ]
    B = [ d_k^T   +xi I    d_{k+1} ]
        [ 0       d_{k+1}^T  -xi I ]

where d_k is the boundary within the complex at eps and d_{k+1} carries
(k+1)-chains from the complex at eps' into k-chains at eps.  An eigenvector
of B with eigenvalue +xi must have its outer components zero and its middle
component a k-cycle at eps killed by no admitted (k+1)-boundary, so the
multiplicity of +xi is the persistent Betti number.

Two constructions of the cross-scale block are provided:

* ``as-written``: rows of the full (k+1)-boundary at eps' are projected onto
  the k-simplices present at eps.  Projection can enlarge the image with
  chains that are not genuine boundaries inside the smaller complex, which
  may undercount the multiplicity across distinct scales.
* ``restricted``: the (k+1)-domain is first cut down (by a null-space
  construction) to chains whose full boundary already lies in the span of
  the eps k-simplices.  This matches rank-based ground truth on every tested
  instance and is the shipped default; see FINDINGS.md.

The readout is cross-checked by a simulated phase-estimation distribution:
with l repetitions and an M-point register the probability of reading p is
(1/N) * sum_s term(lambda_s), term = 1 exactly at p = l*lambda_s and
sin^2(pi l lambda_s) / (M^2 sin^2(pi (l lambda_s - p)/M)) otherwise, so
N * P(l*xi) reproduces the multiplicity of xi.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space

from .errors import ReadoutQualityWarning, SpectralGapWarning
from .simplicial import VRComplex, boundary_matrix

AS_WRITTEN = "as-written"
RESTRICTED = "restricted"
CONSTRUCTIONS = (AS_WRITTEN, RESTRICTED)

# Pinned by the oracle-equivalence experiment (see FINDINGS.md): the
# as-written projection disagrees with classical reduction on some
# cross-scale instances, the restricted construction on none.
DEFAULT_CONSTRUCTION = RESTRICTED

MULTIPLICITY_TOL = 1e-8
PHASE_MATCH_TOL = 1e-9


@dataclass(eq=False)
class PersistentBoundary:
    """The two boundary blocks for dimension k across scales low <= high.

    ``lower`` is the k-boundary inside the low complex, shape
    (n_{k-1}, n_k).  ``upper`` carries (k+1)-chains of the high complex to
    k-chains of the low complex; in the restricted construction its domain
    is re-expressed on an orthonormal basis (``domain_transform``) of the
    admissible chains, so its column count may be smaller than the number of
    (k+1)-simplices."""

    k: int
    scale_low: float
    scale_high: float
    lower: np.ndarray
    upper: np.ndarray
    basis_km1: tuple[int, ...]
    basis_k: tuple[int, ...]
    upper_domain: tuple[int, ...]
    construction: str
    domain_transform: np.ndarray | None = None


def persistent_boundary(
    low: VRComplex,
    high: VRComplex,
    k: int,
    construction: str = DEFAULT_CONSTRUCTION,
) -> PersistentBoundary:
    """Assemble the boundary blocks for dimension k from the complex at the
    smaller scale and the (k+1)-simplices of the larger one."""
    if construction not in CONSTRUCTIONS:
        raise ValueError(f"unknown construction {construction!r}")
    if low.scale > high.scale:
        raise ValueError(f"scale order violated: {low.scale} > {high.scale}")
    if k < 0:
        raise ValueError(f"homology dimension must be >= 0, got {k}")
    if low.kmax < k or high.kmax < k + 1:
        raise ValueError(
            f"complexes track dimensions up to {low.kmax}/{high.kmax}, "
            f"need {k}/{k + 1}"
        )

    basis_km1 = low.simplex_masks(k - 1) if k > 0 else ()
    basis_k = low.simplex_masks(k)
    lower = boundary_matrix(basis_k, basis_km1).matrix.astype(float)

    domain = high.simplex_masks(k + 1)
    rows_high = high.simplex_masks(k)
    low_set = set(basis_k)
    keep = np.array([m in low_set for m in rows_high], dtype=bool)
    if tuple(m for m in rows_high if m in low_set) != basis_k:
        raise ValueError("complexes are not nested: k-simplices at the smaller "
                         "scale are missing from the larger one")

    full = boundary_matrix(domain, rows_high).matrix.astype(float)
    projected = full[keep, :]
    dropped = full[~keep, :]

    transform = None
    if construction == RESTRICTED and dropped.shape[0] and dropped.shape[1]:
        transform = null_space(dropped)
        upper = projected @ transform
    else:
        upper = projected

    return PersistentBoundary(
        k=k,
        scale_low=low.scale,
        scale_high=high.scale,
        lower=lower,
        upper=upper,
        basis_km1=basis_km1,
        basis_k=basis_k,
        upper_domain=domain,
        construction=construction,
        domain_transform=transform,
    )


@dataclass(eq=False)
class DiracOperator:
    matrix: np.ndarray  # (N, N) float64, symmetric
    xi: int
    block_dims: tuple[int, int, int]

    @property
    def side(self) -> int:
        return int(self.matrix.shape[0])


def assemble_dirac(pb: PersistentBoundary, xi: int) -> DiracOperator:
    """Assemble the symmetric three-block operator; xi must be a nonzero
    integer so the counted eigenvalue cannot collide with harmonic zero
    modes.  For k=0 the first block is empty and only the lower-right 2x2
    block structure remains."""
    if xi == 0:
        raise ValueError("xi must be nonzero")
    a = len(pb.basis_km1)
    b = len(pb.basis_k)
    c = pb.upper.shape[1]
    n = a + b + c
    mat = np.zeros((n, n))
    mat[:a, :a] = -xi * np.eye(a)
    mat[a:a + b, a:a + b] = xi * np.eye(b)
    mat[a + b:, a + b:] = -xi * np.eye(c)
    mat[:a, a:a + b] = pb.lower
    mat[a:a + b, :a] = pb.lower.T
    mat[a:a + b, a + b:] = pb.upper
    mat[a + b:, a:a + b] = pb.upper.T
    return DiracOperator(matrix=mat, xi=int(xi), block_dims=(a, b, c))


def spectrum(op: DiracOperator) -> np.ndarray:
    """All eigenvalues of the symmetric operator, ascending (empty for N=0)."""
    if op.side == 0:
        return np.array([])
    return np.linalg.eigvalsh(op.matrix)


def betti_by_multiplicity(eigenvalues: np.ndarray, xi: int, tol: float = MULTIPLICITY_TOL) -> int:
    """Count eigenvalues within tol of xi.

    Warns when some eigenvalue falls in (tol, 10*tol] of xi: the count is
    then ambiguous at this tolerance."""
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    gaps = np.abs(eigenvalues - xi)
    near = np.sum((gaps > tol) & (gaps <= 10 * tol))
    if near:
        warnings.warn(
            f"{near} eigenvalue(s) within 10x of the counting tolerance {tol}",
            SpectralGapWarning,
            stacklevel=2,
        )
    return int(np.sum(gaps <= tol))


@dataclass(frozen=True)
class QpeParams:
    l: int  # repetitions: ceil of the inverse spectral gap around xi
    M: int  # register size: smallest power of 2 strictly above l * max|eigenvalue|

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("l must be >= 1")
        if self.M < 1 or self.M & (self.M - 1):
            raise ValueError("M must be a positive power of 2")


def choose_qpe_params(eigenvalues: np.ndarray, xi: int, tol: float = MULTIPLICITY_TOL) -> QpeParams:
    """l = ceil(1/gap) with gap the distance from xi to the nearest distinct
    eigenvalue (l = 1 when none exists); M = smallest power of 2 strictly
    greater than l * max|eigenvalue|."""
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    if eigenvalues.size == 0:
        raise ValueError("empty spectrum")
    gaps = np.abs(eigenvalues - xi)
    distinct = gaps[gaps > tol]
    if distinct.size == 0:
        l = 1
    else:
        l = max(1, math.ceil(1.0 / float(np.min(distinct)) - 1e-12))
    target = l * float(np.max(np.abs(eigenvalues)))
    m = 1
    while m <= target + 1e-9:
        m *= 2
    return QpeParams(l=l, M=m)


def qpe_term(lam: float, l: int, m: int, p: int) -> float:
    """Single-eigenvalue contribution to the readout distribution.

    Exactly 1 when p equals l*lam; exactly 0 when l*lam is a different
    integer (the sine numerator vanishes, so congruent register values do
    not alias); otherwise the M-periodic kernel
    sin^2(pi l lam) / (M^2 sin^2(pi (l lam - p) / M))."""
    x = l * lam - p
    if abs(x) < PHASE_MATCH_TOL:
        return 1.0
    if abs(l * lam - round(l * lam)) < PHASE_MATCH_TOL:
        return 0.0
    num = math.sin(math.pi * l * lam) ** 2
    den = math.sin(math.pi * x / m) ** 2
    return num / (m * m * den)


def qpe_distribution(eigenvalues: np.ndarray, params: QpeParams, p: int) -> float:
    """Probability of reading register value p, averaged over the spectrum."""
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    if eigenvalues.size == 0:
        raise ValueError("empty spectrum")
    if not 0 <= p < params.M:
        raise ValueError(f"register value {p} outside 0..{params.M - 1}")
    total = sum(qpe_term(float(lam), params.l, params.M, p) for lam in eigenvalues)
    return total / eigenvalues.size


def betti_by_qpe(eigenvalues: np.ndarray, xi: int) -> int:
    """Betti number via the simulated phase-estimation readout: N * P(l*xi)
    rounded to the nearest integer.  Agrees with ``betti_by_multiplicity``;
    warns when the rounding residue exceeds 0.25."""
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    if eigenvalues.size == 0:
        return 0
    params = choose_qpe_params(eigenvalues, xi)
    p = (params.l * xi) % params.M
    value = eigenvalues.size * qpe_distribution(eigenvalues, params, p)
    nearest = math.floor(value + 0.5)
    if abs(value - nearest) > 0.25:
        warnings.warn(
            f"readout residue {abs(value - nearest):.3f} at l={params.l}, M={params.M}",
            ReadoutQualityWarning,
            stacklevel=2,
        )
    return int(nearest)


def dirac_debug_record(pb: PersistentBoundary, op: DiracOperator,
                       eigenvalues: np.ndarray, beta: int) -> dict:
    """JSON-ready summary of one (k, eps, eps') assembly."""
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    record = {
        "k": pb.k,
        "scale_low": pb.scale_low,
        "scale_high": pb.scale_high,
        "construction": pb.construction,
        "block_dims": list(op.block_dims),
        "xi": op.xi,
        "spectrum": [float(v) for v in eigenvalues],
        "beta": beta,
    }
    if eigenvalues.size:
        params = choose_qpe_params(eigenvalues, op.xi)
        record["l"] = params.l
        record["M"] = params.M
    return record
