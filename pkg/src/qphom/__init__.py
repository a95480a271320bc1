"""Persistent homology of time series through a delay embedding, with a
simulated quantum spectral readout and an exact classical verifier."""

from .classical import (
    FiltrationOrder,
    PersistencePair,
    TableDiscrepancy,
    betti_from_pairs,
    build_filtration,
    classical_persistence,
    compare,
)
from .dirac import (
    AS_WRITTEN,
    CONSTRUCTIONS,
    DEFAULT_CONSTRUCTION,
    RESTRICTED,
    DiracOperator,
    PersistentBoundary,
    QpeParams,
    assemble_dirac,
    betti_by_multiplicity,
    betti_by_qpe,
    choose_qpe_params,
    persistent_boundary,
    qpe_distribution,
    spectrum,
)
from .embedding import (
    EmbeddingParams,
    PointCloud,
    chebyshev_distance,
    delay_embed,
    distance_matrix,
)
from .errors import (
    DataError,
    InconsistentTableError,
    ReadoutQualityWarning,
    SpectralGapWarning,
)
from .ingest import TimeSeries, ValidationReport, load_csv, validate
from .oracles import OracleStats, QramModel
from .persistence import (
    BettiTable,
    DiagramPoint,
    ScaleGrid,
    betti_table,
    diagram_from_table,
    diagram_to_json,
    diagram_to_svg,
    merge_diagrams,
)
from .profiles import periodic_series
from .simplicial import (
    BoundaryMatrix,
    VRComplex,
    boundary_matrix,
    build_vr,
    enumerate_simplices,
    projector,
)

__version__ = "0.1.0"
