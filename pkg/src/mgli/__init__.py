"""Multiscale Gauss linking integral (mGLI) features for curves and proteins."""
from mgli.errors import (
    ConvergenceError,
    DegenerateGeometryError,
    InvalidArgumentError,
    MGLIError,
    NotFoundError,
    PDBParseError,
    SingularConfigurationError,
    UndefinedCorrelationError,
)
from mgli.geometry import (
    ParametricCurve,
    Polyline,
    Segment,
    Segmentation,
    Structure,
    arclength_partition,
    partition_at,
    partition_structure,
    sample_parametric,
    transform,
)
from mgli.gli import (
    GLIMatrix,
    edge_pair_gli,
    grand_sum,
    polyline_gli,
    projection_crossing_estimate,
    quadrature_gli,
    segment_gli,
    segmentation_matrix,
)
from mgli.multiscale import FeatureMatrix, ScaleScheme, localized_features, scaled_matrix
from mgli.protein import ProteinChain, parse_pdb_ca, protein_features, protein_segmentation, read_pdb
from mgli.flexibility import FitOptions, FitReport, benchmark, fit_bfactor, pearson

__version__ = "0.1.0"
