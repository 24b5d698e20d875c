"""Polyhedral cone dominance, efficiency tests, and balanced-attribute ranking."""

from .assess import (
    AssessmentSpec,
    Classification,
    ContourGrid,
    DomainError,
    Family,
    GridAxis,
    P_TO_NEG_INF,
    P_TO_POS_INF,
    P_TO_ZERO,
    benchmark_curve_point,
    benchmark_curve_values,
    classify,
    contour_sample,
    evaluate,
    pdia_witness,
)
from .cones import (
    PLUS_INFINITY,
    AttributeVector,
    ConeCoordinates,
    ConeShape,
    PolyCone,
    classify_cone,
    cone_contains,
    cone_coordinates,
    dominates,
)
from .data_io import (
    DatasetSchema,
    EPI_SCHEMA,
    fixture_epi_sample,
    load_csv,
    load_scores,
    save_csv,
)
from .efficiency import (
    AlternativeSet,
    EfficiencyRecord,
    EfficiencyReport,
    OffsetSet,
    ScalarizationParams,
    efficiency_test,
    efficient_subset,
    improperness_witness_circle,
    maximize_scalarization,
    offset_set,
    proper_efficiency_certificate,
    scalarization_value,
    tradeoff_constant,
)
from .ranking import (
    EPI_WEIGHTS,
    RankingComparison,
    RankingResult,
    WeightVector,
    apply_weights,
    compare_rankings,
    epi_composite,
    rank,
)

__version__ = "0.1.0"
