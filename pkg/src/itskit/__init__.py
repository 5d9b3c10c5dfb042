"""Interrupted time series analysis with a data-driven change point.

The mean of a monthly series is modeled as two straight lines joined at a
change point selected from a candidate window around the intervention month;
effect sizes (level change, trend change, response delay) come with formal
inference, the residuals get segment-wise AR(1) error models and diagnostic
tests, and the adaptive fit is benchmarked against fixed-break, censored,
and quadratic alternatives.
"""

from ._version import SCHEMA_VERSION, __version__
from .baselines import (
    BaselineFit,
    ComparisonEntry,
    ModelComparison,
    alt_param_fit,
    equivalence_map,
    mse_compare,
    quadratic_fit,
    segmented_censored,
    segmented_fixed,
)
from .changepoint import (
    EffectEstimates,
    Estimate,
    MeanFit,
    PhaseFit,
    effect_sizes,
    estimate_change_point,
    ols_segmented_fit,
    profile_loglik,
)
from .core import (
    AnalysisError,
    CandidateWindow,
    DegenerateFitError,
    PhaseTooShortError,
    TimeSeries,
    ValidationFailure,
    ValidationResult,
    calendar_to_index,
    index_to_calendar,
    validate_series,
)
from .io import parse_csv, series_to_csv
from .oracles import oracle_suite
from .pipeline import AnalysisConfig, AnalysisReport, run_pipeline
from .report import REPORT_SCHEMA, emit_report, report_to_dict
from .simulate import SimSpec, SimulatedSeries, generate, generate_details, seed_stream
from .stochastic import (
    ARFit,
    AcfSummary,
    CoefEstimate,
    NestedFTest,
    ResidualSet,
    VarianceComparison,
    acf,
    ar1_fit,
    compute_residuals,
    fit_stochastic,
    gls_reestimate,
    nested_f_from_rss,
    nested_f_test,
    variance_f_test,
    variance_ratio_test,
)

__all__ = [
    "SCHEMA_VERSION",
    "__version__",
    "AnalysisConfig",
    "AnalysisError",
    "AnalysisReport",
    "ARFit",
    "AcfSummary",
    "BaselineFit",
    "CandidateWindow",
    "CoefEstimate",
    "ComparisonEntry",
    "DegenerateFitError",
    "EffectEstimates",
    "Estimate",
    "MeanFit",
    "ModelComparison",
    "NestedFTest",
    "PhaseFit",
    "PhaseTooShortError",
    "REPORT_SCHEMA",
    "ResidualSet",
    "SimSpec",
    "SimulatedSeries",
    "TimeSeries",
    "ValidationFailure",
    "ValidationResult",
    "VarianceComparison",
    "acf",
    "alt_param_fit",
    "ar1_fit",
    "calendar_to_index",
    "compute_residuals",
    "effect_sizes",
    "emit_report",
    "equivalence_map",
    "estimate_change_point",
    "fit_stochastic",
    "generate",
    "generate_details",
    "gls_reestimate",
    "index_to_calendar",
    "mse_compare",
    "nested_f_from_rss",
    "nested_f_test",
    "ols_segmented_fit",
    "oracle_suite",
    "parse_csv",
    "profile_loglik",
    "quadratic_fit",
    "report_to_dict",
    "run_pipeline",
    "seed_stream",
    "segmented_censored",
    "segmented_fixed",
    "series_to_csv",
    "validate_series",
    "variance_f_test",
    "variance_ratio_test",
]
