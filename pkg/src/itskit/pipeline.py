"""End-to-end analysis pipeline.

Composes the stages in order: validation, change-point selection, effect
sizes, residual diagnostics, AR error modeling, the gated variance
comparison, an optional GLS re-estimation pass, and the baseline fits. The
result carries every sub-result (or an explicit reason why one was skipped)
plus provenance sufficient to reproduce the run.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from ._version import SCHEMA_VERSION, __version__
from .baselines import (
    BaselineFit,
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
    MeanFit,
    effect_sizes,
    estimate_change_point,
)
from .core import CandidateWindow, TimeSeries, ValidationResult, validate_series
from .stochastic import (
    ARFit,
    ResidualSet,
    VarianceComparison,
    compute_residuals,
    fit_stochastic,
    gls_reestimate,
    variance_f_test,
)


@dataclass(frozen=True)
class AnalysisConfig:
    """Run parameters for one analysis.

    ``intervention`` is the 1-based index of the intervention month;
    ``before``/``after`` set the candidate window around it. ``censor`` is
    the index set dropped by the censored baseline (None means the candidate
    window). ``gls`` requests the re-estimation pass, iterated
    ``gls_iterations`` times. ``workers`` only parallelizes the candidate
    search and never changes results.
    """

    intervention: int
    before: int = 0
    after: int = 0
    censor: tuple[int, ...] | None = None
    gls: bool = False
    gls_iterations: int = 1
    workers: int | None = None

    def __post_init__(self):
        if self.censor is not None:
            object.__setattr__(self, "censor", tuple(int(c) for c in self.censor))
        if self.gls_iterations < 1:
            raise ValueError("gls_iterations must be >= 1")

    @property
    def window(self) -> CandidateWindow:
        return CandidateWindow(
            intervention=self.intervention, before=self.before, after=self.after
        )


@dataclass(frozen=True)
class NoiseDiagnostics:
    """White-noise verdicts for the residual segments.

    ``by_phi``: both AR coefficient CIs cover zero (this gates the variance
    comparison). ``by_acf``: lag-1 sample autocorrelation within the
    +/- 2/sqrt(n) band in both segments.
    """

    phi_pre_covers_zero: bool
    phi_post_covers_zero: bool
    by_phi: bool
    acf_pre_within_band: bool
    acf_post_within_band: bool
    by_acf: bool


@dataclass(frozen=True)
class Provenance:
    """Inputs identifying a run: data hash, config echo, software version."""

    input_sha256: str
    config: dict
    version: str
    schema_version: str


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    """Complete result of one pipeline run."""

    series: TimeSeries
    config: AnalysisConfig
    validation: ValidationResult
    mean_fit: MeanFit
    effects: EffectEstimates
    residuals: ResidualSet
    ar_fit: ARFit
    variance_comparison: VarianceComparison
    noise: NoiseDiagnostics
    gls_fit: MeanFit | None
    gls_effects: EffectEstimates | None
    gls_skipped_reason: str | None
    baselines: dict[str, BaselineFit]
    alt_equivalence: tuple[float, float]
    comparison: ModelComparison
    provenance: Provenance


def _input_hash(series: TimeSeries) -> str:
    payload = json.dumps(
        {
            "values": [repr(v) for v in series.values],
            "start_month": series.start_month,
            "start_year": series.start_year,
            "bounds": list(series.bounds) if series.bounds else None,
        },
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def _config_echo(series: TimeSeries, config: AnalysisConfig) -> dict:
    # workers is deliberately excluded: it cannot affect any reported value.
    return {
        "tet": config.intervention,
        "before": config.before,
        "after": config.after,
        "start_month": series.start_month,
        "start_year": series.start_year,
        "censor_set": list(config.censor) if config.censor is not None else None,
        "gls_pass": config.gls,
        "gls_iterations": config.gls_iterations,
    }


def run_pipeline(series: TimeSeries, config: AnalysisConfig) -> AnalysisReport:
    """Run the full analysis; raises on validation or numerical failure."""
    window = config.window
    validation = validate_series(series, window)
    validation.raise_if_failed()

    mean_fit = estimate_change_point(series, window, workers=config.workers)
    effects = effect_sizes(mean_fit)
    residuals = compute_residuals(series, mean_fit)
    ar_fit = fit_stochastic(residuals)
    variance = variance_f_test(residuals, ar_fit)
    noise = NoiseDiagnostics(
        phi_pre_covers_zero=ar_fit.phi_pre.covers_zero,
        phi_post_covers_zero=ar_fit.phi_post.covers_zero,
        by_phi=ar_fit.white_noise,
        acf_pre_within_band=residuals.acf_pre.lag1_within_band,
        acf_post_within_band=residuals.acf_post.lag1_within_band,
        by_acf=residuals.acf_pre.lag1_within_band and residuals.acf_post.lag1_within_band,
    )

    gls_fit = None
    gls_effects = None
    gls_reason = None
    if config.gls:
        fit, ar = mean_fit, ar_fit
        for _ in range(config.gls_iterations):
            fit = gls_reestimate(series, fit, ar)
            ar = fit_stochastic(compute_residuals(series, fit))
        gls_fit = fit
        gls_effects = effect_sizes(fit)
    else:
        gls_reason = "not requested (enable with the GLS pass option)"

    fixed = segmented_fixed(series, config.intervention)
    censored = segmented_censored(series, window, config.censor)
    quad = quadratic_fit(series)
    alt = alt_param_fit(series, config.intervention)
    comparison = mse_compare([mean_fit, fixed, censored, quad])

    provenance = Provenance(
        input_sha256=_input_hash(series),
        config=_config_echo(series, config),
        version=__version__,
        schema_version=SCHEMA_VERSION,
    )
    return AnalysisReport(
        series=series,
        config=config,
        validation=validation,
        mean_fit=mean_fit,
        effects=effects,
        residuals=residuals,
        ar_fit=ar_fit,
        variance_comparison=variance,
        noise=noise,
        gls_fit=gls_fit,
        gls_effects=gls_effects,
        gls_skipped_reason=gls_reason,
        baselines={"fixed_cp": fixed, "censored": censored, "quadratic": quad, "alt_param": alt},
        alt_equivalence=equivalence_map(alt),
        comparison=comparison,
        provenance=provenance,
    )
