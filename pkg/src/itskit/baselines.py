"""Reference models the adaptive fit is compared against.

Three fixed-form alternatives: a segmented regression that breaks exactly at
the intervention month, a censored variant that drops a phase-in window
around it, and a single quadratic trend. An alternative parameterization of
the fixed break (post-phase slope on months elapsed since the intervention)
is provided with the map back to the increment form. Models are ranked by
residual mean square with degrees of freedom charged per parameter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .changepoint import Estimate, MeanFit, _line_fit, _t_estimate
from .core import CandidateWindow, DegenerateFitError, TimeSeries

KIND_ESTIMATED = "estimated_cp"
KIND_FIXED = "fixed_cp"
KIND_CENSORED = "censored"
KIND_ALT = "alt_param"
KIND_QUADRATIC = "quadratic"


@dataclass(frozen=True, eq=False)
class BaselineFit:
    """A fitted reference model.

    ``fitted_index`` lists the 1-based indices actually used in the fit (the
    censored model skips some); ``fitted`` holds the model mean at those
    indices. ``split`` is the assumed break month where the model has one.
    ``coef_tests`` carries any per-coefficient significance summaries.
    """

    kind: str
    coefficients: dict[str, float]
    split: int | None
    fitted_index: tuple[int, ...]
    fitted: np.ndarray
    rss: float
    df_resid: int
    coef_tests: dict[str, Estimate] = field(default_factory=dict)

    def __post_init__(self):
        self.fitted.setflags(write=False)
        if self.df_resid < 1:
            raise DegenerateFitError(
                f"{self.kind} fit has {self.df_resid} residual degrees of freedom"
            )

    @property
    def mse(self) -> float:
        return self.rss / self.df_resid


def _segment_coefficients(pre, post, split: int) -> dict[str, float]:
    ic = post.intercept - pre.intercept
    sc = post.slope - pre.slope
    return {
        "intercept_pre": pre.intercept,
        "slope_pre": pre.slope,
        "intercept_post": post.intercept,
        "slope_post": post.slope,
        "intercept_change": ic,
        "slope_change": sc,
        "level_change": -(ic + sc * split),
    }


def segmented_fixed(series: TimeSeries, intervention: int) -> BaselineFit:
    """Two-phase line fit with the break pinned to the intervention month."""
    y = series.as_array()
    T = y.size
    pre = _line_fit(np.arange(1, intervention, dtype=float), y[: intervention - 1])
    post = _line_fit(np.arange(intervention, T + 1, dtype=float), y[intervention - 1 :])
    t = np.arange(1, T + 1, dtype=float)
    fitted = np.where(t < intervention, pre.predict(t), post.predict(t))
    return BaselineFit(
        kind=KIND_FIXED,
        coefficients=_segment_coefficients(pre, post, intervention),
        split=intervention,
        fitted_index=tuple(range(1, T + 1)),
        fitted=fitted,
        rss=pre.rss + post.rss,
        df_resid=T - 4,
    )


def segmented_censored(
    series: TimeSeries,
    window: CandidateWindow,
    censor: tuple[int, ...] | None = None,
) -> BaselineFit:
    """Segmented fit that drops a phase-in window around the intervention.

    ``censor`` defaults to the full candidate window. The pre phase uses
    indices before the smallest censored index and the post phase indices
    after the largest; with an explicitly empty censor set nothing is
    dropped and the result coincides with :func:`segmented_fixed`.
    """
    if censor is None:
        censor = tuple(window.candidates())
    y = series.as_array()
    T = y.size
    if censor:
        pre_stop = min(censor) - 1  # last pre index
        post_start = max(censor) + 1
    else:
        pre_stop = window.intervention - 1
        post_start = window.intervention
    pre = _line_fit(np.arange(1, pre_stop + 1, dtype=float), y[:pre_stop])
    post = _line_fit(np.arange(post_start, T + 1, dtype=float), y[post_start - 1 :])
    index = tuple(range(1, pre_stop + 1)) + tuple(range(post_start, T + 1))
    t_used = np.asarray(index, dtype=float)
    fitted = np.where(t_used <= pre_stop, pre.predict(t_used), post.predict(t_used))
    return BaselineFit(
        kind=KIND_CENSORED,
        coefficients=_segment_coefficients(pre, post, window.intervention),
        split=window.intervention,
        fitted_index=index,
        fitted=fitted,
        rss=pre.rss + post.rss,
        df_resid=len(index) - 4,
    )


def alt_param_fit(series: TimeSeries, intervention: int) -> BaselineFit:
    """Fixed-break model in elapsed-time form.

    The post-phase mean is written as an intercept jump plus a ramp on the
    months elapsed since the intervention (t - intervention + 1), fit
    jointly with the shared pre-phase line by least squares.
    """
    y = series.as_array()
    T = y.size
    t = np.arange(1, T + 1, dtype=float)
    d = (t >= intervention).astype(float)
    X = np.column_stack([np.ones(T), t, d, d * (t - intervention + 1)])
    beta, *_ = np.linalg.lstsq(X, y, rcond=None)
    fitted = X @ beta
    resid = y - fitted
    return BaselineFit(
        kind=KIND_ALT,
        coefficients={
            "intercept": float(beta[0]),
            "slope": float(beta[1]),
            "jump": float(beta[2]),
            "ramp": float(beta[3]),
        },
        split=intervention,
        fitted_index=tuple(range(1, T + 1)),
        fitted=fitted,
        rss=float(resid @ resid),
        df_resid=T - 4,
    )


def equivalence_map(fit: BaselineFit) -> tuple[float, float]:
    """Convert an elapsed-time fit to increment form.

    Returns (intercept_change, slope_change): the ramp coefficient is the
    slope change, and the intercept change is the jump minus the ramp times
    (intervention - 1).
    """
    if fit.kind != KIND_ALT:
        raise ValueError(f"equivalence_map expects an {KIND_ALT!r} fit, got {fit.kind!r}")
    jump = fit.coefficients["jump"]
    ramp = fit.coefficients["ramp"]
    return jump - (fit.split - 1) * ramp, ramp


def quadratic_fit(series: TimeSeries) -> BaselineFit:
    """Single quadratic trend over the whole series.

    Fit on a centered and standardized time index for conditioning, then
    mapped back to raw-scale coefficients. ``coef_tests['curvature']`` tests
    the quadratic term against zero with T - 3 df.
    """
    y = series.as_array()
    T = y.size
    t = np.arange(1, T + 1, dtype=float)
    m = t.mean()
    s = t.std()
    u = (t - m) / s
    X = np.column_stack([np.ones(T), u, u * u])
    xtx = X.T @ X
    beta = np.linalg.solve(xtx, X.T @ y)
    fitted = X @ beta
    resid = y - fitted
    rss = float(resid @ resid)
    df = T - 3
    cov = (rss / df) * np.linalg.inv(xtx)

    # y = c0 + c1*u + c2*u^2 with u = (t - m)/s, expanded in powers of t.
    c0, c1, c2 = (float(b) for b in beta)
    coeffs = {
        "intercept": c0 - c1 * m / s + c2 * m * m / (s * s),
        "slope": c1 / s - 2.0 * c2 * m / (s * s),
        "curvature": c2 / (s * s),
    }
    curvature = _t_estimate(coeffs["curvature"], cov[2, 2] / s**4, df)
    return BaselineFit(
        kind=KIND_QUADRATIC,
        coefficients=coeffs,
        split=None,
        fitted_index=tuple(range(1, T + 1)),
        fitted=fitted,
        rss=rss,
        df_resid=df,
        coef_tests={"curvature": curvature},
    )


@dataclass(frozen=True)
class ComparisonEntry:
    kind: str
    rss: float
    df_resid: int
    mse: float


@dataclass(frozen=True)
class ModelComparison:
    """Residual mean squares of competing fits, ranked ascending.

    ``entries`` keeps the caller's order; ``ranking`` lists kinds from best
    (smallest MSE) to worst, ties resolved by the original order.
    """

    entries: tuple[ComparisonEntry, ...]
    ranking: tuple[str, ...]

    @property
    def best(self) -> str:
        return self.ranking[0]


def _entry(fit) -> ComparisonEntry:
    if isinstance(fit, MeanFit):
        kind = KIND_ESTIMATED + ("_gls" if fit.gls_pass else "")
        rss = fit.pre.rss + fit.post.rss
        df = fit.pre.n + fit.post.n - 4
    else:
        kind, rss, df = fit.kind, fit.rss, fit.df_resid
    if df < 1:
        raise DegenerateFitError(f"{kind} fit has no residual degrees of freedom")
    return ComparisonEntry(kind=kind, rss=rss, df_resid=df, mse=rss / df)


def mse_compare(fits) -> ModelComparison:
    """Rank two or more fits of the same series by residual mean square."""
    entries = tuple(_entry(f) for f in fits)
    if len(entries) < 2:
        raise ValueError("mse_compare needs at least two fits")
    order = sorted(range(len(entries)), key=lambda i: (entries[i].mse, i))
    return ModelComparison(entries=entries, ranking=tuple(entries[i].kind for i in order))
