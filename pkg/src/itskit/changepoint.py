"""Two-phase segmented mean model with a data-driven change point.

The series mean is a straight line up to an unknown change point and a
second straight line from the change point on. Rather than pinning the break
to the announced intervention month, the change point is selected from a
candidate window around it by maximizing the two-phase Gaussian profile
log likelihood; the gap between the selected month and the intervention is
the estimated response delay.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .core import CandidateWindow, PhaseTooShortError, TimeSeries, validate_series

# Relative floor applied to phase variances inside the profile likelihood so
# an exact (zero-residual) phase fit yields a finite, comparable value.
VARIANCE_FLOOR_SCALE = 1e-12


@dataclass(frozen=True, eq=False)
class PhaseFit:
    """Least-squares line fit for one phase.

    ``start``/``stop`` give the 1-based inclusive index range the line was
    fit on; ``cov`` is the parameter covariance using the unbiased residual
    variance RSS/(n-2).
    """

    intercept: float
    slope: float
    start: int
    stop: int
    n: int
    rss: float
    cov: np.ndarray

    def __post_init__(self):
        self.cov.setflags(write=False)

    @property
    def sigma_sq_mle(self) -> float:
        return self.rss / self.n

    @property
    def sigma_sq(self) -> float:
        """Unbiased residual variance RSS/(n-2)."""
        return self.rss / (self.n - 2)

    @property
    def dof(self) -> int:
        return self.n - 2

    def predict(self, t) -> np.ndarray:
        return self.intercept + self.slope * np.asarray(t, dtype=float)


def _line_fit(t: np.ndarray, y: np.ndarray) -> PhaseFit:
    """Simple linear regression via centered sums."""
    n = t.size
    if n < 3:
        raise PhaseTooShortError(
            f"phase covering indices {t[0] if n else '?'}..{t[-1] if n else '?'} has "
            f"{n} observations; at least 3 are required"
        )
    tbar = t.mean()
    ybar = y.mean()
    dt = t - tbar
    sxx = float(dt @ dt)
    slope = float(dt @ (y - ybar)) / sxx
    intercept = float(ybar - slope * tbar)
    resid = y - (intercept + slope * t)
    rss = float(resid @ resid)
    s2 = rss / (n - 2)
    cov = s2 * np.array(
        [
            [1.0 / n + tbar * tbar / sxx, -tbar / sxx],
            [-tbar / sxx, 1.0 / sxx],
        ]
    )
    return PhaseFit(
        intercept=intercept,
        slope=slope,
        start=int(t[0]),
        stop=int(t[-1]),
        n=int(n),
        rss=rss,
        cov=cov,
    )


def ols_segmented_fit(series: TimeSeries, q: int) -> tuple[PhaseFit, PhaseFit]:
    """Fit the two phase lines for a given change point ``q``.

    The pre phase covers indices 1..q-1, the post phase q..T; each side needs
    at least 3 observations.
    """
    y = series.as_array()
    T = y.size
    if not 4 <= q <= T - 2:
        raise PhaseTooShortError(
            f"change point {q} leaves too short a phase in a series of length {T}; "
            f"both phases need at least 3 observations"
        )
    pre = _line_fit(np.arange(1, q, dtype=float), y[: q - 1])
    post = _line_fit(np.arange(q, T + 1, dtype=float), y[q - 1 :])
    return pre, post


def _variance_floor(y: np.ndarray) -> float:
    sample_var = float(np.var(y, ddof=1)) if y.size > 1 else 0.0
    return VARIANCE_FLOOR_SCALE * (sample_var if sample_var > 0.0 else 1.0)


def _phase_loglik(rss: float, n: int, floor: float) -> tuple[float, bool]:
    s2 = rss / n
    floored = s2 < floor
    s2 = max(s2, floor)
    return -0.5 * n * math.log(2.0 * math.pi * s2) - rss / (2.0 * s2), floored


def profile_loglik(series: TimeSeries, q: int) -> float:
    """Profile Gaussian log likelihood of the two-phase model at ``q``.

    Coefficients are the per-phase least-squares estimates and each phase
    variance is the maximum-likelihood RSS/n, floored at a small multiple of
    the sample variance so exact fits stay finite.
    """
    value, _, _, _ = _profile(series, q)
    return value


def _profile(series: TimeSeries, q: int):
    pre, post = ols_segmented_fit(series, q)
    floor = _variance_floor(series.as_array())
    ll_pre, f1 = _phase_loglik(pre.rss, pre.n, floor)
    ll_post, f2 = _phase_loglik(post.rss, post.n, floor)
    return ll_pre + ll_post, pre, post, f1 or f2


@dataclass(frozen=True, eq=False)
class MeanFit:
    """Selected two-phase mean model.

    ``trace`` holds (candidate, log likelihood) pairs over the whole window,
    in candidate order. ``gls_pass`` marks fits re-estimated on shifted index
    ranges after the error structure was modeled; ``ar_mode`` records whether
    that pass treated the phases as one process ("single") or two
    ("separate").
    """

    change_point: int
    window: CandidateWindow
    pre: PhaseFit
    post: PhaseFit
    loglik: float
    trace: tuple[tuple[int, float], ...]
    near_degenerate: bool
    gls_pass: bool = False
    ar_mode: str | None = None

    @property
    def intercept_pre(self) -> float:
        return self.pre.intercept

    @property
    def slope_pre(self) -> float:
        return self.pre.slope

    @property
    def intercept_post(self) -> float:
        return self.post.intercept

    @property
    def slope_post(self) -> float:
        return self.post.slope

    @property
    def intercept_change(self) -> float:
        return self.post.intercept - self.pre.intercept

    @property
    def slope_change(self) -> float:
        return self.post.slope - self.pre.slope

    @property
    def level_change(self) -> float:
        """Pre-phase extrapolation minus post-phase value at the change point.

        Positive when the post series sits below the continuation of the pre
        trend.
        """
        return -(self.intercept_change + self.slope_change * self.change_point)

    @property
    def delay(self) -> int:
        return self.change_point - self.window.intervention

    def fitted_values(self) -> np.ndarray:
        """Fitted mean over indices 1..T (T taken from the post-phase end)."""
        t = np.arange(1, self.post.stop + 1, dtype=float)
        return np.where(
            t < self.change_point, self.pre.predict(t), self.post.predict(t)
        )


def estimate_change_point(
    series: TimeSeries, window: CandidateWindow, workers: int | None = None
) -> MeanFit:
    """Select the change point maximizing the profile log likelihood.

    Every candidate in the window is evaluated; ties go to the smallest
    index. ``workers`` > 1 evaluates candidates on a thread pool, with
    results merged in candidate order so the outcome is identical to the
    serial run.
    """
    validate_series(series, window).raise_if_failed()
    candidates = list(window.candidates())

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda q: (q, *_profile(series, q)), candidates))
    else:
        rows = [(q, *_profile(series, q)) for q in candidates]
    rows.sort(key=lambda r: r[0])

    best = None
    for row in rows:
        if best is None or row[1] > best[1]:
            best = row
    q_hat, loglik, pre, post, floored = best
    return MeanFit(
        change_point=q_hat,
        window=window,
        pre=pre,
        post=post,
        loglik=loglik,
        trace=tuple((q, ll) for q, ll, *_ in rows),
        near_degenerate=any(r[4] for r in rows),
    )


@dataclass(frozen=True)
class Estimate:
    """Point estimate with its t-based uncertainty summary."""

    value: float
    se: float
    df: float
    ci: tuple[float, float]
    p_value: float


def _t_estimate(value: float, var: float, df: float) -> Estimate:
    se = math.sqrt(max(var, 0.0))
    if se == 0.0:
        return Estimate(value, 0.0, df, (value, value), 1.0 if value == 0.0 else 0.0)
    half = stats.t.ppf(0.975, df) * se
    p = 2.0 * stats.t.sf(abs(value) / se, df)
    return Estimate(value, se, df, (value - half, value + half), float(min(p, 1.0)))


def _welch_df(v1: float, df1: int, v2: float, df2: int) -> float:
    if v1 + v2 == 0.0:
        return float(df1 + df2)
    return (v1 + v2) ** 2 / (v1 * v1 / df1 + v2 * v2 / df2)


@dataclass(frozen=True)
class EffectEstimates:
    """Intervention effect summaries from a selected mean fit.

    ``level_change`` is the gap between the pre-trend extrapolation and the
    post line at the change point (positive when the post series runs below
    the pre trend); ``trend_change`` is the slope increment; ``delay`` is
    the change point minus the intervention month. Cross-phase contrasts use
    a Welch-Satterthwaite df; per-phase coefficients use their own phase df.
    """

    level_change: Estimate
    trend_change: Estimate
    intercept_change: Estimate
    intercept_pre: Estimate
    slope_pre: Estimate
    intercept_post: Estimate
    slope_post: Estimate
    delay: int
    change_point: int


def effect_sizes(fit: MeanFit) -> EffectEstimates:
    """Effect sizes with SEs, 95% CIs, and two-sided p values.

    Phases are treated as independent, so the covariance of the coefficient
    increments is the sum of the phase covariances.
    """
    pre, post = fit.pre, fit.post
    if pre.dof < 1 or post.dof < 1:
        raise PhaseTooShortError("both phases need positive residual degrees of freedom")
    tau = float(fit.change_point)

    # Increments (post minus pre): covariance adds across phases.
    var_d = pre.cov[0, 0] + post.cov[0, 0]
    var_D = pre.cov[1, 1] + post.cov[1, 1]
    w = np.array([-1.0, -tau])
    lev_pre = float(w @ pre.cov @ w)
    lev_post = float(w @ post.cov @ w)

    intercept_change = _t_estimate(
        fit.intercept_change, var_d, _welch_df(pre.cov[0, 0], pre.dof, post.cov[0, 0], post.dof)
    )
    trend_change = _t_estimate(
        fit.slope_change, var_D, _welch_df(pre.cov[1, 1], pre.dof, post.cov[1, 1], post.dof)
    )
    level_change = _t_estimate(
        fit.level_change, lev_pre + lev_post, _welch_df(lev_pre, pre.dof, lev_post, post.dof)
    )

    return EffectEstimates(
        level_change=level_change,
        trend_change=trend_change,
        intercept_change=intercept_change,
        intercept_pre=_t_estimate(pre.intercept, pre.cov[0, 0], pre.dof),
        slope_pre=_t_estimate(pre.slope, pre.cov[1, 1], pre.dof),
        intercept_post=_t_estimate(post.intercept, post.cov[0, 0], post.dof),
        slope_post=_t_estimate(post.slope, post.cov[1, 1], post.dof),
        delay=fit.delay,
        change_point=fit.change_point,
    )
