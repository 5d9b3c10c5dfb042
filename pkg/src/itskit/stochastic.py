"""Residual diagnostics and two-regime AR(1) error modeling.

After the two-phase mean is removed, the remaining variation is examined for
lag-1 autocorrelation separately before and after the change point: the two
segments get their own conditional AR(1) estimates, a nested F-test asks
whether one process would do, and (when the residuals look like white noise)
an F ratio compares the phase variances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .changepoint import MeanFit, _line_fit, _phase_loglik, _variance_floor
from .core import DegenerateFitError, PhaseTooShortError, TimeSeries

Z975 = float(stats.norm.ppf(0.975))


@dataclass(frozen=True, eq=False)
class AcfSummary:
    """Sample autocorrelations at lags 1..L with the white-noise band.

    ``defined`` is False when the segment variance is zero, in which case
    ``values`` is all zeros and the band is still reported.
    """

    lags: tuple[int, ...]
    values: np.ndarray
    band: float
    n: int
    defined: bool = True

    def __post_init__(self):
        self.values.setflags(write=False)

    @property
    def lag1_within_band(self) -> bool:
        if not self.defined or not self.lags:
            return True
        return bool(abs(self.values[0]) <= self.band)


def acf(x, max_lag: int | None = None) -> AcfSummary:
    """Sample ACF with max lag min(15, n // 4) and a +/- 2/sqrt(n) band."""
    x = np.asarray(x, dtype=float)
    n = x.size
    if max_lag is None:
        max_lag = min(15, n // 4)
    max_lag = max(0, min(max_lag, n - 1))
    band = 2.0 / math.sqrt(n) if n > 0 else math.inf
    d = x - x.mean() if n else x
    denom = float(d @ d)
    lags = tuple(range(1, max_lag + 1))
    if denom == 0.0:
        return AcfSummary(lags, np.zeros(max_lag), band, n, defined=False)
    vals = np.array([float(d[: n - h] @ d[h:]) / denom for h in lags])
    return AcfSummary(lags, vals, band, n)


@dataclass(frozen=True, eq=False)
class ResidualSet:
    """Residuals of a mean fit with phase-wise diagnostics.

    ``split`` is the change point: the pre segment is indices 1..split-1,
    the post segment split..T. ``studentized`` holds internally studentized
    residuals (NaN where the point was outside the fit ranges or its
    leverage reaches 1); ``leverage`` likewise.
    """

    residuals: np.ndarray
    studentized: np.ndarray
    leverage: np.ndarray
    split: int
    acf_pre: AcfSummary
    acf_post: AcfSummary
    acf_all: AcfSummary

    def __post_init__(self):
        for arr in (self.residuals, self.studentized, self.leverage):
            arr.setflags(write=False)

    @property
    def pre(self) -> np.ndarray:
        return self.residuals[: self.split - 1]

    @property
    def post(self) -> np.ndarray:
        return self.residuals[self.split - 1 :]


def _studentize(t_all, resid, phase, out_student, out_lev):
    # Internally studentized: r / (s * sqrt(1 - h)) with s^2 = RSS/(n-2) and
    # leverage from the phase design; only defined inside the fit range.
    idx = (t_all >= phase.start) & (t_all <= phase.stop)
    t = t_all[idx]
    tbar = t.mean()
    sxx = float((t - tbar) @ (t - tbar))
    h = 1.0 / phase.n + (t - tbar) ** 2 / sxx
    out_lev[idx] = h
    s = math.sqrt(phase.sigma_sq)
    denom = s * np.sqrt(np.clip(1.0 - h, 0.0, None))
    r = resid[idx]
    with np.errstate(divide="ignore", invalid="ignore"):
        stu = r / denom
    # An exact fit leaves residual 0 with zero scale: call that 0, not NaN.
    stu = np.where((denom == 0.0) & (r == 0.0), 0.0, stu)
    stu = np.where((denom == 0.0) & (r != 0.0), np.nan, stu)
    out_student[idx] = stu


def compute_residuals(series: TimeSeries, fit: MeanFit) -> ResidualSet:
    """Residuals from the fitted two-phase mean over the whole series."""
    y = series.as_array()
    resid = y - fit.fitted_values()
    T = y.size
    t_all = np.arange(1, T + 1, dtype=float)
    split = fit.change_point

    studentized = np.full(T, np.nan)
    leverage = np.full(T, np.nan)
    _studentize(t_all, resid, fit.pre, studentized, leverage)
    _studentize(t_all, resid, fit.post, studentized, leverage)

    return ResidualSet(
        residuals=resid,
        studentized=studentized,
        leverage=leverage,
        split=split,
        acf_pre=acf(resid[: split - 1]),
        acf_post=acf(resid[split - 1 :]),
        acf_all=acf(resid),
    )


def ar1_fit(segment) -> tuple[float, float]:
    """Conditional AR(1) estimates for one residual segment.

    The lag coefficient regresses the segment's last n-1 values on its first
    n-1 values, each centered on its own window mean; the innovation variance
    averages the squared centered differences of the one-step prediction
    errors W_t = x_t - phi * x_{t-1} (n-2 denominator). Needs n >= 4.

    Returns
    -------
    (phi, innovation_variance)
    """
    x = np.asarray(segment, dtype=float)
    n = x.size
    if n < 4:
        raise PhaseTooShortError(
            f"AR(1) estimation needs a segment of at least 4 residuals, got {n}"
        )
    cur = x[1:]
    lag = x[:-1]
    dc = cur - cur.mean()
    den = float(dc @ dc)
    if den == 0.0:
        raise DegenerateFitError(
            "residual segment is constant; the AR(1) coefficient is undefined"
        )
    phi = float(dc @ (lag - lag.mean())) / den

    w = cur - phi * lag
    dw = w - w.mean()
    d = dw[1:] - phi * dw[:-1]
    return phi, float(d @ d) / (n - 2)


@dataclass(frozen=True)
class CoefEstimate:
    """Coefficient with its asymptotic SE and normal 95% CI."""

    value: float
    se: float
    ci: tuple[float, float]

    @property
    def covers_zero(self) -> bool:
        return bool(self.ci[0] <= 0.0 <= self.ci[1])


@dataclass(frozen=True)
class NestedFTest:
    """F-test of one shared AR(1) coefficient against phase-specific ones."""

    statistic: float
    df: tuple[int, int]
    p_value: float
    rss_reduced: float
    rss_full: float


@dataclass(frozen=True)
class ARFit:
    """Two-regime AR(1) summary of the mean-fit residuals.

    Coefficient CIs use the asymptotic SE sqrt((1 - phi^2)/n) on each
    segment; ``causal_pre``/``causal_post`` flag |phi| < 1 (estimates are
    never clamped, the SE is just undefined outside the causal region).
    ``phi_change`` is the post minus pre coefficient.
    """

    phi_pre: CoefEstimate
    phi_post: CoefEstimate
    phi_change: CoefEstimate
    innovation_var_pre: float
    innovation_var_post: float
    n_pre: int
    n_post: int
    causal_pre: bool
    causal_post: bool
    nested_f: NestedFTest

    @property
    def white_noise(self) -> bool:
        """Both segment coefficients are compatible with zero at the 5% level."""
        return self.phi_pre.covers_zero and self.phi_post.covers_zero


def _coef(value: float, n: int) -> tuple[CoefEstimate, bool]:
    causal = abs(value) < 1.0
    if causal:
        se = math.sqrt((1.0 - value * value) / n)
        ci = (value - Z975 * se, value + Z975 * se)
    else:
        se = math.nan
        ci = (math.nan, math.nan)
    return CoefEstimate(value, se, ci), causal


def fit_stochastic(resid: ResidualSet) -> ARFit:
    """Fit segment-wise AR(1) models and the shared-coefficient F-test."""
    phi1, var1 = ar1_fit(resid.pre)
    phi2, var2 = ar1_fit(resid.post)
    n1, n2 = resid.pre.size, resid.post.size
    pre, causal_pre = _coef(phi1, n1)
    post, causal_post = _coef(phi2, n2)
    if causal_pre and causal_post:
        se = math.hypot(pre.se, post.se)
        diff = phi2 - phi1
        change = CoefEstimate(diff, se, (diff - Z975 * se, diff + Z975 * se))
    else:
        change = CoefEstimate(phi2 - phi1, math.nan, (math.nan, math.nan))
    return ARFit(
        phi_pre=pre,
        phi_post=post,
        phi_change=change,
        innovation_var_pre=var1,
        innovation_var_post=var2,
        n_pre=n1,
        n_post=n2,
        causal_pre=causal_pre,
        causal_post=causal_post,
        nested_f=nested_f_test(resid),
    )


def _cls_rss(cur: np.ndarray, lag: np.ndarray) -> float:
    # Least-squares AR coefficient for this specific sum, so the full model's
    # residual sum can never exceed the reduced one.
    den = float(lag @ lag)
    if den == 0.0:
        if float(cur @ cur) == 0.0:
            return 0.0
        raise DegenerateFitError(
            "lagged residuals are all zero; the AR(1) comparison is undefined"
        )
    phi = float(cur @ lag) / den
    d = cur - phi * lag
    return float(d @ d)


def nested_f_from_rss(rss_reduced: float, rss_full: float, n_obs: int) -> NestedFTest:
    """Assemble the F statistic from the two residual sums.

    The reduced model fits one AR coefficient to all n_obs residuals, the
    full model one per phase; the test has (2, n_obs - 2) degrees of freedom.
    """
    if rss_full <= 0.0:
        raise DegenerateFitError(
            "full-model residual sum is zero; the F statistic is undefined"
        )
    df = (2, n_obs - 2)
    stat = max(((rss_reduced - rss_full) / df[0]) / (rss_full / df[1]), 0.0)
    return NestedFTest(
        statistic=stat,
        df=df,
        p_value=float(stats.f.sf(stat, *df)),
        rss_reduced=rss_reduced,
        rss_full=rss_full,
    )


def nested_f_test(resid: ResidualSet) -> NestedFTest:
    """Test whether one AR(1) coefficient fits both residual segments.

    The reduced residual sum pairs every consecutive residual across the
    whole series; the full sum pairs consecutive residuals within each
    segment only (the pair straddling the change point belongs to neither).
    Each coefficient minimizes its own sum, so the statistic is never
    negative.
    """
    r = resid.residuals
    T = r.size
    tau = resid.split
    rss_reduced = _cls_rss(r[1:], r[:-1])
    rss_full = _cls_rss(r[1 : tau - 1], r[: tau - 2]) + _cls_rss(r[tau:], r[tau - 1 : -1])
    return nested_f_from_rss(rss_reduced, rss_full, T)


@dataclass(frozen=True)
class VarianceComparison:
    """Pre/post residual variances and their F ratio.

    The ratio and its df are always reported; the p value is only filled in
    when ``applicable`` is True (no evidence of autocorrelation in either
    segment), otherwise ``reason`` says why the comparison was withheld.
    """

    variance_pre: float
    variance_post: float
    f_stat: float
    df: tuple[int, int]
    p_value: float | None
    applicable: bool
    reason: str | None = None


def variance_ratio_test(
    s_pre: float, n_pre: int, s_post: float, n_post: int
) -> tuple[float, tuple[int, int], float]:
    """Unconditional two-sided F test for equality of two phase variances.

    Degrees of freedom are (n_pre - 3, n_post - 3), one fewer per phase than
    the residual df of the line fits.
    """
    df = (n_pre - 3, n_post - 3)
    if min(df) < 1:
        raise PhaseTooShortError(
            f"variance comparison needs at least 4 observations per phase, got "
            f"{n_pre} and {n_post}"
        )
    if s_post <= 0.0:
        raise DegenerateFitError("post-phase variance is zero; the F ratio is undefined")
    f = s_pre / s_post
    p = 2.0 * min(float(stats.f.cdf(f, *df)), float(stats.f.sf(f, *df)))
    return f, df, min(p, 1.0)


def variance_f_test(resid: ResidualSet, ar: ARFit) -> VarianceComparison:
    """Compare phase residual variances, gated on the white-noise check.

    The phase variances are RSS/(n-2) over each residual segment. When
    either segment's AR coefficient CI excludes zero the variances are still
    reported but not compared: an F ratio of raw variances is not meaningful
    for autocorrelated residuals.
    """
    n1, n2 = resid.pre.size, resid.post.size
    s1 = float(resid.pre @ resid.pre) / (n1 - 2)
    s2 = float(resid.post @ resid.post) / (n2 - 2)
    applicable = ar.white_noise
    if applicable:
        f, df, p = variance_ratio_test(s1, n1, s2, n2)
        return VarianceComparison(s1, s2, f, df, p, True)
    df = (n1 - 3, n2 - 3)
    sides = []
    if not ar.phi_pre.covers_zero:
        sides.append("pre")
    if not ar.phi_post.covers_zero:
        sides.append("post")
    reason = (
        f"autocorrelation detected in the {' and '.join(sides)} phase residuals "
        f"(AR coefficient 95% CI excludes zero); variances are estimated but not "
        f"compared"
    )
    if s2 <= 0.0:
        return VarianceComparison(s1, s2, math.inf, df, None, False, reason)
    return VarianceComparison(s1, s2, s1 / s2, df, None, False, reason)


def gls_reestimate(
    series: TimeSeries,
    fit: MeanFit,
    ar: ARFit,
    separate: bool | None = None,
    alpha: float = 0.05,
) -> MeanFit:
    """Re-estimate the mean parameters on index ranges shifted for the AR fit.

    With one shared AR(1) process (``separate`` False) only the first time
    point is dropped; with phase-specific processes the point at the change
    point is dropped as well, so the pre phase covers 2..tau-1 and the post
    phase tau+1..T. When ``separate`` is None the nested F-test decides at
    level ``alpha``. The change point itself is not re-estimated.
    """
    if separate is None:
        separate = ar.nested_f.p_value < alpha
    y = series.as_array()
    T = y.size
    tau = fit.change_point
    post_start = tau + 1 if separate else tau

    pre = _line_fit(np.arange(2, tau, dtype=float), y[1 : tau - 1])
    post = _line_fit(np.arange(post_start, T + 1, dtype=float), y[post_start - 1 :])
    floor = _variance_floor(y)
    ll_pre, f1 = _phase_loglik(pre.rss, pre.n, floor)
    ll_post, f2 = _phase_loglik(post.rss, post.n, floor)
    return MeanFit(
        change_point=tau,
        window=fit.window,
        pre=pre,
        post=post,
        loglik=ll_pre + ll_post,
        trace=((tau, ll_pre + ll_post),),
        near_degenerate=f1 or f2,
        gls_pass=True,
        ar_mode="separate" if separate else "single",
    )
