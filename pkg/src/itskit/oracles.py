"""Independent reference implementations used to cross-check the estimators.

Everything in this module is a deliberately plain transcription of the
underlying formulas: explicit loops, textbook normal equations, no shared
code with the estimation modules. Tests compare the fast implementations in
`changepoint`, `stochastic`, and `baselines` against these; to stay useful
as a second route, this module must never import from the modules it checks.
"""

from __future__ import annotations

import math

import numpy as np

# Relative variance floor shared with the profile likelihood; part of the
# numeric contract, so both routes must apply the same rule.
VARIANCE_FLOOR_SCALE = 1e-12


def normal_equations_line_fit(t, y):
    """Fit y = a + b*t by solving the 2x2 normal equations directly.

    Parameters
    ----------
    t, y : array_like
        Regressor (time index) and response, equal length, length >= 3.

    Returns
    -------
    dict with keys ``intercept``, ``slope``, ``rss``, ``cov`` where ``cov``
    is the unbiased-variance parameter covariance ``s2 * inv(X'X)``.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    n = t.size
    X = np.column_stack([np.ones(n), t])
    xtx = X.T @ X
    xty = X.T @ y
    beta = np.linalg.solve(xtx, xty)
    resid = y - X @ beta
    rss = 0.0
    for r in resid:
        rss += r * r
    s2 = rss / (n - 2)
    cov = s2 * np.linalg.inv(xtx)
    return {"intercept": float(beta[0]), "slope": float(beta[1]), "rss": rss, "cov": cov}


def segmented_line_params_direct(values, tau):
    """Closed-form two-phase line parameters, written out sum by sum.

    The pre-phase line is fit on indices 1..tau-1, whose mean index is
    tau/2; the post phase covers tau..T. The increments are the post-phase
    estimates minus the pre-phase ones.

    Returns
    -------
    (intercept_pre, slope_pre, intercept_change, slope_change)
    """
    y = np.asarray(values, dtype=float)
    T = y.size
    half = tau / 2.0  # mean of 1..tau-1

    ybar_pre = 0.0
    for t in range(1, tau):
        ybar_pre += y[t - 1]
    ybar_pre /= tau - 1

    num = 0.0
    den = 0.0
    for t in range(1, tau):
        num += (t - half) * y[t - 1]
        den += (t - half) * t
    slope_pre = num / den
    intercept_pre = ybar_pre - slope_pre * half

    tbar_post = 0.0
    for t in range(tau, T + 1):
        tbar_post += t
    tbar_post /= T - tau + 1
    ybar_post = 0.0
    for t in range(tau, T + 1):
        ybar_post += y[t - 1]
    ybar_post /= T - tau + 1

    num = 0.0
    den = 0.0
    for t in range(tau, T + 1):
        num += (t - tbar_post) * y[t - 1]
        den += (t - tbar_post) * t
    slope_post = num / den
    intercept_post = ybar_post - slope_post * tbar_post

    return (
        intercept_pre,
        slope_pre,
        intercept_post - intercept_pre,
        slope_post - slope_pre,
    )


def two_phase_loglik_termwise(values, q):
    """Evaluate the two-phase Gaussian log likelihood term by term.

    Each phase is fit by :func:`normal_equations_line_fit`; the phase
    variances are the maximum-likelihood ones (RSS/n) subject to the shared
    relative floor, and every observation contributes its own density term.
    """
    y = np.asarray(values, dtype=float)
    T = y.size
    sample_var = float(np.var(y, ddof=1))
    floor = VARIANCE_FLOOR_SCALE * (sample_var if sample_var > 0.0 else 1.0)

    t_pre = np.arange(1, q)
    t_post = np.arange(q, T + 1)
    pre = normal_equations_line_fit(t_pre, y[: q - 1])
    post = normal_equations_line_fit(t_post, y[q - 1 :])

    total = 0.0
    for t in t_pre:
        mu = pre["intercept"] + pre["slope"] * t
        s2 = max(pre["rss"] / t_pre.size, floor)
        total += -0.5 * math.log(2.0 * math.pi * s2) - (y[t - 1] - mu) ** 2 / (2.0 * s2)
    for t in t_post:
        mu = post["intercept"] + post["slope"] * t
        s2 = max(post["rss"] / t_post.size, floor)
        total += -0.5 * math.log(2.0 * math.pi * s2) - (y[t - 1] - mu) ** 2 / (2.0 * s2)
    return total


def ar1_conditional_direct(segment):
    """Conditional AR(1) estimates for one residual segment, via loops.

    For a segment x_1..x_n (n >= 4): the lag coefficient regresses the last
    n-1 values on the first n-1, each centered on its own window mean; the
    innovation variance averages the squared centered differences of the
    one-step prediction errors W_t = x_t - phi * x_{t-1}.

    Returns
    -------
    (phi, innovation_variance)
    """
    x = np.asarray(segment, dtype=float)
    n = x.size
    if n < 4:
        raise ValueError("segment must have at least 4 values")

    mean_cur = 0.0
    for t in range(2, n + 1):
        mean_cur += x[t - 1]
    mean_cur /= n - 1
    mean_lag = 0.0
    for t in range(1, n):
        mean_lag += x[t - 1]
    mean_lag /= n - 1

    num = 0.0
    den = 0.0
    for t in range(2, n + 1):
        num += (x[t - 1] - mean_cur) * (x[t - 2] - mean_lag)
        den += (x[t - 1] - mean_cur) ** 2
    phi = num / den

    w = [x[t - 1] - phi * x[t - 2] for t in range(2, n + 1)]
    wbar = sum(w) / len(w)
    acc = 0.0
    for i in range(1, len(w)):
        acc += ((w[i] - wbar) - phi * (w[i - 1] - wbar)) ** 2
    return phi, acc / (n - 2)


def weighted_variance(cov, weights):
    """Variance of a linear combination w'theta, computed element by element."""
    cov = np.asarray(cov, dtype=float)
    weights = np.asarray(weights, dtype=float)
    total = 0.0
    for i in range(weights.size):
        for j in range(weights.size):
            total += weights[i] * weights[j] * cov[i, j]
    return total


def oracle_suite():
    """Registry of the reference implementations, keyed by what they check."""
    return {
        "line_fit": normal_equations_line_fit,
        "segmented_params": segmented_line_params_direct,
        "profile_loglik": two_phase_loglik_termwise,
        "ar1": ar1_conditional_direct,
        "linear_combination_variance": weighted_variance,
    }
