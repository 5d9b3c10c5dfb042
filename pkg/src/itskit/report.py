"""Report serialization: canonical JSON and a human-readable text summary.

The JSON document is the stable machine interface (schema below, versioned
separately from the package). Serialization is deterministic: equal inputs
produce byte-identical documents, NaN and infinities become null, and no
wall-clock information is included.
"""

from __future__ import annotations

import json
import math

from ._version import SCHEMA_VERSION
from .baselines import BaselineFit
from .changepoint import Estimate, MeanFit, PhaseFit
from .core import TimeSeries, index_to_calendar
from .pipeline import AnalysisReport
from .stochastic import AcfSummary, CoefEstimate


def _clean(obj):
    """Recursively convert non-finite floats to None for strict JSON."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _estimate(e: Estimate) -> dict:
    return {
        "value": e.value,
        "se": e.se,
        "df": e.df,
        "ci": list(e.ci),
        "p_value": e.p_value,
    }


def _coef(c: CoefEstimate) -> dict:
    return {"value": c.value, "se": c.se, "ci": list(c.ci), "covers_zero": c.covers_zero}


def _phase(p: PhaseFit) -> dict:
    return {
        "intercept": p.intercept,
        "slope": p.slope,
        "start": p.start,
        "stop": p.stop,
        "n": p.n,
        "rss": p.rss,
        "sigma_sq": p.sigma_sq,
        "sigma_sq_mle": p.sigma_sq_mle,
        "dof": p.dof,
    }


def _acf(a: AcfSummary) -> dict:
    return {
        "lags": list(a.lags),
        "values": [float(v) for v in a.values],
        "band": a.band,
        "n": a.n,
        "defined": a.defined,
    }


def _mean_fit(fit: MeanFit, series: TimeSeries) -> dict:
    return {
        "change_point": fit.change_point,
        "calendar": index_to_calendar(fit.change_point, series).iso,
        "delay_months": fit.delay,
        "log_likelihood": fit.loglik,
        "near_degenerate": fit.near_degenerate,
        "gls_pass": fit.gls_pass,
        "ar_mode": fit.ar_mode,
        "pre": _phase(fit.pre),
        "post": _phase(fit.post),
        "intercept_change": fit.intercept_change,
        "slope_change": fit.slope_change,
        "level_change": fit.level_change,
    }


def _effects(e) -> dict:
    return {
        "level_change": _estimate(e.level_change),
        "trend_change": _estimate(e.trend_change),
        "intercept_change": _estimate(e.intercept_change),
        "intercept_pre": _estimate(e.intercept_pre),
        "slope_pre": _estimate(e.slope_pre),
        "intercept_post": _estimate(e.intercept_post),
        "slope_post": _estimate(e.slope_post),
        "delay_months": e.delay,
        "change_point": e.change_point,
    }


def _baseline(b: BaselineFit) -> dict:
    out = {
        "kind": b.kind,
        "split": b.split,
        "coefficients": dict(b.coefficients),
        "n_fitted": len(b.fitted_index),
        "rss": b.rss,
        "df_resid": b.df_resid,
        "mse": b.mse,
    }
    if b.coef_tests:
        out["coef_tests"] = {k: _estimate(v) for k, v in b.coef_tests.items()}
    return out


def report_to_dict(report: AnalysisReport) -> dict:
    """Assemble the canonical report document as plain Python objects."""
    series = report.series
    T = len(series)
    fit = report.mean_fit
    window = report.config.window
    calendar_labels = [index_to_calendar(i, series).iso for i in range(1, T + 1)]

    if report.gls_fit is not None:
        gls = {
            "applicable": True,
            "reason": None,
            "mode": report.gls_fit.ar_mode,
            "fit": _mean_fit(report.gls_fit, series),
            "effects": _effects(report.gls_effects),
        }
        fitted_gls = [float(v) for v in report.gls_fit.fitted_values()]
    else:
        gls = {"applicable": False, "reason": report.gls_skipped_reason}
        fitted_gls = None

    var = report.variance_comparison
    noise = report.noise
    nested = report.ar_fit.nested_f
    return {
        "schema_version": SCHEMA_VERSION,
        "provenance": {
            "input_sha256": report.provenance.input_sha256,
            "config": dict(report.provenance.config),
            "version": report.provenance.version,
        },
        "input": {
            "length": T,
            "start_month": series.start_month,
            "start_year": series.start_year,
            "start": calendar_labels[0],
            "end": calendar_labels[-1],
            "bounds": list(series.bounds) if series.bounds else None,
        },
        "validation": {"ok": report.validation.ok, "issues": list(report.validation.issues)},
        "change_point": {
            "estimate": fit.change_point,
            "calendar": index_to_calendar(fit.change_point, series).iso,
            "intervention": window.intervention,
            "intervention_calendar": index_to_calendar(window.intervention, series).iso,
            "window": {
                "before": window.before,
                "after": window.after,
                "first": window.first,
                "last": window.last,
            },
            "delay_months": fit.delay,
            "log_likelihood": fit.loglik,
            "near_degenerate": fit.near_degenerate,
            "trace": [
                {"candidate": q, "log_likelihood": ll} for q, ll in fit.trace
            ],
        },
        "mean_model": {
            "pre": _phase(fit.pre),
            "post": _phase(fit.post),
            "intercept_change": fit.intercept_change,
            "slope_change": fit.slope_change,
            "level_change": fit.level_change,
        },
        "effects": _effects(report.effects),
        "stochastic": {
            "ar": {
                "phi_pre": _coef(report.ar_fit.phi_pre),
                "phi_post": _coef(report.ar_fit.phi_post),
                "phi_change": _coef(report.ar_fit.phi_change),
                "innovation_variance_pre": report.ar_fit.innovation_var_pre,
                "innovation_variance_post": report.ar_fit.innovation_var_post,
                "n_pre": report.ar_fit.n_pre,
                "n_post": report.ar_fit.n_post,
                "causal_pre": report.ar_fit.causal_pre,
                "causal_post": report.ar_fit.causal_post,
            },
            "nested_f_test": {
                "statistic": nested.statistic,
                "df": list(nested.df),
                "p_value": nested.p_value,
                "rss_reduced": nested.rss_reduced,
                "rss_full": nested.rss_full,
                "conclusion": (
                    "phase-specific AR(1) processes"
                    if nested.p_value < 0.05
                    else "one AR(1) process fits both phases"
                ),
            },
            "variance_comparison": {
                "variance_pre": var.variance_pre,
                "variance_post": var.variance_post,
                "f_stat": var.f_stat,
                "df": list(var.df),
                "p_value": var.p_value,
                "applicable": var.applicable,
                "reason": var.reason,
            },
            "white_noise": {
                "phi_pre_covers_zero": noise.phi_pre_covers_zero,
                "phi_post_covers_zero": noise.phi_post_covers_zero,
                "by_phi": noise.by_phi,
                "acf_pre_within_band": noise.acf_pre_within_band,
                "acf_post_within_band": noise.acf_post_within_band,
                "by_acf": noise.by_acf,
                "label": (
                    "white noise: variance comparison applies"
                    if noise.by_phi
                    else "AR structure: variances estimated but not compared"
                ),
            },
        },
        "diagnostics": {
            "studentized_residuals": [float(v) for v in report.residuals.studentized],
            "leverage": [float(v) for v in report.residuals.leverage],
            "guides": [-2.0, 2.0],
            "acf": {
                "pre": _acf(report.residuals.acf_pre),
                "post": _acf(report.residuals.acf_post),
                "all": _acf(report.residuals.acf_all),
            },
        },
        "gls": gls,
        "baselines": {name: _baseline(b) for name, b in report.baselines.items()},
        "alt_equivalence": {
            "intercept_change": report.alt_equivalence[0],
            "slope_change": report.alt_equivalence[1],
        },
        "model_comparison": {
            "entries": [
                {"kind": e.kind, "rss": e.rss, "df_resid": e.df_resid, "mse": e.mse}
                for e in report.comparison.entries
            ],
            "ranking": list(report.comparison.ranking),
            "best": report.comparison.best,
        },
        "series": {
            "t": list(range(1, T + 1)),
            "calendar": calendar_labels,
            "observed": [float(v) for v in series.values],
            "fitted": [float(v) for v in fit.fitted_values()],
            "fitted_gls": fitted_gls,
            "change_point": fit.change_point,
            "intervention": window.intervention,
        },
    }


def _fmt(x, nd: int = 4) -> str:
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return "n/a"
    if isinstance(x, float):
        return f"{x:.{nd}f}"
    return str(x)


def _fmt_est(e: dict) -> str:
    return (
        f"{_fmt(e['value'])}  se {_fmt(e['se'])}  "
        f"95% CI [{_fmt(e['ci'][0])}, {_fmt(e['ci'][1])}]  p {_fmt(e['p_value'])}"
    )


def _text(doc: dict) -> str:
    lines: list[str] = []
    add = lines.append
    inp = doc["input"]
    cp = doc["change_point"]
    add("Interrupted time series analysis")
    add("=" * 48)
    add(
        f"Series: {inp['length']} monthly observations, {inp['start']} .. {inp['end']}"
    )
    add(
        f"Intervention month: {cp['intervention']} ({cp['intervention_calendar']}); "
        f"candidate window {cp['window']['first']}..{cp['window']['last']}"
    )
    add("")
    add("Change point")
    add("-" * 48)
    add(
        f"  estimate           {cp['estimate']} ({cp['calendar']})"
    )
    add(f"  delay vs. intervention  {cp['delay_months']} months")
    add(f"  log likelihood     {_fmt(cp['log_likelihood'])}")
    if cp["near_degenerate"]:
        add("  note: variance floor reached for at least one candidate")
    add("")
    add("Mean model")
    add("-" * 48)
    eff = doc["effects"]
    add(f"  pre  intercept     {_fmt_est(eff['intercept_pre'])}")
    add(f"  pre  slope         {_fmt_est(eff['slope_pre'])}")
    add(f"  post intercept     {_fmt_est(eff['intercept_post'])}")
    add(f"  post slope         {_fmt_est(eff['slope_post'])}")
    add("")
    add("Intervention effects")
    add("-" * 48)
    add(f"  level change       {_fmt_est(eff['level_change'])}")
    add(f"  trend change       {_fmt_est(eff['trend_change'])}")
    add(f"  intercept change   {_fmt_est(eff['intercept_change'])}")
    add("")
    add("Error structure")
    add("-" * 48)
    ar = doc["stochastic"]["ar"]
    for key, label in (
        ("phi_pre", "phi (pre)"),
        ("phi_post", "phi (post)"),
        ("phi_change", "phi change"),
    ):
        c = ar[key]
        add(
            f"  {label:<18} {_fmt(c['value'])}  se {_fmt(c['se'])}  "
            f"95% CI [{_fmt(c['ci'][0])}, {_fmt(c['ci'][1])}]"
        )
    add(
        f"  innovation var     pre {_fmt(ar['innovation_variance_pre'])}  "
        f"post {_fmt(ar['innovation_variance_post'])}"
    )
    nf = doc["stochastic"]["nested_f_test"]
    add(
        f"  shared-phi F test  F {_fmt(nf['statistic'])} on df "
        f"({nf['df'][0]}, {nf['df'][1]}), p {_fmt(nf['p_value'])}: {nf['conclusion']}"
    )
    add(f"  {doc['stochastic']['white_noise']['label']}")
    add("")
    add("Variance comparison")
    add("-" * 48)
    vc = doc["stochastic"]["variance_comparison"]
    add(
        f"  variances          pre {_fmt(vc['variance_pre'])}  post {_fmt(vc['variance_post'])}"
    )
    if vc["applicable"]:
        add(
            f"  F ratio            {_fmt(vc['f_stat'])} on df "
            f"({vc['df'][0]}, {vc['df'][1]}), two-sided p {_fmt(vc['p_value'])}"
        )
    else:
        add(f"  not compared: {vc['reason']}")
    add("")
    gls = doc["gls"]
    if gls["applicable"]:
        add("GLS re-estimation")
        add("-" * 48)
        add(f"  mode               {gls['mode']}")
        geff = gls["effects"]
        add(f"  level change       {_fmt_est(geff['level_change'])}")
        add(f"  trend change       {_fmt_est(geff['trend_change'])}")
        add("")
    add("Model comparison (residual mean square)")
    add("-" * 48)
    for e in doc["model_comparison"]["entries"]:
        add(
            f"  {e['kind']:<16} mse {_fmt(e['mse'])}  (rss {_fmt(e['rss'])}, "
            f"df {e['df_resid']})"
        )
    add(f"  best: {doc['model_comparison']['best']}")
    add("")
    return "\n".join(lines)


def emit_report(report: AnalysisReport, format: str = "json") -> str:
    """Serialize a report.

    ``format`` is "json" (canonical, deterministic, strict JSON) or "text"
    (human-readable summary rounded to 4 decimals).
    """
    doc = _clean(report_to_dict(report))
    if format == "json":
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    if format == "text":
        return _text(doc)
    raise ValueError(f"unknown report format {format!r} (expected 'json' or 'text')")


def _block(description: str, properties: dict, required: list[str] | None = None) -> dict:
    return {
        "type": "object",
        "description": description,
        "properties": properties,
        "required": required if required is not None else sorted(properties),
    }


_NUM = {"type": ["number", "null"]}
_NUM_ARRAY = {"type": "array", "items": {"type": ["number", "null"]}}
_INT = {"type": "integer"}
_STR = {"type": "string"}
_BOOL = {"type": "boolean"}

_ESTIMATE = _block(
    "Point estimate with t-based uncertainty",
    {"value": _NUM, "se": _NUM, "df": _NUM, "ci": _NUM_ARRAY, "p_value": _NUM},
)
_COEF = _block(
    "Coefficient with asymptotic SE and normal 95% CI",
    {"value": _NUM, "se": _NUM, "ci": _NUM_ARRAY, "covers_zero": _BOOL},
)
_PHASE = _block(
    "One phase of the segmented mean fit",
    {
        "intercept": _NUM,
        "slope": _NUM,
        "start": _INT,
        "stop": _INT,
        "n": _INT,
        "rss": _NUM,
        "sigma_sq": _NUM,
        "sigma_sq_mle": _NUM,
        "dof": _INT,
    },
)
_ACF = _block(
    "Sample autocorrelations with white-noise band",
    {
        "lags": {"type": "array", "items": _INT},
        "values": _NUM_ARRAY,
        "band": _NUM,
        "n": _INT,
        "defined": _BOOL,
    },
)

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "itskit-report",
    "title": "itskit analysis report",
    "description": (
        "Canonical result document of one interrupted-time-series analysis. "
        "Field names are stable within a schema major version; numbers may be "
        "null where a quantity is undefined."
    ),
    "version": SCHEMA_VERSION,
    "type": "object",
    "required": [
        "schema_version",
        "provenance",
        "input",
        "validation",
        "change_point",
        "mean_model",
        "effects",
        "stochastic",
        "diagnostics",
        "gls",
        "baselines",
        "alt_equivalence",
        "model_comparison",
        "series",
    ],
    "properties": {
        "schema_version": _STR,
        "provenance": _block(
            "Run identification: input digest, config echo, software version",
            {"input_sha256": _STR, "config": {"type": "object"}, "version": _STR},
        ),
        "input": _block(
            "Shape and calendar anchor of the analyzed series",
            {
                "length": _INT,
                "start_month": _INT,
                "start_year": _INT,
                "start": _STR,
                "end": _STR,
                "bounds": {"type": ["array", "null"], "items": _NUM},
            },
        ),
        "validation": _block(
            "Input validation outcome", {"ok": _BOOL, "issues": {"type": "array"}}
        ),
        "change_point": _block(
            "Selected change point and the profile log-likelihood trace",
            {
                "estimate": _INT,
                "calendar": _STR,
                "intervention": _INT,
                "intervention_calendar": _STR,
                "window": {"type": "object"},
                "delay_months": _INT,
                "log_likelihood": _NUM,
                "near_degenerate": _BOOL,
                "trace": {"type": "array"},
            },
        ),
        "mean_model": _block(
            "Two-phase segmented mean at the selected change point",
            {
                "pre": _PHASE,
                "post": _PHASE,
                "intercept_change": _NUM,
                "slope_change": _NUM,
                "level_change": _NUM,
            },
        ),
        "effects": _block(
            "Intervention effect estimates with inference",
            {
                "level_change": _ESTIMATE,
                "trend_change": _ESTIMATE,
                "intercept_change": _ESTIMATE,
                "intercept_pre": _ESTIMATE,
                "slope_pre": _ESTIMATE,
                "intercept_post": _ESTIMATE,
                "slope_post": _ESTIMATE,
                "delay_months": _INT,
                "change_point": _INT,
            },
        ),
        "stochastic": _block(
            "Residual error structure",
            {
                "ar": _block(
                    "Segment-wise AR(1) estimates",
                    {
                        "phi_pre": _COEF,
                        "phi_post": _COEF,
                        "phi_change": _COEF,
                        "innovation_variance_pre": _NUM,
                        "innovation_variance_post": _NUM,
                        "n_pre": _INT,
                        "n_post": _INT,
                        "causal_pre": _BOOL,
                        "causal_post": _BOOL,
                    },
                ),
                "nested_f_test": _block(
                    "Shared vs phase-specific AR coefficient",
                    {
                        "statistic": _NUM,
                        "df": {"type": "array", "items": _INT},
                        "p_value": _NUM,
                        "rss_reduced": _NUM,
                        "rss_full": _NUM,
                        "conclusion": _STR,
                    },
                ),
                "variance_comparison": _block(
                    "Pre/post residual variance F ratio (gated)",
                    {
                        "variance_pre": _NUM,
                        "variance_post": _NUM,
                        "f_stat": _NUM,
                        "df": {"type": "array", "items": _INT},
                        "p_value": _NUM,
                        "applicable": _BOOL,
                        "reason": {"type": ["string", "null"]},
                    },
                ),
                "white_noise": {"type": "object"},
            },
        ),
        "diagnostics": _block(
            "Residual diagnostics for plotting",
            {
                "studentized_residuals": _NUM_ARRAY,
                "leverage": _NUM_ARRAY,
                "guides": _NUM_ARRAY,
                "acf": _block("Autocorrelations", {"pre": _ACF, "post": _ACF, "all": _ACF}),
            },
        ),
        "gls": {"type": "object", "description": "GLS re-estimation pass or skip reason"},
        "baselines": {"type": "object", "description": "Reference model fits by kind"},
        "alt_equivalence": _block(
            "Elapsed-time fit mapped to increment form",
            {"intercept_change": _NUM, "slope_change": _NUM},
        ),
        "model_comparison": _block(
            "Residual mean square ranking",
            {"entries": {"type": "array"}, "ranking": {"type": "array"}, "best": _STR},
        ),
        "series": _block(
            "Observed and fitted values for plotting",
            {
                "t": {"type": "array", "items": _INT},
                "calendar": {"type": "array", "items": _STR},
                "observed": _NUM_ARRAY,
                "fitted": _NUM_ARRAY,
                "fitted_gls": {"type": ["array", "null"]},
                "change_point": _INT,
                "intervention": _INT,
            },
        ),
    },
}
