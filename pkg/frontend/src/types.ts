/** Shapes of the analysis report served by POST /v1/analyze.
 *
 * These mirror the service's JSON schema (GET /v1/schema). Numbers that can
 * be undefined numerically arrive as JSON null, so cells are typed `Maybe`.
 */

export type Maybe = number | null;

/** Point estimate with its uncertainty summary. */
export interface Estimate {
  value: Maybe;
  se: Maybe;
  df: Maybe;
  ci: [Maybe, Maybe] | null;
  p_value: Maybe;
}

export interface PhaseFit {
  intercept: number;
  slope: number;
  start: number;
  stop: number;
  n: number;
  rss: number;
  sigma_sq: number;
  sigma_sq_mle: number;
  dof: number;
}

/** The analysis settings echoed back verbatim in provenance. */
export interface ConfigEcho {
  tet: number;
  before: number;
  after: number;
  start_month: number | null;
  start_year: number | null;
  censor_set: number[] | null;
  gls_pass: boolean;
  gls_iterations: number;
}

export interface EffectsBlock {
  level_change: Estimate;
  trend_change: Estimate;
  intercept_change: Estimate;
  intercept_pre: Estimate;
  slope_pre: Estimate;
  intercept_post: Estimate;
  slope_post: Estimate;
  delay_months: number;
  change_point: number;
}

export interface PhiEstimate {
  value: Maybe;
  se: Maybe;
  ci: [Maybe, Maybe] | null;
  covers_zero: boolean | null;
}

export interface AcfBlock {
  lags: number[];
  values: Maybe[];
  band: Maybe;
  n: number;
  defined: boolean;
}

export interface MeanFitSummary {
  change_point: number;
  calendar: string;
  delay_months: number;
  log_likelihood: Maybe;
  near_degenerate: boolean;
  pre: PhaseFit;
  post: PhaseFit;
  intercept_change: number;
  slope_change: number;
  level_change: number;
}

export interface BaselineFit {
  kind: string;
  split: number | null;
  coefficients: Record<string, number>;
  n_fitted: number;
  rss: number;
  df_resid: number;
  mse: number;
  coef_tests?: Record<string, Estimate>;
}

export interface Report {
  schema_version: string;
  provenance: {
    input_sha256: string;
    config: ConfigEcho;
    version: string;
  };
  input: {
    length: number;
    start_month: number;
    start_year: number;
    start: string;
    end: string;
    bounds: [number, number] | null;
  };
  validation: { ok: boolean; issues: string[] };
  change_point: {
    estimate: number;
    calendar: string;
    intervention: number;
    intervention_calendar: string;
    window: { before: number; after: number; first: number; last: number };
    delay_months: number;
    log_likelihood: Maybe;
    near_degenerate: boolean;
    trace: { candidate: number; log_likelihood: Maybe }[];
  };
  mean_model: {
    pre: PhaseFit;
    post: PhaseFit;
    intercept_change: number;
    slope_change: number;
    level_change: number;
  };
  effects: EffectsBlock;
  stochastic: {
    ar: {
      phi_pre: PhiEstimate;
      phi_post: PhiEstimate;
      phi_change: PhiEstimate;
      innovation_variance_pre: Maybe;
      innovation_variance_post: Maybe;
      n_pre: number;
      n_post: number;
      causal_pre: boolean;
      causal_post: boolean;
    };
    nested_f_test: {
      statistic: Maybe;
      df: [number, number];
      p_value: Maybe;
      rss_reduced: Maybe;
      rss_full: Maybe;
      conclusion: string;
    };
    variance_comparison: {
      variance_pre: Maybe;
      variance_post: Maybe;
      f_stat: Maybe;
      df: [number, number];
      p_value: Maybe;
      applicable: boolean;
      reason: string | null;
    };
    white_noise: {
      phi_pre_covers_zero: boolean | null;
      phi_post_covers_zero: boolean | null;
      by_phi: boolean;
      acf_pre_within_band: boolean | null;
      acf_post_within_band: boolean | null;
      by_acf: boolean;
      label: string;
    };
  };
  diagnostics: {
    studentized_residuals: Maybe[];
    leverage: Maybe[];
    guides: [number, number];
    acf: { pre: AcfBlock; post: AcfBlock; all: AcfBlock };
  };
  gls: {
    applicable: boolean;
    reason: string | null;
    mode?: string;
    fit?: MeanFitSummary;
    effects?: EffectsBlock;
  };
  baselines: {
    fixed_cp: BaselineFit;
    censored: BaselineFit;
    quadratic: BaselineFit;
    alt_param: BaselineFit;
  };
  alt_equivalence: { intercept_change: number; slope_change: number };
  model_comparison: {
    entries: { kind: string; rss: number; df_resid: number; mse: number }[];
    ranking: string[];
    best: string;
  };
  series: {
    t: number[];
    calendar: string[];
    observed: number[];
    fitted: number[];
    fitted_gls: number[] | null;
    change_point: number;
    intervention: number;
  };
}
