/** The five estimate tables of the results view.
 *
 * Each builder projects one report block into rows of preformatted cells;
 * renderTable turns a spec into markup. All cell text comes from format.ts,
 * which stringifies the JSON values without rounding.
 */

import { h } from "./dom.js";
import { MISSING, cell, dfPair, estimateCells, interval, yesNo } from "./format.js";
import type { Report } from "./types.js";

export interface TableRow {
  label: string;
  cells: string[];
  best?: boolean;
}

export interface TableSpec {
  id: string;
  title: string;
  columns: string[];
  rows: TableRow[];
  notes: string[];
}

const ESTIMATE_COLUMNS = ["estimate", "std. error", "df", "95% CI", "p-value"];

const MODEL_LABELS: Record<string, string> = {
  estimated_cp: "estimated change point",
  fixed_cp: "fixed change point",
  censored: "censored window",
  quadratic: "quadratic trend",
  alt_param: "alternative parameterization",
};

export function modelLabel(kind: string): string {
  return MODEL_LABELS[kind] ?? kind;
}

export function meanParametersTable(report: Report): TableSpec {
  const { effects, mean_model } = report;
  return {
    id: "mean-parameters",
    title: "Mean model parameters",
    columns: ESTIMATE_COLUMNS,
    rows: [
      { label: "pre-phase intercept", cells: estimateCells(effects.intercept_pre) },
      { label: "pre-phase slope", cells: estimateCells(effects.slope_pre) },
      { label: "post-phase intercept", cells: estimateCells(effects.intercept_post) },
      { label: "post-phase slope", cells: estimateCells(effects.slope_post) },
    ],
    notes: [
      `pre phase: months ${String(mean_model.pre.start)}..${String(mean_model.pre.stop)} ` +
        `(n = ${String(mean_model.pre.n)}); post phase: months ` +
        `${String(mean_model.post.start)}..${String(mean_model.post.stop)} ` +
        `(n = ${String(mean_model.post.n)})`,
    ],
  };
}

export function effectSizesTable(report: Report): TableSpec {
  const { effects } = report;
  return {
    id: "effect-sizes",
    title: "Effect sizes",
    columns: ESTIMATE_COLUMNS,
    rows: [
      { label: "level change", cells: estimateCells(effects.level_change) },
      { label: "trend change", cells: estimateCells(effects.trend_change) },
      { label: "intercept change", cells: estimateCells(effects.intercept_change) },
      {
        label: "change point (month)",
        cells: [String(effects.change_point), "", "", "", ""],
      },
      {
        label: "delay vs intervention (months)",
        cells: [String(effects.delay_months), "", "", "", ""],
      },
    ],
    notes: [],
  };
}

export function arCoefficientsTable(report: Report): TableSpec {
  const { ar, nested_f_test, white_noise } = report.stochastic;
  const notes = [
    `innovation variance: pre ${cell(ar.innovation_variance_pre)} ` +
      `(n = ${String(ar.n_pre)}), post ${cell(ar.innovation_variance_post)} ` +
      `(n = ${String(ar.n_post)})`,
    `one vs two AR processes: F = ${cell(nested_f_test.statistic)}, ` +
      `df = ${dfPair(nested_f_test.df)}, p = ${cell(nested_f_test.p_value)}; ` +
      nested_f_test.conclusion,
    white_noise.label,
  ];
  if (!ar.causal_pre || !ar.causal_post) {
    const phases = [!ar.causal_pre ? "pre" : null, !ar.causal_post ? "post" : null]
      .filter((p) => p !== null)
      .join(" and ");
    notes.push(
      `${phases} phase coefficient lies outside the causal region; ` +
        "its standard error is undefined",
    );
  }
  return {
    id: "ar-coefficients",
    title: "AR(1) coefficients",
    columns: ["estimate", "std. error", "95% CI", "CI covers 0"],
    rows: [
      {
        label: "pre-phase coefficient",
        cells: [
          cell(ar.phi_pre.value),
          cell(ar.phi_pre.se),
          interval(ar.phi_pre.ci),
          yesNo(ar.phi_pre.covers_zero),
        ],
      },
      {
        label: "post-phase coefficient",
        cells: [
          cell(ar.phi_post.value),
          cell(ar.phi_post.se),
          interval(ar.phi_post.ci),
          yesNo(ar.phi_post.covers_zero),
        ],
      },
      {
        label: "difference (post - pre)",
        cells: [
          cell(ar.phi_change.value),
          cell(ar.phi_change.se),
          interval(ar.phi_change.ci),
          yesNo(ar.phi_change.covers_zero),
        ],
      },
    ],
    notes,
  };
}

export function varianceComparisonTable(report: Report): TableSpec {
  const vc = report.stochastic.variance_comparison;
  const notes: string[] = [];
  if (!vc.applicable && vc.reason) {
    notes.push(vc.reason);
  }
  notes.push(report.stochastic.white_noise.label);
  return {
    id: "variance-comparison",
    title: "Variance comparison",
    columns: ["value"],
    rows: [
      { label: "pre-phase variance", cells: [cell(vc.variance_pre)] },
      { label: "post-phase variance", cells: [cell(vc.variance_post)] },
      { label: "F statistic", cells: [cell(vc.f_stat)] },
      { label: "df", cells: [dfPair(vc.df)] },
      { label: "p-value", cells: [vc.applicable ? cell(vc.p_value) : MISSING] },
    ],
    notes,
  };
}

export function mseComparisonTable(report: Report): TableSpec {
  const { entries, ranking, best } = report.model_comparison;
  return {
    id: "mse-comparison",
    title: "Model comparison by MSE",
    columns: ["rank", "RSS", "residual df", "MSE"],
    rows: entries.map((entry) => ({
      label: modelLabel(entry.kind),
      cells: [
        String(ranking.indexOf(entry.kind) + 1),
        String(entry.rss),
        String(entry.df_resid),
        String(entry.mse),
      ],
      best: entry.kind === best,
    })),
    notes: [`lowest mean squared error: ${modelLabel(best)}`],
  };
}

export function allTables(report: Report): TableSpec[] {
  return [
    meanParametersTable(report),
    effectSizesTable(report),
    arCoefficientsTable(report),
    varianceComparisonTable(report),
    mseComparisonTable(report),
  ];
}

export function renderTable(spec: TableSpec): HTMLElement {
  const head = h("tr", {}, h("th", { scope: "col" }));
  for (const column of spec.columns) {
    head.append(h("th", { scope: "col" }, column));
  }
  const body = h("tbody");
  for (const row of spec.rows) {
    const tr = h(
      "tr",
      row.best ? { class: "best-row" } : {},
      h("th", { scope: "row" }, row.label),
    );
    for (const text of row.cells) {
      tr.append(h("td", {}, text));
    }
    body.append(tr);
  }
  const figure = h(
    "figure",
    { class: "report-table", id: spec.id },
    h("h3", {}, spec.title),
    h("table", {}, h("thead", {}, head), body),
  );
  for (const note of spec.notes) {
    figure.append(h("p", { class: "table-note" }, note));
  }
  return figure;
}
