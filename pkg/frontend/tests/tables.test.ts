import { describe, expect, it } from "vitest";

import { interval } from "../src/format.js";
import {
  allTables,
  arCoefficientsTable,
  effectSizesTable,
  meanParametersTable,
  modelLabel,
  mseComparisonTable,
  renderTable,
  varianceComparisonTable,
} from "../src/tables.js";
import type { Estimate } from "../src/types.js";
import { gatedReport, plainReport } from "./helpers.js";

function verbatimRow(est: Estimate): string[] {
  return [
    String(est.value),
    String(est.se),
    String(est.df),
    `${String(est.ci![0])} .. ${String(est.ci![1])}`,
    String(est.p_value),
  ];
}

describe("mean parameters table", () => {
  const spec = meanParametersTable(plainReport);

  it("lists the four phase coefficients with uncertainty columns", () => {
    expect(spec.columns).toEqual(["estimate", "std. error", "df", "95% CI", "p-value"]);
    expect(spec.rows.map((r) => r.label)).toEqual([
      "pre-phase intercept",
      "pre-phase slope",
      "post-phase intercept",
      "post-phase slope",
    ]);
  });

  it("copies every cell verbatim from the report", () => {
    const e = plainReport.effects;
    expect(spec.rows[0].cells).toEqual(verbatimRow(e.intercept_pre));
    expect(spec.rows[1].cells).toEqual(verbatimRow(e.slope_pre));
    expect(spec.rows[2].cells).toEqual(verbatimRow(e.intercept_post));
    expect(spec.rows[3].cells).toEqual(verbatimRow(e.slope_post));
  });

  it("notes the phase ranges", () => {
    expect(spec.notes[0]).toContain(
      `months ${plainReport.mean_model.pre.start}..${plainReport.mean_model.pre.stop}`,
    );
  });
});

describe("effect sizes table", () => {
  const spec = effectSizesTable(plainReport);

  it("reports the three contrasts plus the change point and delay", () => {
    const e = plainReport.effects;
    expect(spec.rows[0].cells).toEqual(verbatimRow(e.level_change));
    expect(spec.rows[1].cells).toEqual(verbatimRow(e.trend_change));
    expect(spec.rows[2].cells).toEqual(verbatimRow(e.intercept_change));
    expect(spec.rows[3].cells[0]).toBe(String(e.change_point));
    expect(spec.rows[4].cells[0]).toBe(String(e.delay_months));
  });
});

describe("AR coefficients table", () => {
  const spec = arCoefficientsTable(plainReport);

  it("copies the three coefficients with their intervals", () => {
    const ar = plainReport.stochastic.ar;
    for (const [row, est] of [
      [spec.rows[0], ar.phi_pre],
      [spec.rows[1], ar.phi_post],
      [spec.rows[2], ar.phi_change],
    ] as const) {
      expect(row.cells[0]).toBe(String(est.value));
      expect(row.cells[1]).toBe(String(est.se));
      expect(row.cells[2]).toBe(interval(est.ci));
      expect(row.cells[3]).toBe(est.covers_zero ? "yes" : "no");
    }
  });

  it("summarizes the one-vs-two-process comparison in the notes", () => {
    const nested = plainReport.stochastic.nested_f_test;
    const note = spec.notes[1];
    expect(note).toContain(`F = ${String(nested.statistic)}`);
    expect(note).toContain(`(${nested.df[0]}, ${nested.df[1]})`);
    expect(note).toContain(`p = ${String(nested.p_value)}`);
    expect(note).toContain(nested.conclusion);
  });

  it("carries the white-noise verdict", () => {
    expect(spec.notes[2]).toBe(plainReport.stochastic.white_noise.label);
  });
});

describe("variance comparison table", () => {
  it("shows both variances, the statistic, df, and p when applicable", () => {
    const spec = varianceComparisonTable(plainReport);
    const vc = plainReport.stochastic.variance_comparison;
    expect(vc.applicable).toBe(true);
    expect(spec.rows.map((r) => r.cells[0])).toEqual([
      String(vc.variance_pre),
      String(vc.variance_post),
      String(vc.f_stat),
      `(${vc.df[0]}, ${vc.df[1]})`,
      String(vc.p_value),
    ]);
    expect(spec.notes).toEqual([plainReport.stochastic.white_noise.label]);
  });

  it("replaces the p-value and states the reason when the test is gated off", () => {
    const spec = varianceComparisonTable(gatedReport);
    const vc = gatedReport.stochastic.variance_comparison;
    expect(vc.applicable).toBe(false);
    expect(spec.rows[4].cells[0]).toBe("n/a");
    expect(spec.notes[0]).toBe(vc.reason);
    // Variances themselves are still estimated and shown.
    expect(spec.rows[0].cells[0]).toBe(String(vc.variance_pre));
  });
});

describe("MSE comparison table", () => {
  const spec = mseComparisonTable(plainReport);

  it("lists every compared model with rank, RSS, df, and MSE verbatim", () => {
    const { entries, ranking } = plainReport.model_comparison;
    expect(spec.rows).toHaveLength(entries.length);
    entries.forEach((entry, i) => {
      expect(spec.rows[i].label).toBe(modelLabel(entry.kind));
      expect(spec.rows[i].cells).toEqual([
        String(ranking.indexOf(entry.kind) + 1),
        String(entry.rss),
        String(entry.df_resid),
        String(entry.mse),
      ]);
    });
  });

  it("flags the winning model", () => {
    const best = spec.rows.filter((r) => r.best);
    expect(best).toHaveLength(1);
    expect(best[0].label).toBe(modelLabel(plainReport.model_comparison.best));
    expect(spec.notes[0]).toContain(modelLabel(plainReport.model_comparison.best));
  });
});

describe("renderTable", () => {
  it("renders the spec as an identifiable figure with all cells", () => {
    const spec = meanParametersTable(plainReport);
    const figure = renderTable(spec);
    expect(figure.id).toBe("mean-parameters");
    expect(figure.querySelector("h3")?.textContent).toBe(spec.title);
    const headers = [...figure.querySelectorAll("thead th")].map((th) => th.textContent);
    expect(headers).toEqual(["", ...spec.columns]);
    const bodyRows = [...figure.querySelectorAll("tbody tr")];
    expect(bodyRows).toHaveLength(spec.rows.length);
    bodyRows.forEach((tr, i) => {
      expect(tr.querySelector("th")?.textContent).toBe(spec.rows[i].label);
      const cells = [...tr.querySelectorAll("td")].map((td) => td.textContent);
      expect(cells).toEqual(spec.rows[i].cells);
    });
    expect(figure.querySelectorAll(".table-note")).toHaveLength(spec.notes.length);
  });

  it("marks the best row in the MSE table", () => {
    const figure = renderTable(mseComparisonTable(plainReport));
    expect(figure.querySelectorAll("tbody tr.best-row")).toHaveLength(1);
  });
});

describe("allTables", () => {
  it("produces the five tables in presentation order", () => {
    expect(allTables(plainReport).map((t) => t.id)).toEqual([
      "mean-parameters",
      "effect-sizes",
      "ar-coefficients",
      "variance-comparison",
      "mse-comparison",
    ]);
  });
});
