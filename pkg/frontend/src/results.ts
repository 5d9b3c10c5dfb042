/** Results view: summary header, four plot families, five estimate tables.
 *
 * Everything shown is read straight off the report; the only client-side
 * work is layout. The download link offers the service's exact response
 * bytes, not a re-serialization.
 */

import { acfChart, loglikChart, residualChart, seriesChart } from "./charts.js";
import { h } from "./dom.js";
import { cell } from "./format.js";
import { monthLabel } from "./calendar.js";
import { allTables, renderTable } from "./tables.js";
import type { Report } from "./types.js";

function summary(report: Report): HTMLElement {
  const cp = report.change_point;
  const items: [string, string][] = [
    ["series", `${report.input.start} .. ${report.input.end} (${String(report.input.length)} months)`],
    ["intervention", `month ${String(cp.intervention)} (${monthLabel(cp.intervention_calendar)})`],
    [
      "candidate window",
      `months ${String(cp.window.first)} .. ${String(cp.window.last)}`,
    ],
    ["change point estimate", `month ${String(cp.estimate)} (${monthLabel(cp.calendar)})`],
    ["delay vs intervention", `${String(cp.delay_months)} months`],
    ["log likelihood", cell(cp.log_likelihood)],
  ];
  const dl = h("dl", { class: "summary-grid" });
  for (const [term, detail] of items) {
    dl.append(h("dt", {}, term), h("dd", {}, detail));
  }
  return h("section", { class: "analysis-summary" }, h("h2", {}, "Analysis"), dl);
}

function warnings(report: Report): HTMLElement | null {
  const notes: string[] = [];
  if (report.change_point.near_degenerate) {
    notes.push(
      "near-degenerate fit: residual variance at the change point is at the " +
        "numerical floor; estimates may be unstable",
    );
  }
  for (const issue of report.validation.issues) {
    notes.push(issue);
  }
  if (notes.length === 0) {
    return null;
  }
  const list = h("ul", { class: "warning-list" });
  for (const note of notes) {
    list.append(h("li", {}, note));
  }
  return h("section", { class: "report-warnings" }, list);
}

function glsNote(report: Report): HTMLElement {
  const { gls } = report;
  if (!gls.applicable || !gls.fit) {
    return h(
      "p",
      { class: "gls-note" },
      `GLS refinement: ${gls.reason ?? "not available"}`,
    );
  }
  const effects = gls.effects;
  const level = effects ? cell(effects.level_change.value) : "n/a";
  return h(
    "p",
    { class: "gls-note" },
    `GLS refinement (${gls.mode ?? "single"} mode): change point month ` +
      `${String(gls.fit.change_point)}, level change ${level}; the dashed ` +
      "curve in the series plot is the GLS fit",
  );
}

function plotFamily(name: string, ...charts: SVGSVGElement[]): HTMLElement {
  return h("section", { class: "plot-family", "data-plot": name }, ...charts);
}

function downloadLink(raw: string): HTMLElement {
  const href = `data:application/json;charset=utf-8,${encodeURIComponent(raw)}`;
  return h(
    "p",
    { class: "download-row" },
    h("a", { href, download: "report.json" }, "download the report JSON"),
  );
}

export function renderResults(report: Report, raw?: string): HTMLElement {
  const acf = report.diagnostics.acf;
  const root = h(
    "div",
    { class: "results-view" },
    summary(report),
    warnings(report),
    plotFamily("series", seriesChart(report)),
    plotFamily("loglik", loglikChart(report)),
    plotFamily("residuals", residualChart(report)),
    plotFamily(
      "acf",
      acfChart(acf.pre, "ACF, pre-phase residuals"),
      acfChart(acf.post, "ACF, post-phase residuals"),
      acfChart(acf.all, "ACF, all residuals"),
    ),
    glsNote(report),
    h(
      "section",
      { class: "estimate-tables" },
      ...allTables(report).map(renderTable),
    ),
    raw !== undefined ? downloadLink(raw) : null,
    h(
      "footer",
      { class: "provenance" },
      h(
        "p",
        {},
        `toolkit ${report.provenance.version}, report schema ${report.schema_version}; ` +
          `input sha256 ${report.provenance.input_sha256}`,
      ),
      h("p", { class: "config-echo" }, `config: ${JSON.stringify(report.provenance.config)}`),
    ),
  );
  return root;
}
