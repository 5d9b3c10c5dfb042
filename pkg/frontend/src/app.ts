/** Application shell: wires the config form to the service client.
 *
 * One analysis is in flight at a time. A submit that lands while one is
 * running replaces any queued submission and runs when the active one
 * settles; its response is the only one rendered, so iterating on the
 * window never interleaves stale results.
 */

import type { AnalyzeBody, AnalyzeOutcome, ServiceClient } from "./client.js";
import { clear, h } from "./dom.js";
import { buildConfigForm, configFromValues, type ConfigFormHandle } from "./form.js";
import { renderResults } from "./results.js";

export interface AppHandle {
  form: ConfigFormHandle;
  results: HTMLElement;
  status: HTMLElement;
  loadCsv(text: string, name: string): void;
  csvLoaded(): boolean;
}

function sniffDateColumn(csvText: string): string | null {
  const header = csvText.split(/\r?\n/, 1)[0] ?? "";
  for (const rawCell of header.split(",")) {
    const name = rawCell.trim();
    const lowered = name.toLowerCase();
    if (lowered === "date" || lowered === "month") {
      return name;
    }
  }
  return null;
}

function countDataRows(csvText: string): number {
  const lines = csvText.split(/\r?\n/).filter((line) => line.trim() !== "");
  return Math.max(lines.length - 1, 0);
}

export function mountApp(root: HTMLElement, client: ServiceClient): AppHandle {
  let csvText: string | null = null;
  let dateColumn: string | null = null;
  let active = false;
  let queued: AnalyzeBody | null = null;

  const status = h("p", { class: "status-line" });
  const results = h("div", { class: "results-container" });
  const schemaNote = h("span", { class: "schema-note" });

  const form = buildConfigForm((values) => {
    form.clearErrors();
    const parsed = configFromValues(values);
    if ("errors" in parsed) {
      form.showErrors(parsed.errors);
      return;
    }
    if (csvText === null) {
      form.showErrors({ file: "choose a CSV file first" });
      return;
    }
    submit({ csv: csvText, date_column: dateColumn, config: parsed.config });
  });

  function setStatus(text: string, isError = false): void {
    status.textContent = text;
    status.className = isError ? "status-line error" : "status-line";
  }

  function submit(body: AnalyzeBody): void {
    if (active) {
      queued = body;
      setStatus("analyzing... (latest settings queued)");
      return;
    }
    void launch(body);
  }

  async function launch(body: AnalyzeBody): Promise<void> {
    active = true;
    setStatus("analyzing...");
    const outcome = await client.analyze(body);
    active = false;
    if (queued !== null) {
      // A newer submission supersedes this response; never render it.
      const next = queued;
      queued = null;
      void launch(next);
      return;
    }
    render(outcome);
  }

  function render(outcome: AnalyzeOutcome): void {
    switch (outcome.kind) {
      case "report": {
        form.clearErrors();
        clear(results);
        results.append(renderResults(outcome.report, outcome.raw));
        setStatus(
          `analysis complete: change point at month ${String(outcome.report.change_point.estimate)}`,
        );
        break;
      }
      case "validation": {
        form.showIssues(outcome.issues);
        setStatus("the service rejected the input; see the field messages", true);
        break;
      }
      case "numerical": {
        setStatus(`numerical failure: ${outcome.detail}`, true);
        break;
      }
      case "transport": {
        setStatus(outcome.detail, true);
        break;
      }
    }
  }

  function loadCsv(text: string, name: string): void {
    csvText = text;
    dateColumn = sniffDateColumn(text);
    const rows = countDataRows(text);
    const columnNote = dateColumn === null ? "no date column" : `date column "${dateColumn}"`;
    form.fileNote.textContent = `${name}: ${rows} data rows, ${columnNote}`;
    form.showErrors({});
  }

  form.fileInput.addEventListener("change", () => {
    const file = form.fileInput.files?.[0];
    if (!file) {
      return;
    }
    const reader = new FileReader();
    reader.onload = () => loadCsv(String(reader.result ?? ""), file.name);
    reader.readAsText(file);
  });

  root.append(
    h(
      "header",
      { class: "app-header" },
      h("h1", {}, "Interrupted time series analysis"),
      h(
        "p",
        { class: "tagline" },
        "Upload a monthly series, set the intervention and candidate window, " +
          "and estimate where the change actually starts. ",
        schemaNote,
      ),
    ),
    h("section", { class: "configure" }, form.element),
    status,
    results,
  );

  void client.schemaVersion().then((version) => {
    if (version !== null) {
      schemaNote.textContent = `Service report schema ${version}.`;
    }
  });

  return {
    form,
    results,
    status,
    loadCsv,
    csvLoaded: () => csvText !== null,
  };
}
