/** The upload-and-configure view: CSV picker plus the five analysis inputs.
 *
 * Field values serialize to exactly the config object the service echoes in
 * the report's provenance block; service-side validation messages map back
 * onto the field that caused them.
 */

import type { AnalyzeConfig } from "./client.js";
import { monthLabel, parseIntervention } from "./calendar.js";
import { clear, h } from "./dom.js";

export type FieldName =
  | "file"
  | "intervention"
  | "before"
  | "after"
  | "startMonth"
  | "startYear"
  | "glsIterations";

export interface FormValues {
  intervention: string;
  before: string;
  after: string;
  startMonth: string;
  startYear: string;
  glsPass: boolean;
  glsIterations: string;
}

export type FieldErrors = Partial<Record<FieldName, string>>;

export type ConfigResult = { config: AnalyzeConfig } | { errors: FieldErrors };

function intField(
  text: string,
  field: FieldName,
  errors: FieldErrors,
  check: (n: number) => string | null,
): number | null {
  if (!/^-?\d+$/.test(text.trim())) {
    errors[field] = "enter a whole number";
    return null;
  }
  const n = Number(text.trim());
  const complaint = check(n);
  if (complaint !== null) {
    errors[field] = complaint;
    return null;
  }
  return n;
}

/** Serialize form values into the exact provenance-echo config, or per-field errors. */
export function configFromValues(values: FormValues): ConfigResult {
  const errors: FieldErrors = {};
  const before = intField(values.before, "before", errors, (n) =>
    n < 0 ? "must be zero or more" : null,
  );
  const after = intField(values.after, "after", errors, (n) =>
    n < 0 ? "must be zero or more" : null,
  );
  const startMonth = intField(values.startMonth, "startMonth", errors, (n) =>
    n < 1 || n > 12 ? "month must be 1..12" : null,
  );
  const startYear = intField(values.startYear, "startYear", errors, (n) =>
    n < 1 ? "enter a calendar year" : null,
  );
  const glsIterations = values.glsPass
    ? intField(values.glsIterations, "glsIterations", errors, (n) =>
        n < 1 ? "iterations must be at least 1" : null,
      )
    : 1;

  let tet: number | null = null;
  if (startMonth !== null && startYear !== null) {
    const parsed = parseIntervention(values.intervention, startMonth, startYear);
    if ("error" in parsed) {
      errors.intervention = parsed.error;
    } else {
      tet = parsed.index;
    }
  } else if (values.intervention.trim() === "") {
    errors.intervention = "enter a month index or a YYYY-MM date";
  }

  if (Object.keys(errors).length > 0 || tet === null || glsIterations === null) {
    return { errors };
  }
  return {
    config: {
      tet,
      before: before as number,
      after: after as number,
      start_month: startMonth,
      start_year: startYear,
      censor_set: null,
      gls_pass: values.glsPass,
      gls_iterations: glsIterations,
    },
  };
}

/** Attribute a service validation message to the input that drives it. */
export function fieldForIssue(issue: string): FieldName | null {
  const text = issue.toLowerCase();
  if (text.includes("start_month") || text.includes("start_year")) {
    return "startMonth";
  }
  if (text.includes("pre-phase margin")) {
    return "before";
  }
  if (text.includes("post-phase margin")) {
    return "after";
  }
  if (text.includes("intervention") || text.includes("candidate")) {
    return "intervention";
  }
  if (
    text.includes("column") ||
    text.includes("row") ||
    text.includes("csv") ||
    text.includes("blank") ||
    text.includes("non-finite") ||
    text.includes("bounds") ||
    text.includes("observations")
  ) {
    return "file";
  }
  return null;
}

interface FieldHandle {
  input: HTMLInputElement;
  error: HTMLElement;
}

export interface ConfigFormHandle {
  element: HTMLFormElement;
  fileInput: HTMLInputElement;
  fileNote: HTMLElement;
  values(): FormValues;
  setValues(values: Partial<FormValues>): void;
  showErrors(errors: FieldErrors): void;
  showIssues(issues: string[]): string[];
  clearErrors(): void;
  conversionHint: HTMLElement;
  refreshHint(): void;
}

function labelled(
  field: FieldName,
  label: string,
  input: HTMLInputElement,
  hint?: HTMLElement,
): { wrap: HTMLElement; handle: FieldHandle } {
  const error = h("span", { class: "field-error", "data-field": field });
  const wrap = h(
    "label",
    { class: "field", "data-field": field },
    h("span", { class: "field-label" }, label),
    input,
    hint ?? null,
    error,
  );
  return { wrap, handle: { input, error } };
}

/** Build the form; onSubmit receives the raw field values on every submit. */
export function buildConfigForm(onSubmit: (values: FormValues) => void): ConfigFormHandle {
  const fileInput = h("input", { type: "file", accept: ".csv,text/csv", name: "file" });
  const fileNote = h("span", { class: "file-note" });
  const fileError = h("span", { class: "field-error", "data-field": "file" });

  const intervention = h("input", {
    type: "text",
    name: "intervention",
    placeholder: "31 or 2010-07",
  });
  const conversionHint = h("span", { class: "conversion-hint" });
  const before = h("input", { type: "text", name: "before", value: "6" });
  const after = h("input", { type: "text", name: "after", value: "6" });
  const startMonth = h("input", { type: "text", name: "startMonth", value: "1" });
  const startYear = h("input", { type: "text", name: "startYear" });
  const glsPass = h("input", { type: "checkbox", name: "glsPass" });
  const glsIterations = h("input", { type: "text", name: "glsIterations", value: "1" });

  type GridField = Exclude<FieldName, "file" | "glsIterations">;
  const fields: Record<GridField, FieldHandle> = {} as never;
  const grid = h("div", { class: "field-grid" });
  const add = (field: GridField, label: string, input: HTMLInputElement, hint?: HTMLElement) => {
    const { wrap, handle } = labelled(field, label, input, hint);
    fields[field] = handle;
    grid.append(wrap);
  };
  add("intervention", "intervention month (index or YYYY-MM)", intervention, conversionHint);
  add("before", "window months before", before);
  add("after", "window months after", after);
  add("startMonth", "series start month (1..12)", startMonth);
  add("startYear", "series start year", startYear);

  const glsIterationsError = h("span", {
    class: "field-error",
    "data-field": "glsIterations",
  });
  const options = h(
    "details",
    { class: "gls-options" },
    h("summary", {}, "refinement options"),
    h(
      "label",
      { class: "field inline" },
      glsPass,
      h("span", { class: "field-label" }, "re-fit with AR-adjusted weights (GLS)"),
    ),
    h(
      "label",
      { class: "field inline", "data-field": "glsIterations" },
      h("span", { class: "field-label" }, "GLS iterations"),
      glsIterations,
      glsIterationsError,
    ),
  );

  const form = h(
    "form",
    { class: "config-form", novalidate: true },
    h(
      "div",
      { class: "field file-field", "data-field": "file" },
      h("span", { class: "field-label" }, "monthly series (CSV)"),
      fileInput,
      fileNote,
      fileError,
    ),
    grid,
    options,
    h("div", { class: "general-errors" }),
    h("button", { type: "submit", class: "analyze-button" }, "Analyze Data"),
  );

  const handle: ConfigFormHandle = {
    element: form,
    fileInput,
    fileNote,
    conversionHint,
    values: () => ({
      intervention: intervention.value,
      before: before.value,
      after: after.value,
      startMonth: startMonth.value,
      startYear: startYear.value,
      glsPass: glsPass.checked,
      glsIterations: glsIterations.value,
    }),
    setValues: (values) => {
      if (values.intervention !== undefined) intervention.value = values.intervention;
      if (values.before !== undefined) before.value = values.before;
      if (values.after !== undefined) after.value = values.after;
      if (values.startMonth !== undefined) startMonth.value = values.startMonth;
      if (values.startYear !== undefined) startYear.value = values.startYear;
      if (values.glsPass !== undefined) glsPass.checked = values.glsPass;
      if (values.glsIterations !== undefined) glsIterations.value = values.glsIterations;
      handle.refreshHint();
    },
    showErrors: (errors) => {
      handle.clearErrors();
      for (const [field, message] of Object.entries(errors)) {
        if (field === "file") {
          fileError.textContent = message;
        } else if (field === "glsIterations") {
          glsIterationsError.textContent = message;
        } else {
          fields[field as GridField].error.textContent = message;
        }
      }
    },
    showIssues: (issues) => {
      const leftovers: string[] = [];
      const errors: FieldErrors = {};
      for (const issue of issues) {
        const field = fieldForIssue(issue);
        if (field === null) {
          leftovers.push(issue);
        } else if (!(field in errors)) {
          errors[field] = issue;
        } else {
          leftovers.push(issue);
        }
      }
      handle.showErrors(errors);
      const general = form.querySelector(".general-errors") as HTMLElement;
      clear(general);
      if (leftovers.length > 0) {
        const list = h("ul", { class: "issue-list" });
        for (const issue of leftovers) {
          list.append(h("li", {}, issue));
        }
        general.append(list);
      }
      return leftovers;
    },
    clearErrors: () => {
      for (const el of form.querySelectorAll(".field-error")) {
        el.textContent = "";
      }
      clear(form.querySelector(".general-errors") as HTMLElement);
    },
    refreshHint: () => {
      const values = handle.values();
      clear(conversionHint);
      const startMonthNum = Number(values.startMonth);
      const startYearNum = Number(values.startYear);
      if (
        !/^\d{1,2}$/.test(values.startMonth.trim()) ||
        !/^\d{4}$/.test(values.startYear.trim()) ||
        startMonthNum < 1 ||
        startMonthNum > 12 ||
        values.intervention.trim() === ""
      ) {
        return;
      }
      const parsed = parseIntervention(values.intervention, startMonthNum, startYearNum);
      if ("error" in parsed) {
        return;
      }
      const asIndex = /^\d+$/.test(values.intervention.trim());
      conversionHint.textContent = asIndex
        ? `= ${parsed.iso} (${monthLabel(parsed.iso)})`
        : `= month ${parsed.index}`;
    },
  };

  for (const input of [intervention, startMonth, startYear]) {
    input.addEventListener("input", () => handle.refreshHint());
  }
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    onSubmit(handle.values());
  });
  return handle;
}
