import { afterEach, describe, expect, it } from "vitest";

import { mountApp, type AppHandle } from "../src/app.js";
import { ServiceClient } from "../src/client.js";
import type { FormValues } from "../src/form.js";
import seriesCsv from "./fixtures/series.csv?raw";
import { fetchStub, gatedReport, plainReport, until, type FetchStub } from "./helpers.js";

interface Mounted {
  app: AppHandle;
  root: HTMLElement;
  stub: FetchStub;
}

let mounted: Mounted | null = null;

function mount(): Mounted {
  const stub = fetchStub();
  const root = document.createElement("div");
  document.body.append(root);
  const app = mountApp(root, new ServiceClient("", stub.impl));
  mounted = { app, root, stub };
  return mounted;
}

afterEach(() => {
  mounted?.root.remove();
  mounted = null;
});

function fillAndSubmit(app: AppHandle, overrides: Partial<FormValues> = {}): void {
  app.form.setValues({
    intervention: "31",
    before: "6",
    after: "6",
    startMonth: "1",
    startYear: "2008",
    ...overrides,
  });
  app.form.element.dispatchEvent(new Event("submit", { cancelable: true }));
}

describe("analysis round trip", () => {
  it("submits the loaded CSV with the serialized config and renders the report", async () => {
    const { app, root, stub } = mount();
    stub.enqueue({ status: 200, payload: plainReport });
    app.loadCsv(seriesCsv, "series.csv");
    fillAndSubmit(app);

    await until(() => expect(root.querySelector(".results-view")).not.toBeNull());
    const calls = stub.analyzeCalls();
    expect(calls).toHaveLength(1);
    expect(calls[0].body).toEqual({
      csv: seriesCsv,
      date_column: "date",
      config: plainReport.provenance.config,
    });
    expect(root.querySelectorAll("section.plot-family")).toHaveLength(4);
    expect(root.querySelectorAll("figure.report-table")).toHaveLength(5);
    expect(app.status.textContent).toContain("change point at month 25");
  });

  it("notes the loaded file and its date column", () => {
    const { app } = mount();
    app.loadCsv(seriesCsv, "series.csv");
    expect(app.form.fileNote.textContent).toContain("series.csv");
    expect(app.form.fileNote.textContent).toContain('date column "date"');
    expect(app.form.fileNote.textContent).toContain("60 data rows");
  });

  it("re-renders in place when resubmitted with new settings", async () => {
    const { app, root, stub } = mount();
    stub.enqueue({ status: 200, payload: plainReport });
    app.loadCsv(seriesCsv, "series.csv");
    fillAndSubmit(app);
    await until(() => expect(root.querySelector(".results-view")).not.toBeNull());

    stub.enqueue({ status: 200, payload: gatedReport });
    app.form.setValues({ glsPass: true });
    app.form.element.dispatchEvent(new Event("submit", { cancelable: true }));
    await until(() =>
      expect(root.querySelector(".gls-note")?.textContent).toContain("GLS refinement ("),
    );
    expect(root.querySelectorAll(".results-view")).toHaveLength(1);
    expect(stub.analyzeCalls().length).toBeGreaterThanOrEqual(2);
  });
});

describe("error surfacing", () => {
  it("requires a file before anything is sent", () => {
    const { app, root, stub } = mount();
    fillAndSubmit(app);
    expect(stub.analyzeCalls()).toHaveLength(0);
    expect(
      root.querySelector('.field-error[data-field="file"]')?.textContent,
    ).toContain("CSV");
  });

  it("renders a margin violation inline next to the window field", async () => {
    const { app, root, stub } = mount();
    const margin =
      "post-phase margin is 3 observations from the latest candidate change point (index 58) to the end of the series; the fit requires at least 5 observations in each phase outside the candidate window";
    stub.enqueue({ status: 400, payload: { error: "validation", issues: [margin] } });
    app.loadCsv(seriesCsv, "series.csv");
    fillAndSubmit(app, { intervention: "55" });

    await until(() =>
      expect(
        root.querySelector('.field-error[data-field="after"]')?.textContent,
      ).toContain("post-phase margin"),
    );
    expect(root.querySelector(".results-view")).toBeNull();
    expect(app.status.textContent).toContain("rejected");
  });

  it("reports numerical failures in the status line", async () => {
    const { app, root, stub } = mount();
    stub.enqueue({
      status: 422,
      payload: {
        error: "numerical",
        detail: "residual segment is constant; the AR(1) coefficient is undefined",
      },
    });
    app.loadCsv("date,outcome\n2008-01,1\n", "flat.csv");
    fillAndSubmit(app);

    await until(() => expect(app.status.textContent).toContain("numerical failure"));
    expect(app.status.className).toContain("error");
    expect(root.querySelector(".results-view")).toBeNull();
  });

  it("reports an unreachable service", async () => {
    const root = document.createElement("div");
    document.body.append(root);
    const failing = (async () => {
      throw new Error("connection refused");
    }) as unknown as typeof fetch;
    const app = mountApp(root, new ServiceClient("", failing));
    app.loadCsv(seriesCsv, "series.csv");
    fillAndSubmit(app);
    await until(() => expect(app.status.textContent).toContain("unreachable"));
    root.remove();
  });

  it("keeps client-side field errors local and sends nothing", () => {
    const { app, stub } = mount();
    app.loadCsv(seriesCsv, "series.csv");
    fillAndSubmit(app, { before: "six" });
    expect(stub.analyzeCalls()).toHaveLength(0);
    expect(
      mounted!.root.querySelector('.field-error[data-field="before"]')?.textContent,
    ).toContain("whole number");
  });
});

describe("in-flight policy", () => {
  it("queues the latest submission and never renders the superseded response", async () => {
    const { app, root, stub } = mount();
    const resolveFirst = stub.enqueueDeferred();
    app.loadCsv(seriesCsv, "series.csv");
    fillAndSubmit(app);
    await until(() => expect(stub.analyzeCalls()).toHaveLength(1));

    // Second submission while the first is still running: queued, not sent.
    app.form.setValues({ glsPass: true });
    app.form.element.dispatchEvent(new Event("submit", { cancelable: true }));
    expect(stub.analyzeCalls()).toHaveLength(1);
    expect(app.status.textContent).toContain("queued");

    const resolveSecond = stub.enqueueDeferred();
    resolveFirst({ status: 200, payload: plainReport });
    await until(() => expect(stub.analyzeCalls()).toHaveLength(2));
    // The first response was dropped, not rendered.
    expect(root.querySelector(".results-view")).toBeNull();

    resolveSecond({ status: 200, payload: gatedReport });
    await until(() => expect(root.querySelector(".results-view")).not.toBeNull());
    expect(root.querySelectorAll(".results-view")).toHaveLength(1);
    expect(root.querySelector(".config-echo")?.textContent).toContain('"gls_pass":true');
  });
});

describe("service metadata", () => {
  it("shows the service's schema version after mounting", async () => {
    const { root } = mount();
    await until(() =>
      expect(root.querySelector(".schema-note")?.textContent).toContain("1.0.0"),
    );
  });

  it("loads a picked file through the file input", async () => {
    const { app } = mount();
    const file = new File(["date,outcome\n2008-01,1.5\n"], "picked.csv", {
      type: "text/csv",
    });
    Object.defineProperty(app.form.fileInput, "files", {
      value: [file],
      configurable: true,
    });
    app.form.fileInput.dispatchEvent(new Event("change"));
    await until(() => expect(app.form.fileNote.textContent).toContain("picked.csv"));
    expect(app.csvLoaded()).toBe(true);
  });
});
