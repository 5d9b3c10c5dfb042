/** Typed wrapper over the analysis service's HTTP interface.
 *
 * The client consumes POST /v1/analyze and GET /v1/schema only. Raw response
 * text is kept alongside the parsed report so a download link can offer the
 * service's exact bytes.
 */

import type { ConfigEcho, Report } from "./types.js";

export type AnalyzeConfig = ConfigEcho;

export interface AnalyzeBody {
  csv?: string;
  values?: number[];
  date_column?: string | null;
  config: AnalyzeConfig;
}

export type AnalyzeOutcome =
  | { kind: "report"; report: Report; raw: string }
  | { kind: "validation"; issues: string[] }
  | { kind: "numerical"; detail: string }
  | { kind: "transport"; detail: string };

export class ServiceClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = (...args) => fetch(...args),
  ) {}

  async analyze(body: AnalyzeBody): Promise<AnalyzeOutcome> {
    let response: Response;
    try {
      response = await this.fetchImpl(`${this.baseUrl}/v1/analyze`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      });
    } catch (err) {
      return { kind: "transport", detail: `service unreachable: ${String(err)}` };
    }
    const text = await response.text();
    if (response.ok) {
      try {
        return { kind: "report", report: JSON.parse(text) as Report, raw: text };
      } catch {
        return { kind: "transport", detail: "service returned unparseable JSON" };
      }
    }
    const payload = tryParse(text);
    if (response.status === 400 && Array.isArray(payload?.issues)) {
      return { kind: "validation", issues: payload.issues.map(String) };
    }
    if (response.status === 422 && typeof payload?.detail === "string") {
      return { kind: "numerical", detail: payload.detail };
    }
    if (typeof payload?.detail === "string") {
      return { kind: "transport", detail: payload.detail };
    }
    return { kind: "transport", detail: `service error (HTTP ${response.status})` };
  }

  async schemaVersion(): Promise<string | null> {
    try {
      const response = await this.fetchImpl(`${this.baseUrl}/v1/schema`);
      if (!response.ok) {
        return null;
      }
      const schema = (await response.json()) as { version?: unknown };
      return typeof schema.version === "string" ? schema.version : null;
    } catch {
      return null;
    }
  }
}

function tryParse(text: string): { issues?: unknown[]; detail?: unknown } | null {
  try {
    const parsed: unknown = JSON.parse(text);
    if (typeof parsed === "object" && parsed !== null) {
      return parsed as { issues?: unknown[]; detail?: unknown };
    }
  } catch {
    // Not JSON; fall through to the generic transport error.
  }
  return null;
}
