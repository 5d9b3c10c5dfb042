/** Shared test scaffolding: typed fixtures and a scriptable fetch stub. */

import type { Report } from "../src/types.js";
import plainFixture from "./fixtures/report.json";
import gatedFixture from "./fixtures/report_gated.json";

export const plainReport = plainFixture as unknown as Report;
export const gatedReport = gatedFixture as unknown as Report;

export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
}

export interface ScriptedResponse {
  status: number;
  payload: unknown;
}

export interface FetchStub {
  impl: typeof fetch;
  calls: RecordedCall[];
  analyzeCalls(): RecordedCall[];
  /** Queue the next POST /v1/analyze response. */
  enqueue(response: ScriptedResponse): void;
  /** Queue a response resolved manually by the test. */
  enqueueDeferred(): (response: ScriptedResponse) => void;
}

/** A fetch stub answering /v1/schema and scripted /v1/analyze responses. */
export function fetchStub(schemaVersion = "1.0.0"): FetchStub {
  const calls: RecordedCall[] = [];
  const queue: (ScriptedResponse | Promise<ScriptedResponse>)[] = [];

  const impl = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const method = init?.method ?? "GET";
    const body = typeof init?.body === "string" ? JSON.parse(init.body) : undefined;
    calls.push({ url, method, body });
    if (url.endsWith("/v1/schema")) {
      return new Response(JSON.stringify({ version: schemaVersion }), { status: 200 });
    }
    if (url.endsWith("/v1/analyze")) {
      const next = queue.shift();
      if (next === undefined) {
        throw new Error("no scripted response left for /v1/analyze");
      }
      const { status, payload } = await next;
      return new Response(JSON.stringify(payload), { status });
    }
    return new Response("not found", { status: 404 });
  }) as typeof fetch;

  return {
    impl,
    calls,
    analyzeCalls: () => calls.filter((c) => c.url.endsWith("/v1/analyze")),
    enqueue: (response) => {
      queue.push(response);
    },
    enqueueDeferred: () => {
      let resolve: (response: ScriptedResponse) => void = () => {};
      queue.push(
        new Promise<ScriptedResponse>((res) => {
          resolve = res;
        }),
      );
      return resolve;
    },
  };
}

/** Wait until `predicate` stops throwing, polling the microtask queue. */
export async function until(predicate: () => void, attempts = 50): Promise<void> {
  let lastError: unknown;
  for (let i = 0; i < attempts; i++) {
    try {
      predicate();
      return;
    } catch (err) {
      lastError = err;
      await new Promise((res) => setTimeout(res, 2));
    }
  }
  throw lastError;
}
