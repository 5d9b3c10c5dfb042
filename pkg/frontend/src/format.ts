/** Cell formatting for report values.
 *
 * Every displayed number is the JSON value passed through String(); nothing
 * is rounded or recomputed, so the tables stay a faithful projection of the
 * report.
 */

import type { Estimate, Maybe } from "./types.js";

export const MISSING = "n/a";

/** Verbatim text for one numeric cell; null renders as the missing marker. */
export function cell(value: Maybe | undefined): string {
  return value === null || value === undefined ? MISSING : String(value);
}

/** "lo .. hi" for an interval, or the missing marker when absent. */
export function interval(ci: [Maybe, Maybe] | null | undefined): string {
  if (!ci || ci[0] === null || ci[1] === null) {
    return MISSING;
  }
  return `${String(ci[0])} .. ${String(ci[1])}`;
}

/** "(d1, d2)" for a degrees-of-freedom pair. */
export function dfPair(df: [number, number]): string {
  return `(${String(df[0])}, ${String(df[1])})`;
}

export function yesNo(flag: boolean | null): string {
  return flag === null ? MISSING : flag ? "yes" : "no";
}

/** The standard five cells of an estimate row. */
export function estimateCells(est: Estimate): string[] {
  return [cell(est.value), cell(est.se), cell(est.df), interval(est.ci), cell(est.p_value)];
}
