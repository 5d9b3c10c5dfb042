/** Month arithmetic between 1-based series indices and calendar labels.
 *
 * Pure conversions only; the analysis itself never happens client side.
 */

const MONTH_NAMES = [
  "January",
  "February",
  "March",
  "April",
  "May",
  "June",
  "July",
  "August",
  "September",
  "October",
  "November",
  "December",
];

/** "2010-07" for index 31 when the series starts January 2008. */
export function indexToIso(index: number, startMonth: number, startYear: number): string {
  const offset = startMonth - 1 + (index - 1);
  const year = startYear + Math.floor(offset / 12);
  const month = (offset % 12) + 1;
  return `${year}-${String(month).padStart(2, "0")}`;
}

/** Inverse of indexToIso; the result may fall outside the observed range. */
export function isoToIndex(iso: string, startMonth: number, startYear: number): number {
  const parsed = parseIso(iso);
  if (parsed === null) {
    throw new Error(`not a YYYY-MM month: ${JSON.stringify(iso)}`);
  }
  const [year, month] = parsed;
  return (year - startYear) * 12 + (month - startMonth) + 1;
}

/** "July 2010" for "2010-07"; returns the input unchanged if unparseable. */
export function monthLabel(iso: string): string {
  const parsed = parseIso(iso);
  if (parsed === null) {
    return iso;
  }
  const [year, month] = parsed;
  return `${MONTH_NAMES[month - 1]} ${year}`;
}

function parseIso(text: string): [number, number] | null {
  const match = /^(\d{4})-(\d{1,2})$/.exec(text.trim());
  if (!match) {
    return null;
  }
  const year = Number(match[1]);
  const month = Number(match[2]);
  if (month < 1 || month > 12) {
    return null;
  }
  return [year, month];
}

export interface InterventionEntry {
  index: number;
  iso: string;
}

/** Parse the intervention field, which accepts an index or a YYYY-MM month. */
export function parseIntervention(
  text: string,
  startMonth: number,
  startYear: number,
): InterventionEntry | { error: string } {
  const trimmed = text.trim();
  if (/^\d+$/.test(trimmed)) {
    const index = Number(trimmed);
    return { index, iso: indexToIso(index, startMonth, startYear) };
  }
  if (parseIso(trimmed) !== null) {
    const index = isoToIndex(trimmed, startMonth, startYear);
    if (index < 1) {
      return { error: `${trimmed} is before the series start` };
    }
    return { index, iso: indexToIso(index, startMonth, startYear) };
  }
  return { error: "enter a month index or a YYYY-MM date" };
}
