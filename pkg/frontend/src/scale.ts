/** Linear scales and tick placement for the SVG charts. */

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0;
  const scale = ((value: number) =>
    span === 0 ? (r0 + r1) / 2 : r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

/** Smallest and largest finite values, ignoring nulls and NaNs. */
export function extent(values: Iterable<number | null>): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const value of values) {
    if (value === null || !Number.isFinite(value)) {
      continue;
    }
    lo = Math.min(lo, value);
    hi = Math.max(hi, value);
  }
  if (lo > hi) {
    return [0, 1];
  }
  return [lo, hi];
}

/** Widen an extent by a fraction on both sides; degenerate spans get a unit pad. */
export function padded([lo, hi]: [number, number], fraction = 0.06): [number, number] {
  const span = hi - lo;
  const pad = span === 0 ? 1 : span * fraction;
  return [lo - pad, hi + pad];
}

/** Round tick values covering [lo, hi] with a 1/2/5 step, at most `count` + 1. */
export function ticks(lo: number, hi: number, count = 6): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const raw = (hi - lo) / Math.max(count, 1);
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  const candidates = [1, 2, 5, 10].map((m) => m * power);
  const step = candidates.find((c) => c >= raw) ?? candidates[3];
  // Ticks are integer multiples of the step, rounded to the step's precision
  // so binary float error does not leak into labels (3 * 0.2 is not 0.6).
  const places = Math.max(0, 1 - Math.floor(Math.log10(step)));
  const first = Math.ceil(lo / step - 1e-9);
  const last = Math.floor(hi / step + 1e-9);
  const out: number[] = [];
  for (let i = first; i <= last; i++) {
    out.push(Number((i * step).toFixed(places)));
  }
  return out;
}
