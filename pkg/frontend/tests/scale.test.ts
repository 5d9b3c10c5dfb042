import { describe, expect, it } from "vitest";

import { extent, linearScale, padded, ticks } from "../src/scale.js";

describe("linearScale", () => {
  it("maps domain endpoints onto range endpoints", () => {
    const scale = linearScale([0, 10], [100, 200]);
    expect(scale(0)).toBe(100);
    expect(scale(10)).toBe(200);
    expect(scale(5)).toBe(150);
  });

  it("supports inverted ranges for screen-space y axes", () => {
    const scale = linearScale([0, 1], [300, 0]);
    expect(scale(0)).toBe(300);
    expect(scale(1)).toBe(0);
    expect(scale(0.25)).toBe(225);
  });

  it("collapses a degenerate domain to the range midpoint", () => {
    const scale = linearScale([5, 5], [0, 100]);
    expect(scale(5)).toBe(50);
    expect(scale(123)).toBe(50);
  });
});

describe("extent", () => {
  it("ignores nulls and non-finite values", () => {
    expect(extent([3, null, -1, NaN, 7])).toEqual([-1, 7]);
  });

  it("falls back to the unit interval when nothing is usable", () => {
    expect(extent([null, NaN])).toEqual([0, 1]);
    expect(extent([])).toEqual([0, 1]);
  });
});

describe("padded", () => {
  it("widens both sides by the fraction", () => {
    expect(padded([0, 10], 0.1)).toEqual([-1, 11]);
  });

  it("gives a degenerate span a unit pad", () => {
    expect(padded([4, 4])).toEqual([3, 5]);
  });
});

describe("ticks", () => {
  it("picks round steps from the 1/2/5 family", () => {
    expect(ticks(0, 10, 6)).toEqual([0, 2, 4, 6, 8, 10]);
    expect(ticks(0, 1, 6)).toEqual([0, 0.2, 0.4, 0.6, 0.8, 1]);
  });

  it("keeps every tick inside the interval", () => {
    for (const [lo, hi] of [
      [-143.5, -140.2],
      [0.001, 0.009],
      [25, 37],
    ]) {
      const out = ticks(lo, hi);
      expect(out.length).toBeGreaterThan(0);
      for (const tick of out) {
        expect(tick).toBeGreaterThanOrEqual(lo - 1e-9);
        expect(tick).toBeLessThanOrEqual(hi + 1e-9);
      }
      const sorted = [...out].sort((a, b) => a - b);
      expect(out).toEqual(sorted);
    }
  });

  it("degenerates to the left endpoint when the interval is empty", () => {
    expect(ticks(3, 3)).toEqual([3]);
  });
});
