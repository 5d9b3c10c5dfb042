import { describe, expect, it } from "vitest";

import {
  indexToIso,
  isoToIndex,
  monthLabel,
  parseIntervention,
} from "../src/calendar.js";

describe("index to calendar conversion", () => {
  it("maps the worked example: month 31 of a January 2008 series is July 2010", () => {
    expect(indexToIso(31, 1, 2008)).toBe("2010-07");
    expect(isoToIndex("2010-07", 1, 2008)).toBe(31);
  });

  it("starts at the anchor month", () => {
    expect(indexToIso(1, 1, 2008)).toBe("2008-01");
    expect(indexToIso(1, 7, 2013)).toBe("2013-07");
  });

  it("rolls across year boundaries", () => {
    expect(indexToIso(3, 11, 2007)).toBe("2008-01");
    expect(indexToIso(14, 12, 2009)).toBe("2011-01");
  });

  it("round-trips over a grid of anchors and indices", () => {
    for (const startMonth of [1, 4, 11]) {
      for (const startYear of [1999, 2008]) {
        for (let index = 1; index <= 40; index += 3) {
          const iso = indexToIso(index, startMonth, startYear);
          expect(isoToIndex(iso, startMonth, startYear)).toBe(index);
        }
      }
    }
  });

  it("rejects text that is not a month", () => {
    expect(() => isoToIndex("julio", 1, 2008)).toThrow(/YYYY-MM/);
    expect(() => isoToIndex("2010-13", 1, 2008)).toThrow(/YYYY-MM/);
  });
});

describe("month labels", () => {
  it("spells out the month name", () => {
    expect(monthLabel("2010-07")).toBe("July 2010");
    expect(monthLabel("2008-01")).toBe("January 2008");
  });

  it("passes unparseable text through unchanged", () => {
    expect(monthLabel("not-a-month")).toBe("not-a-month");
  });
});

describe("intervention field parsing", () => {
  it("accepts a plain index", () => {
    expect(parseIntervention("31", 1, 2008)).toEqual({ index: 31, iso: "2010-07" });
  });

  it("accepts a YYYY-MM month", () => {
    expect(parseIntervention("2010-07", 1, 2008)).toEqual({ index: 31, iso: "2010-07" });
    expect(parseIntervention(" 2010-07 ", 1, 2008)).toEqual({
      index: 31,
      iso: "2010-07",
    });
  });

  it("flags months before the series start", () => {
    const parsed = parseIntervention("2007-12", 1, 2008);
    expect(parsed).toHaveProperty("error");
  });

  it("flags text that is neither form", () => {
    const parsed = parseIntervention("soon", 1, 2008);
    expect("error" in parsed && parsed.error).toMatch(/index or a YYYY-MM/);
  });
});
