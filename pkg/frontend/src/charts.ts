/** SVG renderers for the four diagnostic plot families.
 *
 * Each builder is a pure projection of the report JSON onto geometry: the
 * observed and fitted series with both time markers, the profile
 * log-likelihood trace over the candidate window, studentized residuals with
 * the +/-2 guides, and autocorrelations with white-noise bands. Values are
 * never recomputed here; only scaled onto pixels.
 */

import { s } from "./dom.js";
import { extent, linearScale, padded, ticks, type Scale } from "./scale.js";
import type { AcfBlock, Report } from "./types.js";

export const WIDTH = 640;
export const HEIGHT = 300;
const MARGIN = { top: 30, right: 16, bottom: 46, left: 62 };

interface Frame {
  svg: SVGSVGElement;
  plot: SVGGElement;
  left: number;
  right: number;
  top: number;
  bottom: number;
}

function frame(title: string): Frame {
  const svg = s("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: WIDTH,
    height: HEIGHT,
    role: "img",
  });
  svg.append(
    s("text", { class: "chart-title", x: MARGIN.left, y: 18 }, title),
  );
  const plot = s("g", { class: "plot" });
  svg.append(plot);
  return {
    svg,
    plot,
    left: MARGIN.left,
    right: WIDTH - MARGIN.right,
    top: MARGIN.top,
    bottom: HEIGHT - MARGIN.bottom,
  };
}

function drawAxes(
  fr: Frame,
  x: Scale,
  y: Scale,
  xLabel: string,
  yLabel: string,
  xTickText: (v: number) => string = String,
): void {
  const axes = s("g", { class: "axes" });
  axes.append(
    s("line", { class: "axis", x1: fr.left, y1: fr.bottom, x2: fr.right, y2: fr.bottom }),
    s("line", { class: "axis", x1: fr.left, y1: fr.top, x2: fr.left, y2: fr.bottom }),
  );
  for (const tick of ticks(x.domain[0], x.domain[1])) {
    const px = x(tick);
    axes.append(
      s("line", { class: "tick", x1: px, y1: fr.bottom, x2: px, y2: fr.bottom + 4 }),
      s(
        "text",
        { class: "tick-label", x: px, y: fr.bottom + 16, "text-anchor": "middle" },
        xTickText(tick),
      ),
    );
  }
  for (const tick of ticks(y.domain[0], y.domain[1], 5)) {
    const py = y(tick);
    axes.append(
      s("line", { class: "tick", x1: fr.left - 4, y1: py, x2: fr.left, y2: py }),
      s(
        "text",
        { class: "tick-label", x: fr.left - 7, y: py + 3, "text-anchor": "end" },
        formatTick(tick),
      ),
    );
  }
  axes.append(
    s(
      "text",
      {
        class: "axis-label",
        x: (fr.left + fr.right) / 2,
        y: HEIGHT - 8,
        "text-anchor": "middle",
      },
      xLabel,
    ),
    s(
      "text",
      {
        class: "axis-label",
        x: 14,
        y: (fr.top + fr.bottom) / 2,
        "text-anchor": "middle",
        transform: `rotate(-90 14 ${(fr.top + fr.bottom) / 2})`,
      },
      yLabel,
    ),
  );
  fr.svg.append(axes);
}

// Tick labels are layout, not report values, so light rounding is fine here.
function formatTick(v: number): string {
  const rounded = Math.round(v * 1e6) / 1e6;
  return String(rounded);
}

function pathFrom(points: [number, number][]): string {
  return points
    .map(([px, py], i) => `${i === 0 ? "M" : "L"}${px.toFixed(2)},${py.toFixed(2)}`)
    .join("");
}

function verticalMarker(
  fr: Frame,
  px: number,
  cls: string,
  label: string,
  labelOffset: number,
): SVGGElement {
  const g = s("g", { class: `marker ${cls}` });
  g.append(
    s("line", { class: "marker-line", x1: px, y1: fr.top, x2: px, y2: fr.bottom }),
    s(
      "text",
      { class: "marker-label", x: px + 4, y: fr.top + labelOffset },
      label,
    ),
  );
  return g;
}

/** Observed series, the fitted two-phase mean, and both time markers. */
export function seriesChart(report: Report): SVGSVGElement {
  const { t, calendar, observed, fitted, fitted_gls, change_point, intervention } =
    report.series;
  const fr = frame("Observed series and fitted mean");
  const x = linearScale([t[0], t[t.length - 1]], [fr.left, fr.right]);
  const y = linearScale(
    padded(extent([...observed, ...fitted, ...(fitted_gls ?? [])])),
    [fr.bottom, fr.top],
  );
  drawAxes(fr, x, y, "month", "outcome", (v) => calendar[v - 1] ?? String(v));

  // Drawn per phase so the jump at the change point stays a gap, not a ramp.
  const phases: [number, number][] = [
    [0, change_point - 1],
    [change_point - 1, t.length],
  ];
  for (const [lo, hi] of phases) {
    const pts = t.slice(lo, hi).map((ti, i): [number, number] => [
      x(ti),
      y(fitted[lo + i]),
    ]);
    fr.plot.append(s("path", { class: "fitted-line", d: pathFrom(pts) }));
    if (fitted_gls) {
      const glsPts = t.slice(lo, hi).map((ti, i): [number, number] => [
        x(ti),
        y(fitted_gls[lo + i]),
      ]);
      fr.plot.append(s("path", { class: "gls-line", d: pathFrom(glsPts) }));
    }
  }
  for (let i = 0; i < t.length; i++) {
    fr.plot.append(
      s("circle", {
        class: "observed-point",
        cx: x(t[i]),
        cy: y(observed[i]),
        r: 2.5,
        "data-index": t[i],
      }),
    );
  }
  fr.plot.append(
    verticalMarker(fr, x(change_point), "change-marker", "change point", 10),
    verticalMarker(fr, x(intervention), "intervention-marker", "intervention", 24),
  );
  fr.plot
    .querySelector(".change-marker line")!
    .setAttribute("data-index", String(change_point));
  fr.plot
    .querySelector(".intervention-marker line")!
    .setAttribute("data-index", String(intervention));
  return fr.svg;
}

/** Profile log-likelihood across candidate change points, argmax highlighted. */
export function loglikChart(report: Report): SVGSVGElement {
  const { trace, estimate } = report.change_point;
  const fr = frame("Log likelihood by candidate change point");
  const candidates = trace.map((p) => p.candidate);
  const values = trace.map((p) => p.log_likelihood);
  const x = linearScale(
    padded([candidates[0], candidates[candidates.length - 1]], 0.04),
    [fr.left, fr.right],
  );
  const y = linearScale(padded(extent(values)), [fr.bottom, fr.top]);
  drawAxes(fr, x, y, "candidate change point", "log likelihood");

  const pts = trace
    .filter((p) => p.log_likelihood !== null)
    .map((p): [number, number] => [x(p.candidate), y(p.log_likelihood as number)]);
  fr.plot.append(s("path", { class: "trace-line", d: pathFrom(pts) }));
  for (const point of trace) {
    if (point.log_likelihood === null) {
      continue;
    }
    const isArgmax = point.candidate === estimate;
    fr.plot.append(
      s("circle", {
        class: isArgmax ? "trace-point argmax-point" : "trace-point",
        cx: x(point.candidate),
        cy: y(point.log_likelihood),
        r: isArgmax ? 5 : 3,
        "data-candidate": point.candidate,
      }),
    );
  }
  fr.plot.append(
    s("line", {
      class: "argmax-guide",
      x1: x(estimate),
      y1: fr.top,
      x2: x(estimate),
      y2: fr.bottom,
    }),
  );
  return fr.svg;
}

/** Studentized residuals with the +/-2 reference guides. */
export function residualChart(report: Report): SVGSVGElement {
  const { studentized_residuals, guides } = report.diagnostics;
  const t = report.series.t;
  const fr = frame("Studentized residuals");
  const x = linearScale([t[0], t[t.length - 1]], [fr.left, fr.right]);
  const y = linearScale(
    padded(extent([...studentized_residuals, ...guides])),
    [fr.bottom, fr.top],
  );
  drawAxes(fr, x, y, "month", "studentized residual");

  fr.plot.append(
    s("line", { class: "zero-line", x1: fr.left, y1: y(0), x2: fr.right, y2: y(0) }),
  );
  for (const guide of guides) {
    fr.plot.append(
      s("line", {
        class: "guide-line",
        x1: fr.left,
        y1: y(guide),
        x2: fr.right,
        y2: y(guide),
        "data-guide": guide,
      }),
    );
  }
  const [lo, hi] = [Math.min(...guides), Math.max(...guides)];
  for (let i = 0; i < t.length; i++) {
    const r = studentized_residuals[i];
    if (r === null) {
      continue;
    }
    const outside = r < lo || r > hi;
    fr.plot.append(
      s("circle", {
        class: outside ? "residual-point outside" : "residual-point",
        cx: x(t[i]),
        cy: y(r),
        r: 2.5,
        "data-index": t[i],
      }),
    );
  }
  return fr.svg;
}

/** Autocorrelations as stems against the +/- white-noise band. */
export function acfChart(block: AcfBlock, title: string): SVGSVGElement {
  const fr = frame(title);
  if (!block.defined || block.lags.length === 0) {
    fr.svg.append(
      s(
        "text",
        { class: "empty-note", x: WIDTH / 2, y: HEIGHT / 2, "text-anchor": "middle" },
        "autocorrelation undefined for this segment",
      ),
    );
    return fr.svg;
  }
  const band = block.band ?? 0;
  const x = linearScale(
    [0, block.lags[block.lags.length - 1] + 1],
    [fr.left, fr.right],
  );
  const y = linearScale(
    padded(extent([...block.values, band, -band, 1, -0.2])),
    [fr.bottom, fr.top],
  );
  drawAxes(fr, x, y, "lag", "autocorrelation");

  fr.plot.append(
    s("line", { class: "zero-line", x1: fr.left, y1: y(0), x2: fr.right, y2: y(0) }),
  );
  for (const sign of [1, -1]) {
    fr.plot.append(
      s("line", {
        class: "band-line",
        x1: fr.left,
        y1: y(sign * band),
        x2: fr.right,
        y2: y(sign * band),
        "data-band": sign * band,
      }),
    );
  }
  for (let i = 0; i < block.lags.length; i++) {
    const value = block.values[i];
    if (value === null) {
      continue;
    }
    const px = x(block.lags[i]);
    fr.plot.append(
      s("line", {
        class: "acf-stem",
        x1: px,
        y1: y(0),
        x2: px,
        y2: y(value),
        "data-lag": block.lags[i],
      }),
      s("circle", { class: "acf-tip", cx: px, cy: y(value), r: 2.5 }),
    );
  }
  return fr.svg;
}
