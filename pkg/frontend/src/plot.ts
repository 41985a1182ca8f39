/**
 * Panel geometry and axis rendering shared by the figure renderers:
 * linear data-to-screen scales, tick placement at 1/2/5 steps, and
 * the framed axes with labels.
 */
import { Style } from "./style.js";
import { el, fmt, line, text } from "./svg.js";

export interface Axes {
  /** Inner plotting rectangle in screen coordinates. */
  x0: number;
  y0: number;
  w: number;
  h: number;
  xDomain: [number, number];
  yDomain: [number, number];
  sx: (x: number) => number;
  sy: (y: number) => number;
}

export function makeAxes(
  x0: number,
  y0: number,
  w: number,
  h: number,
  xDomain: [number, number],
  yDomain: [number, number],
): Axes {
  const [xa, xb] = xDomain;
  const [ya, yb] = yDomain;
  if (!(xb > xa) || !(yb > ya)) {
    throw new Error(`degenerate axis range: x=[${xa}, ${xb}] y=[${ya}, ${yb}]`);
  }
  return {
    x0,
    y0,
    w,
    h,
    xDomain,
    yDomain,
    sx: (x) => x0 + ((x - xa) / (xb - xa)) * w,
    sy: (y) => y0 + h - ((y - ya) / (yb - ya)) * h,
  };
}

/** Ticks at a nice 1/2/5 step covering [lo, hi], about `count` of them. */
export function ticks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo;
  if (!(span > 0)) return [lo];
  const raw = span / Math.max(1, count);
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  const first = Math.ceil(lo / step - 1e-9) * step;
  const out: number[] = [];
  for (let v = first; v <= hi + 1e-9 * span; v += step) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

export function fmtTick(x: number): string {
  const rounded = Number(x.toPrecision(9));
  return Object.is(rounded, -0) ? "0" : String(rounded);
}

export interface AxisLabels {
  xLabel: string;
  yLabel: string;
  title?: string;
}

/** Frame, ticks and labels for one panel. */
export function renderAxes(axes: Axes, style: Style, labels: AxisLabels): string {
  const parts: string[] = [];
  const { x0, y0, w, h } = axes;
  parts.push(
    el("rect", {
      x: x0,
      y: y0,
      width: w,
      height: h,
      fill: "none",
      stroke: style.axisColor,
      "stroke-width": style.strokeWidth.axis,
    }),
  );
  const tickLen = 4;
  const fontAttrs = {
    "font-family": style.fontFamily,
    "font-size": String(style.fontSize),
    fill: style.textColor,
  };
  for (const v of ticks(axes.xDomain[0], axes.xDomain[1])) {
    const px = axes.sx(v);
    parts.push(line(px, y0 + h, px, y0 + h + tickLen, {
      stroke: style.axisColor,
      "stroke-width": style.strokeWidth.axis,
    }));
    parts.push(text(px, y0 + h + tickLen + style.fontSize, fmtTick(v), {
      ...fontAttrs,
      "text-anchor": "middle",
    }));
  }
  for (const v of ticks(axes.yDomain[0], axes.yDomain[1])) {
    const py = axes.sy(v);
    parts.push(line(x0 - tickLen, py, x0, py, {
      stroke: style.axisColor,
      "stroke-width": style.strokeWidth.axis,
    }));
    parts.push(text(x0 - tickLen - 2, py + style.fontSize * 0.35, fmtTick(v), {
      ...fontAttrs,
      "text-anchor": "end",
    }));
  }
  parts.push(text(x0 + w / 2, y0 + h + tickLen + 2.2 * style.fontSize, labels.xLabel, {
    ...fontAttrs,
    "text-anchor": "middle",
  }));
  const yLabelX = x0 - 40;
  const yLabelY = y0 + h / 2;
  parts.push(text(yLabelX, yLabelY, labels.yLabel, {
    ...fontAttrs,
    "text-anchor": "middle",
    transform: `rotate(-90 ${fmt(yLabelX)} ${fmt(yLabelY)})`,
  }));
  if (labels.title) {
    parts.push(text(x0 + w / 2, y0 - 8, labels.title, {
      ...fontAttrs,
      "font-size": String(style.titleSize),
      "text-anchor": "middle",
    }));
  }
  return parts.join("");
}

/** Clip a polyline in data space to the axes' y-domain, splitting runs. */
export function clippedRuns(
  points: Array<[number, number]>,
  axes: Axes,
): Array<Array<[number, number]>> {
  const [ya, yb] = axes.yDomain;
  const runs: Array<Array<[number, number]>> = [];
  let current: Array<[number, number]> = [];
  for (const [x, y] of points) {
    if (Number.isFinite(x) && Number.isFinite(y) && y >= ya && y <= yb) {
      current.push([axes.sx(x), axes.sy(y)]);
    } else if (current.length > 0) {
      runs.push(current);
      current = [];
    }
  }
  if (current.length > 0) runs.push(current);
  return runs;
}
