/**
 * Compensation-time figure: t_r/T against the period T, one curve per
 * evolution perturbation strength, families side by side. Rows with a
 * recorded error are skipped; everything else is drawn as recorded.
 */
import { readTable, requireColumns, toNumber } from "../csv.js";
import { FigureSpec } from "../figspec.js";
import { makeAxes, renderAxes } from "../plot.js";
import { Style } from "../style.js";
import { el, fmtValue, line, polyline, svgDocument, text } from "../svg.js";

interface SeriesPoint {
  T: number;
  f: number;
}

interface PanelData {
  label: string;
  /** epsilon_evol value -> points sorted by period */
  series: Array<{ epsilon: number; points: SeriesPoint[] }>;
}

function loadPanel(label: string, resultsPath: string): PanelData {
  const table = readTable(resultsPath);
  requireColumns(table, ["epsilon_evol", "T", "t_r_over_T", "error"]);
  const groups = new Map<string, SeriesPoint[]>();
  for (const row of table.rows) {
    if ((row["error"] ?? "") !== "") continue;
    const key = row["epsilon_evol"] ?? "";
    const point = {
      T: toNumber(row["T"] ?? "", `${table.path}: column T`),
      f: toNumber(row["t_r_over_T"] ?? "", `${table.path}: column t_r_over_T`),
    };
    if (!Number.isFinite(point.T) || !Number.isFinite(point.f)) continue;
    const bucket = groups.get(key);
    if (bucket) bucket.push(point);
    else groups.set(key, [point]);
  }
  const series = [...groups.entries()]
    .map(([key, points]) => ({
      epsilon: toNumber(key, `${table.path}: column epsilon_evol`),
      points: points.slice().sort((a, b) => a.T - b.T),
    }))
    .sort((a, b) => a.epsilon - b.epsilon);
  return { label, series };
}

export function renderCompensation(spec: FigureSpec, style: Style): string {
  const panels = spec.panels.map((panel) => loadPanel(panel.label, panel.results!));
  const p = style.panel;
  const boxW = p.marginLeft + p.width + p.marginRight;
  const boxH = p.marginTop + p.height + p.marginBottom;
  const docW = panels.length * boxW + (panels.length - 1) * p.gapX;
  const docH = boxH;
  const allT = panels.flatMap((pd) => pd.series.flatMap((s) => s.points.map((q) => q.T)));
  const tMax = Math.max(...allT, 0);
  const xDomain = spec.xRange ?? ([0, tMax * 1.05] as [number, number]);
  const yDomain = spec.yRange ?? ([0.45, 1.05] as [number, number]);
  const body: string[] = [];
  panels.forEach((panel, col) => {
    const x0 = col * (boxW + p.gapX) + p.marginLeft;
    const y0 = p.marginTop;
    const axes = makeAxes(x0, y0, p.width, p.height, xDomain, yDomain);
    body.push(renderAxes(axes, style, { xLabel: "T", yLabel: "t_r / T", title: panel.label }));
    // No-compensation floor at 1/2 and the perfect-echo line at 1.
    for (const [value, color, dash] of [
      [0.5, style.plateauColor, style.plateauDash],
      [1.0, style.gridColor, ""],
    ] as Array<[number, string, string]>) {
      if (value < yDomain[0] || value > yDomain[1]) continue;
      const attrs: Record<string, string | number> = {
        stroke: color,
        "stroke-width": style.strokeWidth.axis,
      };
      if (dash !== "") attrs["stroke-dasharray"] = dash;
      body.push(line(x0, axes.sy(value), x0 + p.width, axes.sy(value), attrs));
    }
    panel.series.forEach((series, i) => {
      const color = style.seriesColors[i % style.seriesColors.length];
      const pts = series.points
        .filter((q) => q.f >= yDomain[0] && q.f <= yDomain[1])
        .map((q) => [axes.sx(q.T), axes.sy(q.f)] as [number, number]);
      if (pts.length > 1) {
        body.push(polyline(pts, { stroke: color, "stroke-width": style.strokeWidth.binned }));
      }
      for (const [px, py] of pts) {
        body.push(el("circle", { cx: px, cy: py, r: style.markerSize, fill: color }));
      }
      // Legend, top right inside the panel.
      const lx = x0 + p.width - 96;
      const ly = y0 + 14 + i * (style.fontSize + 4);
      body.push(line(lx, ly - 3, lx + 18, ly - 3, { stroke: color, "stroke-width": style.strokeWidth.binned }));
      body.push(text(lx + 24, ly, `epsilon = ${fmtValue(series.epsilon)}`, {
        "font-family": style.fontFamily,
        "font-size": String(style.fontSize),
        fill: style.textColor,
      }));
    });
  });
  return svgDocument(docW, docH, body, style.background);
}
