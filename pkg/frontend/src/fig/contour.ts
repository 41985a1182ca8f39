/**
 * Reversal-surface figure: the P(t1, t2) contour at the recorded
 * end-of-period echo level, the experiment path (forward to T/2, then
 * the reversed leg, dashed) and the equal-times Loschmidt-echo axis.
 * The contour level is taken verbatim from the surface CSV header;
 * nothing is recomputed.
 */
import { readTable, requireColumns, requireMeta, toNumber, CsvError } from "../csv.js";
import { marchingSquares } from "../contour.js";
import { FigureSpec } from "../figspec.js";
import { makeAxes, renderAxes } from "../plot.js";
import { Style } from "../style.js";
import { el, fmt, fmtValue, line, svgDocument, text } from "../svg.js";

interface SurfaceData {
  label: string;
  t1: number[];
  t2: number[];
  p: number[][];
  level: number;
  levelText: string;
  period: number;
  tHalf: number;
  epsilonEvol: number;
}

export function loadSurface(label: string, path: string): SurfaceData {
  const table = readTable(path);
  requireColumns(table, ["t1", "t2", "p"]);
  const levelText = requireMeta(table, "level");
  const level = toNumber(levelText, `${table.path}: meta level`);
  const period = toNumber(requireMeta(table, "period"), `${table.path}: meta period`);
  const tHalf = toNumber(requireMeta(table, "t_half"), `${table.path}: meta t_half`);
  const epsilonEvol = toNumber(requireMeta(table, "epsilon_evol"), `${table.path}: meta epsilon_evol`);
  // Rebuild the grid from the long-format rows. Cell strings are exact
  // keys: the writer emits one fixed representation per grid value.
  const t1Index = new Map<string, number>();
  const t2Index = new Map<string, number>();
  for (const row of table.rows) {
    const c1 = row["t1"] ?? "";
    const c2 = row["t2"] ?? "";
    if (!t1Index.has(c1)) t1Index.set(c1, t1Index.size);
    if (!t2Index.has(c2)) t2Index.set(c2, t2Index.size);
  }
  const t1 = [...t1Index.keys()].map((c) => toNumber(c, `${table.path}: column t1`));
  const t2 = [...t2Index.keys()].map((c) => toNumber(c, `${table.path}: column t2`));
  if (table.rows.length !== t1.length * t2.length) {
    throw new CsvError(
      `${table.path}: ${table.rows.length} rows do not fill a ` +
        `${t1.length} x ${t2.length} grid`,
    );
  }
  const p: number[][] = Array.from({ length: t2.length }, () =>
    new Array<number>(t1.length).fill(NaN),
  );
  table.rows.forEach((row, i) => {
    const j = t1Index.get(row["t1"] ?? "")!;
    const k = t2Index.get(row["t2"] ?? "")!;
    p[k][j] = toNumber(row["p"] ?? "", `${table.path}: row ${i + 1}, column p`);
  });
  for (const row of p) {
    for (const value of row) {
      if (Number.isNaN(value)) {
        throw new CsvError(`${table.path}: grid has missing (t1, t2) combinations`);
      }
    }
  }
  return { label, t1, t2, p, level, levelText, period, tHalf, epsilonEvol };
}

export function renderContour(spec: FigureSpec, style: Style): string {
  const panels = spec.panels.map((panel) => loadSurface(panel.label, panel.surface!));
  const p = style.panel;
  const boxW = p.marginLeft + p.width + p.marginRight;
  const boxH = p.marginTop + p.height + p.marginBottom;
  const docW = panels.length * boxW + (panels.length - 1) * p.gapX;
  const docH = boxH;
  const body: string[] = [];
  panels.forEach((panel, col) => {
    const x0 = col * (boxW + p.gapX) + p.marginLeft;
    const y0 = p.marginTop;
    const t2Max = Math.max(...panel.t2);
    const xDomain = spec.xRange ?? ([0, panel.period] as [number, number]);
    const yDomain = spec.yRange ?? ([0, t2Max] as [number, number]);
    const axes = makeAxes(x0, y0, p.width, p.height, xDomain, yDomain);
    body.push(renderAxes(axes, style, {
      xLabel: "t1",
      yLabel: "t2",
      title: `${panel.label}  (epsilon = ${fmtValue(panel.epsilonEvol)})`,
    }));
    // Equal-times axis t2 = t1: the Loschmidt-echo cut of the surface.
    body.push(line(axes.sx(0), axes.sy(0), axes.sx(t2Max), axes.sy(t2Max), {
      stroke: style.leAxisColor,
      "stroke-width": style.strokeWidth.axis,
      "stroke-dasharray": style.leAxisDash,
    }));
    body.push(text(axes.sx(t2Max) + 4, axes.sy(t2Max) - 4, "LE", {
      "font-family": style.fontFamily,
      "font-size": String(style.fontSize),
      fill: style.leAxisColor,
    }));
    // Contour at the recorded end-of-period echo level, drawn as one path.
    const segments = marchingSquares(panel.t1, panel.t2, panel.p, panel.level);
    if (segments.length > 0) {
      const d = segments
        .map(
          ([[xa, ya], [xb, yb]]) =>
            `M${fmt(axes.sx(xa))} ${fmt(axes.sy(ya))}L${fmt(axes.sx(xb))} ${fmt(axes.sy(yb))}`,
        )
        .join("");
      body.push(el("path", {
        d,
        fill: "none",
        stroke: style.contourColor,
        "stroke-width": style.strokeWidth.contour,
      }));
    }
    // Experiment path: forward along t2 = 0 to T/2, then the reversed
    // leg up to (T/2, T/2). Endpoints of the reversed leg are marked.
    const px = axes.sx(panel.tHalf);
    body.push(el("polyline", {
      points:
        `${fmt(axes.sx(0))},${fmt(axes.sy(0))} ` +
        `${fmt(px)},${fmt(axes.sy(0))} ` +
        `${fmt(px)},${fmt(axes.sy(panel.tHalf))}`,
      fill: "none",
      stroke: style.pathColor,
      "stroke-width": style.strokeWidth.path,
      "stroke-dasharray": style.pathDash,
    }));
    for (const ty of [0, panel.tHalf]) {
      body.push(el("circle", {
        cx: px,
        cy: axes.sy(ty),
        r: style.markerSize,
        fill: style.endpointColor,
      }));
    }
    body.push(text(x0 + 8, y0 + p.height - 8, `P = ${panel.levelText}`, {
      "font-family": style.fontFamily,
      "font-size": String(style.fontSize),
      fill: style.textColor,
    }));
  });
  return svgDocument(docW, docH, body, style.background);
}
