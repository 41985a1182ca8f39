/**
 * Scaling-collapse figure: f = t_r/T against lambda = epsilon/epsilon_prep.
 * Scatter points come straight from the per-cell results, one marker per
 * (epsilon_prep, epsilon_evol) pair; the binned curve with error bars
 * comes from the scaling CSV; a low-degree polynomial fit through the
 * scatter is overlaid dashed. The f = 1/2 floor is drawn dotted.
 */
import { readTable, requireColumns, requireMeta, toNumber } from "../csv.js";
import { checkSameConfigHash, FigureSpec } from "../figspec.js";
import { polyfit, polyval } from "../poly.js";
import { clippedRuns, makeAxes, renderAxes } from "../plot.js";
import { Style } from "../style.js";
import { fmtValue, line, marker, polyline, svgDocument, text } from "../svg.js";

interface ScatterPoint {
  lambda: number;
  f: number;
  pair: string; // "epsilon_prep|epsilon_evol" cell strings
}

interface Bin {
  lambda: number;
  mean: number;
  std: number;
}

interface PanelData {
  label: string;
  scatter: ScatterPoint[];
  bins: Bin[];
  pairs: string[]; // distinct pairs, sorted numerically
  prepValues: string[]; // distinct epsilon_prep cells, sorted numerically
  lambdaStar?: number;
}

function loadPanel(label: string, resultsPath: string, scalingPath: string): PanelData {
  const results = readTable(resultsPath);
  const scaling = readTable(scalingPath);
  checkSameConfigHash([results, scaling]);
  requireColumns(results, ["epsilon_prep", "epsilon_evol", "lambda", "t_r_over_T", "error"]);
  requireColumns(scaling, ["lambda_bin", "f_mean", "f_std", "n"]);
  const scatter: ScatterPoint[] = [];
  for (const row of results.rows) {
    if ((row["error"] ?? "") !== "") continue;
    const lambda = toNumber(row["lambda"] ?? "", `${results.path}: column lambda`);
    const f = toNumber(row["t_r_over_T"] ?? "", `${results.path}: column t_r_over_T`);
    if (!Number.isFinite(lambda) || !Number.isFinite(f)) continue;
    scatter.push({ lambda, f, pair: `${row["epsilon_prep"]}|${row["epsilon_evol"]}` });
  }
  const byNumbers = (a: string, b: string): number => {
    const [a1, a2 = "0"] = a.split("|");
    const [b1, b2 = "0"] = b.split("|");
    return toNumber(a1) - toNumber(b1) || toNumber(a2) - toNumber(b2);
  };
  const pairs = [...new Set(scatter.map((s) => s.pair))].sort(byNumbers);
  const prepValues = [...new Set(pairs.map((p) => p.split("|")[0]))].sort(byNumbers);
  const bins: Bin[] = scaling.rows.map((row, i) => ({
    lambda: toNumber(row["lambda_bin"] ?? "", `${scaling.path}: row ${i + 1}`),
    mean: toNumber(row["f_mean"] ?? "", `${scaling.path}: row ${i + 1}`),
    std: toNumber(row["f_std"] ?? "", `${scaling.path}: row ${i + 1}`),
  }));
  const data: PanelData = { label, scatter, bins, pairs, prepValues };
  if (scaling.meta["lambda_star"] !== undefined) {
    data.lambdaStar = toNumber(requireMeta(scaling, "lambda_star"));
  }
  return data;
}

/** Marker shape and color for one (epsilon_prep, epsilon_evol) pair. */
function pairMarker(
  style: Style,
  data: PanelData,
  pair: string,
): { shape: string; color: string } {
  const prep = pair.split("|")[0];
  const shapeIndex = data.prepValues.indexOf(prep);
  const within = data.pairs.filter((p) => p.split("|")[0] === prep).indexOf(pair);
  return {
    shape: style.markerShapes[shapeIndex % style.markerShapes.length],
    color: style.seriesColors[within % style.seriesColors.length],
  };
}

export function renderScaling(spec: FigureSpec, style: Style): string {
  const panels = spec.panels.map((panel) =>
    loadPanel(panel.label, panel.results!, panel.scaling!),
  );
  const p = style.panel;
  const boxW = p.marginLeft + p.width + p.marginRight;
  const boxH = p.marginTop + p.height + p.marginBottom;
  const docW = panels.length * boxW + (panels.length - 1) * p.gapX;
  const docH = boxH;
  const allLambda = panels.flatMap((pd) => pd.scatter.map((s) => s.lambda));
  const lambdaMax = Math.max(...allLambda, 0);
  const xDomain = spec.xRange ?? ([-0.05, lambdaMax * 1.05] as [number, number]);
  const yDomain = spec.yRange ?? ([0.4, 1.1] as [number, number]);
  const body: string[] = [];
  panels.forEach((panel, col) => {
    const x0 = col * (boxW + p.gapX) + p.marginLeft;
    const y0 = p.marginTop;
    const axes = makeAxes(x0, y0, p.width, p.height, xDomain, yDomain);
    body.push(renderAxes(axes, style, {
      xLabel: "lambda = epsilon / epsilon_prep",
      yLabel: "f = t_r / T",
      title: panel.label,
    }));
    // Reversibility floor f = 1/2.
    if (0.5 >= yDomain[0] && 0.5 <= yDomain[1]) {
      body.push(line(x0, axes.sy(0.5), x0 + p.width, axes.sy(0.5), {
        stroke: style.plateauColor,
        "stroke-width": style.strokeWidth.axis,
        "stroke-dasharray": style.plateauDash,
      }));
    }
    if (panel.lambdaStar !== undefined) {
      const px = axes.sx(panel.lambdaStar);
      body.push(line(px, y0, px, y0 + p.height, {
        stroke: style.plateauColor,
        "stroke-width": style.strokeWidth.axis,
        "stroke-dasharray": style.plateauDash,
      }));
      body.push(text(px + 3, y0 + style.fontSize, "lambda*", {
        "font-family": style.fontFamily,
        "font-size": String(style.fontSize),
        fill: style.textColor,
      }));
    }
    // Scatter, one marker per (epsilon_prep, epsilon_evol) pair.
    for (const point of panel.scatter) {
      if (point.f < yDomain[0] || point.f > yDomain[1]) continue;
      const { shape, color } = pairMarker(style, panel, point.pair);
      body.push(marker(shape, axes.sx(point.lambda), axes.sy(point.f), style.markerSize, {
        fill: "none",
        stroke: color,
        "stroke-width": style.strokeWidth.marker,
      }));
    }
    // Binned curve with error bars.
    const binPts = panel.bins.map((b) => [axes.sx(b.lambda), axes.sy(b.mean)] as [number, number]);
    if (binPts.length > 1) {
      body.push(polyline(binPts, { stroke: style.binnedColor, "stroke-width": style.strokeWidth.binned }));
    }
    panel.bins.forEach((bin, i) => {
      const [px, py] = binPts[i];
      if (Number.isFinite(bin.std) && bin.std > 0) {
        const yLo = axes.sy(Math.max(yDomain[0], bin.mean - bin.std));
        const yHi = axes.sy(Math.min(yDomain[1], bin.mean + bin.std));
        body.push(line(px, yLo, px, yHi, { stroke: style.binnedColor, "stroke-width": style.strokeWidth.axis }));
        body.push(line(px - 3, yLo, px + 3, yLo, { stroke: style.binnedColor, "stroke-width": style.strokeWidth.axis }));
        body.push(line(px - 3, yHi, px + 3, yHi, { stroke: style.binnedColor, "stroke-width": style.strokeWidth.axis }));
      }
      body.push(marker("square", px, py, style.markerSize * 0.8, { fill: style.binnedColor }));
    });
    // Dashed polynomial fit through the scatter.
    if (panel.scatter.length > 1) {
      const xs = panel.scatter.map((s) => s.lambda);
      const ys = panel.scatter.map((s) => s.f);
      const coeffs = polyfit(xs, ys, spec.fitDegree);
      const lo = Math.min(...xs);
      const hi = Math.max(...xs);
      const curve: Array<[number, number]> = [];
      const steps = 100;
      for (let i = 0; i <= steps; i++) {
        const x = lo + ((hi - lo) * i) / steps;
        curve.push([x, polyval(coeffs, x)]);
      }
      for (const seg of clippedRuns(curve, axes)) {
        body.push(polyline(seg, {
          stroke: style.fitColor,
          "stroke-width": style.strokeWidth.fit,
          "stroke-dasharray": style.fitDash,
        }));
      }
    }
    // Legend: marker shape per epsilon_prep value.
    panel.prepValues.forEach((prep, i) => {
      const lx = x0 + p.width - 110;
      const ly = y0 + 14 + i * (style.fontSize + 5);
      const shape = style.markerShapes[i % style.markerShapes.length];
      body.push(marker(shape, lx + 6, ly - 3, style.markerSize, {
        fill: "none",
        stroke: style.textColor,
        "stroke-width": style.strokeWidth.marker,
      }));
      body.push(text(lx + 16, ly, `epsilon_prep = ${fmtValue(toNumber(prep))}`, {
        "font-family": style.fontFamily,
        "font-size": String(style.fontSize),
        fill: style.textColor,
      }));
    });
  });
  return svgDocument(docW, docH, body, style.background);
}
