/**
 * Echo-trace figure: P(t) over one reversal experiment, one stacked
 * subpanel per run directory, families side by side. Thin lines show
 * individual realizations, the bold line the mean trace in the
 * preparation kind's style, and an arrow marks the recorded
 * compensation time t_r. Every plotted number comes from the CSVs.
 */
import { numericColumn, readTable, requireColumns, requireMeta, Table, toNumber, CsvError } from "../csv.js";
import { checkSameConfigHash, FigureSpec, RunInputs } from "../figspec.js";
import { clippedRuns, makeAxes, renderAxes } from "../plot.js";
import { Style, LineStyle } from "../style.js";
import { arrowDown, el, fmtValue, line, polyline, svgDocument, text } from "../svg.js";

interface RunData {
  trace: Table;
  times: number[];
  mean: number[];
  realizations: number[][];
  kind: string;
  lambda: number;
  period: number;
  epsilonEvol: number;
  tR: number;
}

function loadRun(run: RunInputs): RunData[] {
  const results = readTable(run.results);
  requireColumns(results, ["kind", "epsilon_evol", "lambda", "T", "t_r"]);
  const out: RunData[] = [];
  for (const tracePath of run.traces) {
    const trace = readTable(tracePath);
    requireColumns(trace, ["time", "p_mean"]);
    checkSameConfigHash([trace, results]);
    const kind = requireMeta(trace, "kind");
    const period = toNumber(requireMeta(trace, "period"), `${trace.path}: meta period`);
    const row = results.rows.find(
      (r) => r["kind"] === kind && toNumber(r["T"] ?? "") === period,
    );
    if (!row) {
      throw new CsvError(
        `${results.path}: no row matches trace ${trace.path} (kind=${kind}, T=${period})`,
      );
    }
    const realizationCols = trace.columns.filter((c) => /^p_\d+$/.test(c));
    out.push({
      trace,
      times: numericColumn(trace, "time"),
      mean: numericColumn(trace, "p_mean"),
      realizations: realizationCols.map((c) => numericColumn(trace, c)),
      kind,
      lambda: toNumber(row["lambda"] ?? ""),
      period,
      epsilonEvol: toNumber(row["epsilon_evol"] ?? ""),
      tR: toNumber(row["t_r"] ?? ""),
    });
  }
  return out;
}

function prepStyle(style: Style, kind: string): LineStyle {
  return style.preparations[kind] ?? { stroke: style.axisColor, dash: "" };
}

export function renderTraces(spec: FigureSpec, style: Style): string {
  const columns = spec.panels.map((panel) => ({
    label: panel.label,
    runs: panel.runs.flatMap(loadRun),
  }));
  const nCols = columns.length;
  const nRows = Math.max(...columns.map((c) => c.runs.length));
  const p = style.panel;
  const boxW = p.marginLeft + p.width + p.marginRight;
  const boxH = p.marginTop + p.height + p.marginBottom;
  const docW = nCols * boxW + (nCols - 1) * p.gapX;
  const docH = nRows * boxH + (nRows - 1) * p.gapY;
  const body: string[] = [];
  for (let col = 0; col < nCols; col++) {
    const { label, runs } = columns[col];
    for (let row = 0; row < runs.length; row++) {
      const run = runs[row];
      const x0 = col * (boxW + p.gapX) + p.marginLeft;
      const y0 = row * (boxH + p.gapY) + p.marginTop;
      const xDomain = spec.xRange ?? ([0, run.period] as [number, number]);
      const yDomain = spec.yRange ?? ([0, 1.05] as [number, number]);
      const axes = makeAxes(x0, y0, p.width, p.height, xDomain, yDomain);
      const title =
        `${label}: ${run.kind}, ` +
        (Number.isFinite(run.lambda) ? `lambda = ${fmtValue(run.lambda)}` : "no preparation perturbation");
      body.push(renderAxes(axes, style, { xLabel: "t", yLabel: "P(t)", title }));
      // Reversal midpoint T/2 for orientation.
      const half = axes.sx(run.period / 2);
      body.push(line(half, y0, half, y0 + p.height, {
        stroke: style.gridColor,
        "stroke-width": style.strokeWidth.axis,
        "stroke-dasharray": "3 3",
      }));
      for (const series of run.realizations) {
        const pts = run.times.map((t, i) => [t, series[i]] as [number, number]);
        for (const seg of clippedRuns(pts, axes)) {
          body.push(polyline(seg, {
            stroke: style.realizationColor,
            "stroke-width": style.strokeWidth.realization,
          }));
        }
      }
      const meanStyle = prepStyle(style, run.kind);
      const meanPts = run.times.map((t, i) => [t, run.mean[i]] as [number, number]);
      for (const seg of clippedRuns(meanPts, axes)) {
        const attrs: Record<string, string | number> = {
          stroke: meanStyle.stroke,
          "stroke-width": style.strokeWidth.mean,
        };
        if (meanStyle.dash !== "") attrs["stroke-dasharray"] = meanStyle.dash;
        body.push(polyline(seg, attrs));
      }
      // Arrow at the recorded compensation time, tip on the mean trace.
      let nearest = 0;
      for (let i = 1; i < run.times.length; i++) {
        if (Math.abs(run.times[i] - run.tR) < Math.abs(run.times[nearest] - run.tR)) nearest = i;
      }
      const tipX = axes.sx(run.tR);
      const tipY = axes.sy(Math.min(yDomain[1], run.mean[nearest])) - 3;
      body.push(arrowDown(tipX, tipY, 18, style.arrowColor, style.strokeWidth.path));
      body.push(text(tipX + 4, tipY - 8, "t_r", {
        "font-family": style.fontFamily,
        "font-size": String(style.fontSize),
        fill: style.arrowColor,
      }));
      if (run.epsilonEvol === 0) {
        // Unperturbed evolution: the echo closes, P(T) = 1 by identity.
        const ex = axes.sx(run.period);
        const ey = axes.sy(1);
        body.push(el("circle", {
          cx: ex,
          cy: ey,
          r: style.markerSize + 1,
          fill: "none",
          stroke: style.endpointColor,
          "stroke-width": style.strokeWidth.marker + 0.5,
        }));
        body.push(text(ex - 4, ey - 8, "P(T) = 1", {
          "font-family": style.fontFamily,
          "font-size": String(style.fontSize),
          fill: style.endpointColor,
          "text-anchor": "end",
        }));
      }
    }
  }
  return svgDocument(docW, docH, body, style.background);
}
