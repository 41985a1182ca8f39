import { readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { numericColumn, readTable, toNumber } from "../src/csv.js";
import { discoverFigure } from "../src/figspec.js";
import { renderTraces } from "../src/fig/traces.js";
import { makeAxes } from "../src/plot.js";
import { DEFAULT_STYLE } from "../src/style.js";
import { fmt } from "../src/svg.js";
import { countMatches, FIXTURES, fixtureCopy } from "./util.js";

const TRACES_DIR = join(FIXTURES, "traces");

function render(dir = TRACES_DIR): string {
  return renderTraces(discoverFigure("traces", dir), DEFAULT_STYLE);
}

/** Screen axes of the subpanel at (col, row) under the default style. */
function panelAxes(col: number, row: number, period: number) {
  const p = DEFAULT_STYLE.panel;
  const boxW = p.marginLeft + p.width + p.marginRight;
  const boxH = p.marginTop + p.height + p.marginBottom;
  const x0 = col * (boxW + p.gapX) + p.marginLeft;
  const y0 = row * (boxH + p.gapY) + p.marginTop;
  return makeAxes(x0, y0, p.width, p.height, [0, period], [0, 1.05]);
}

describe("renderTraces", () => {
  const svg = render();

  it("stacks one subpanel per run, families side by side", () => {
    // 4 quantized-well runs in the left column, 2 counterpart runs right.
    expect(countMatches(svg, /<rect [^>]*fill="none" stroke="#000000"/)).toBe(6);
    expect(countMatches(svg, />P\(t\)</)).toBe(6);
    expect(svg).toContain("2DW: ergodic");
    expect(svg).toContain("ERMT: ergodic");
    expect(svg).toContain("2DW: random-superposition");
  });

  it("draws the mean trace in the preparation kind's line style", () => {
    for (const kind of ["ergodic", "random-superposition", "eigenstate"]) {
      const prep = DEFAULT_STYLE.preparations[kind];
      expect(svg).toContain(`stroke="${prep.stroke}"`);
      if (prep.dash !== "") {
        expect(svg).toContain(`stroke-dasharray="${prep.dash}"`);
      }
    }
  });

  it("places the compensation-time arrow at the recorded t_r", () => {
    const runDir = join(TRACES_DIR, "twodw", "ergodic");
    const results = readTable(join(runDir, "results.csv"));
    const tR = toNumber(results.rows[0]["t_r"]);
    const trace = readTable(join(runDir, "trace_b399e43975e9e3b6.csv"));
    const times = numericColumn(trace, "time");
    const mean = numericColumn(trace, "p_mean");
    let nearest = 0;
    for (let i = 1; i < times.length; i++) {
      if (Math.abs(times[i] - tR) < Math.abs(times[nearest] - tR)) nearest = i;
    }
    // Runs sort by directory name: eigenstate, ergodic, random, zero.
    const axes = panelAxes(0, 1, 0.6);
    const tipX = axes.sx(tR);
    const tipY = axes.sy(Math.min(1.05, mean[nearest])) - 3;
    expect(svg).toContain(`<polygon points="${fmt(tipX)},${fmt(tipY)}`);
    expect(countMatches(svg, />t_r</)).toBe(6);
  });

  it("marks the closed echo P(T) = 1 for unperturbed evolution", () => {
    expect(countMatches(svg, />P\(T\) = 1</)).toBe(1);
    const axes = panelAxes(0, 3, 0.6); // zero/ sorts last in the left column
    const snippet = `<circle cx="${fmt(axes.sx(0.6))}" cy="${fmt(axes.sy(1))}"`;
    expect(svg).toContain(snippet);
  });

  it("draws every realization column as a thin line", () => {
    // 6 runs x 4 realizations, clipped runs never split these traces.
    expect(
      countMatches(svg, new RegExp(`stroke="${DEFAULT_STYLE.realizationColor}"`)),
    ).toBe(24);
  });

  it("rejects traces with missing columns, naming them", () => {
    const dir = fixtureCopy("traces/twodw/ergodic");
    const tracePath = join(dir, "trace_b399e43975e9e3b6.csv");
    const doctored = readFileSync(tracePath, "utf8").replace("time,p_mean", "time,p_avg");
    writeFileSync(tracePath, doctored);
    try {
      render(dir);
      expect.unreachable("should have thrown");
    } catch (err) {
      const msg = (err as Error).message;
      expect(msg).toContain("missing required columns [p_mean]");
      expect(msg).toContain("found [time, p_avg");
    }
  });

  it("labels the eigenstate run without a preparation strength", () => {
    // Its lambda is recorded as inf (no preparation perturbation).
    expect(svg).toContain("2DW: eigenstate, no preparation perturbation");
  });
});
