import { readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { numericColumn, readTable } from "../src/csv.js";
import { discoverFigure } from "../src/figspec.js";
import { renderScaling } from "../src/fig/scaling.js";
import { makeAxes } from "../src/plot.js";
import { DEFAULT_STYLE } from "../src/style.js";
import { fmt } from "../src/svg.js";
import { countMatches, FIXTURES, fixtureCopy } from "./util.js";

const SCALING_DIR = join(FIXTURES, "scaling");

function render(dir = SCALING_DIR): string {
  return renderScaling(discoverFigure("scaling", dir), DEFAULT_STYLE);
}

/** Left panel axes under the default style and fixture data range. */
function leftAxes() {
  const p = DEFAULT_STYLE.panel;
  // lambda spans [0, 2] in the fixtures; the renderer pads by 5%.
  return makeAxes(p.marginLeft, p.marginTop, p.width, p.height, [-0.05, 2.1], [0.4, 1.1]);
}

describe("renderScaling", () => {
  const svg = render();

  it("plots the unperturbed cells at exactly f = 1", () => {
    const axes = leftAxes();
    // epsilon_prep = 0.6 is the first marker shape (circle), and its
    // lambda = 0 cell has t_r/T = 1 recorded in the results CSV.
    const snippet = `<circle cx="${fmt(axes.sx(0))}" cy="${fmt(axes.sy(1))}" r="3.20" ` +
      `fill="none" stroke="${DEFAULT_STYLE.seriesColors[0]}"`;
    expect(svg).toContain(snippet);
  });

  it("keys markers to the (epsilon_prep, epsilon_evol) pair", () => {
    // Two preparation strengths: circles for the first, squares for the
    // second, 10 scatter cells each per panel, plus one legend marker
    // per strength; the binned means add 9 filled squares per panel.
    expect(svg).toContain(">epsilon_prep = 0.6<");
    expect(svg).toContain(">epsilon_prep = 0.8<");
    expect(countMatches(svg, /<circle [^>]*fill="none"/)).toBe(2 * 10 + 2);
  });

  it("draws the binned curve from the scaling CSV values", () => {
    const table = readTable(join(SCALING_DIR, "twodw", "scaling.csv"));
    const lambdas = numericColumn(table, "lambda_bin");
    const means = numericColumn(table, "f_mean");
    const axes = leftAxes();
    const r = DEFAULT_STYLE.markerSize * 0.8;
    for (let i = 0; i < lambdas.length; i++) {
      const px = axes.sx(lambdas[i]);
      const py = axes.sy(means[i]);
      expect(svg).toContain(
        `<rect x="${fmt(px - r)}" y="${fmt(py - r)}" width="${fmt(2 * r)}" height="${fmt(2 * r)}" ` +
          `fill="${DEFAULT_STYLE.binnedColor}"`,
      );
    }
  });

  it("overlays a dashed polynomial fit and the one-half floor", () => {
    expect(svg).toContain(`stroke-dasharray="${DEFAULT_STYLE.fitDash}"`);
    expect(svg).toContain(`stroke="${DEFAULT_STYLE.fitColor}"`);
    const axes = leftAxes();
    expect(svg).toContain(
      `y1="${fmt(axes.sy(0.5))}" x2="${fmt(axes.sx(2.1))}" y2="${fmt(axes.sy(0.5))}" ` +
        `stroke="${DEFAULT_STYLE.plateauColor}"`,
    );
  });

  it("marks lambda* when the scaling CSV records one", () => {
    expect(svg).not.toContain("lambda*");
    const dir = fixtureCopy("scaling");
    const path = join(dir, "twodw", "scaling.csv");
    writeFileSync(path, readFileSync(path, "utf8").replace(
      "# monotone=",
      "# lambda_star=1.25\n# monotone=",
    ));
    expect(render(dir)).toContain("lambda*");
  });

  it("requires results and scaling files from the same invocation", () => {
    const dir = fixtureCopy("scaling");
    const path = join(dir, "ermt", "scaling.csv");
    writeFileSync(path, readFileSync(path, "utf8").replace(
      /config_hash=[0-9a-f]+/,
      "config_hash=ffffffffffffffff",
    ));
    expect(() => render(dir)).toThrow(/config hash mismatch/);
  });
});
