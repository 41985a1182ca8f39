import { writeFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { discoverFigure, FigureKind } from "../src/figspec.js";
import { renderCompensation } from "../src/fig/compensation.js";
import { renderContour } from "../src/fig/contour.js";
import { renderScaling } from "../src/fig/scaling.js";
import { renderTraces } from "../src/fig/traces.js";
import { DEFAULT_STYLE, loadStyle } from "../src/style.js";
import { FIXTURES, tempDir } from "./util.js";

const CASES: Array<[FigureKind, string, (spec: any, style: any) => string]> = [
  ["traces", "traces", renderTraces],
  ["compensation", "periods", renderCompensation],
  ["scaling", "scaling", renderScaling],
  ["contour", "surface", renderContour],
];

describe("byte determinism", () => {
  for (const [kind, dir, render] of CASES) {
    it(`re-rendering the ${kind} figure reproduces identical bytes`, () => {
      const first = render(discoverFigure(kind, join(FIXTURES, dir)), DEFAULT_STYLE);
      const second = render(discoverFigure(kind, join(FIXTURES, dir)), DEFAULT_STYLE);
      expect(second).toBe(first);
      expect(first.startsWith("<svg ")).toBe(true);
      expect(first.endsWith("</svg>")).toBe(true);
    });
  }
});

describe("style file", () => {
  it("deep-merges overrides while keeping the other defaults", () => {
    const path = join(tempDir("style"), "style.json");
    writeFileSync(path, JSON.stringify({
      contourColor: "#123456",
      strokeWidth: { contour: 3 },
    }));
    const style = loadStyle(path);
    expect(style.contourColor).toBe("#123456");
    expect(style.strokeWidth.contour).toBe(3);
    expect(style.strokeWidth.axis).toBe(DEFAULT_STYLE.strokeWidth.axis);
    expect(style.panel).toEqual(DEFAULT_STYLE.panel);
  });

  it("pins the rendered bytes: same style, same output; new style, new output", () => {
    const spec = () => discoverFigure("contour", join(FIXTURES, "surface"));
    const base = renderContour(spec(), DEFAULT_STYLE);
    const path = join(tempDir("style"), "style.json");
    writeFileSync(path, JSON.stringify({ contourColor: "#123456" }));
    const styled = renderContour(spec(), loadStyle(path));
    expect(styled).not.toBe(base);
    expect(styled).toContain("#123456");
    expect(renderContour(spec(), loadStyle(path))).toBe(styled);
  });
});
