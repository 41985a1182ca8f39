import { rmSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { CsvError, parseTable } from "../src/csv.js";
import {
  checkSameConfigHash,
  discoverFigure,
  validateFigureSpec,
} from "../src/figspec.js";
import { FIXTURES, fixtureCopy, tempDir } from "./util.js";

describe("discoverFigure", () => {
  it("orders the well panel before the sign-randomized one", () => {
    const spec = discoverFigure("traces", join(FIXTURES, "traces"));
    expect(spec.panels.map((p) => p.label)).toEqual(["2DW", "ERMT"]);
    expect(spec.fitDegree).toBe(3);
  });
  it("collects one run per subdirectory with its results file", () => {
    const spec = discoverFigure("traces", join(FIXTURES, "traces"));
    const twodw = spec.panels[0];
    expect(twodw.runs.map((r) => r.dir.split("/").pop())).toEqual([
      "eigenstate",
      "ergodic",
      "random",
      "zero",
    ]);
    for (const run of twodw.runs) {
      expect(run.traces.length).toBe(1);
      expect(run.results.endsWith("results.csv")).toBe(true);
    }
    expect(spec.panels[1].runs.length).toBe(2);
  });
  it("keeps only directories holding the figure's inputs", () => {
    const spec = discoverFigure("scaling", join(FIXTURES, "scaling"));
    expect(spec.panels.length).toBe(2);
    expect(spec.panels[0].results).toBeDefined();
    expect(spec.panels[0].scaling).toBeDefined();
  });
  it("accepts a directory holding the files directly", () => {
    const spec = discoverFigure("contour", join(FIXTURES, "surface/twodw"));
    expect(spec.panels.length).toBe(1);
    expect(spec.panels[0].label).toBe("2DW");
  });
  it("uses lexicographic order for other panel names", () => {
    const spec = discoverFigure("contour", join(FIXTURES, "surface_lambda"));
    expect(spec.panels.map((p) => p.label)).toEqual(["large", "small"]);
  });
  it("rejects a missing input directory", () => {
    expect(() => discoverFigure("traces", join(FIXTURES, "no-such-dir"))).toThrow(CsvError);
  });
});

describe("validateFigureSpec", () => {
  it("accepts the fixture layouts", () => {
    for (const [kind, dir] of [
      ["traces", "traces"],
      ["compensation", "periods"],
      ["scaling", "scaling"],
      ["contour", "surface"],
    ] as const) {
      expect(() => validateFigureSpec(discoverFigure(kind, join(FIXTURES, dir)))).not.toThrow();
    }
  });
  it("rejects empty input directories by figure kind", () => {
    const dir = tempDir("empty");
    expect(() => validateFigureSpec(discoverFigure("scaling", dir))).toThrow(/no scaling inputs/);
  });
  it("names files that disappeared after discovery", () => {
    const dir = fixtureCopy("traces/twodw/ergodic");
    const spec = discoverFigure("traces", dir);
    rmSync(join(dir, "results.csv"));
    expect(() => validateFigureSpec(spec)).toThrow(/missing input files: .*results\.csv/);
  });
  it("rejects inverted axis ranges and bad fit degrees", () => {
    const spec = discoverFigure("contour", join(FIXTURES, "surface"));
    expect(() => validateFigureSpec({ ...spec, xRange: [1, 0] })).toThrow(/increasing/);
    expect(() => validateFigureSpec({ ...spec, fitDegree: 2.5 })).toThrow(/fit degree/);
  });
});

describe("checkSameConfigHash", () => {
  it("accepts files from one invocation", () => {
    const a = parseTable("# config_hash=abc\nx\n1\n", "a.csv");
    const b = parseTable("# config_hash=abc\ny\n2\n", "b.csv");
    expect(() => checkSameConfigHash([a, b])).not.toThrow();
  });
  it("names both files and hashes on mismatch", () => {
    const a = parseTable("# config_hash=abc\nx\n1\n", "a.csv");
    const b = parseTable("# config_hash=def\ny\n2\n", "b.csv");
    expect(() => checkSameConfigHash([a, b])).toThrow(/a\.csv: abc.*b\.csv: def/);
  });
});

describe("grouped hash enforcement in renderers", () => {
  it("rejects a tampered run directory", async () => {
    const { renderTraces } = await import("../src/fig/traces.js");
    const { DEFAULT_STYLE } = await import("../src/style.js");
    const dir = fixtureCopy("traces/twodw/ergodic");
    const resultsPath = join(dir, "results.csv");
    const { readFileSync } = await import("node:fs");
    const tampered = readFileSync(resultsPath, "utf8").replace(
      /config_hash=[0-9a-f]+/,
      "config_hash=0000000000000000",
    );
    writeFileSync(resultsPath, tampered);
    const spec = discoverFigure("traces", dir);
    expect(() => renderTraces(spec, DEFAULT_STYLE)).toThrow(/config hash mismatch/);
  });
});
