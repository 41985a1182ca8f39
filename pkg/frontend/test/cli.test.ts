import { existsSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { runFigureCli } from "../src/cli.js";
import { renderContour } from "../src/fig/contour.js";
import { renderTraces } from "../src/fig/traces.js";
import { FIXTURES, tempDir } from "./util.js";

describe("runFigureCli", () => {
  beforeEach(() => {
    vi.spyOn(console, "log").mockImplementation(() => {});
    vi.spyOn(console, "error").mockImplementation(() => {});
  });
  afterEach(() => {
    vi.restoreAllMocks();
  });

  it("renders --in DIR to --out FILE and reports it", () => {
    const out = join(tempDir("cli"), "contour.svg");
    const code = runFigureCli("contour", renderContour, [
      "--in", join(FIXTURES, "surface"),
      "--out", out,
    ]);
    expect(code).toBe(0);
    expect(existsSync(out)).toBe(true);
    expect(readFileSync(out, "utf8")).toMatch(/^<svg /);
    expect(console.log).toHaveBeenCalledWith(`wrote ${out}`);
  });

  it("applies --style overrides", () => {
    const dir = tempDir("cli");
    const stylePath = join(dir, "style.json");
    writeFileSync(stylePath, JSON.stringify({ contourColor: "#abcdef" }));
    const out = join(dir, "contour.svg");
    const code = runFigureCli("contour", renderContour, [
      "--in", join(FIXTURES, "surface"),
      "--out", out,
      "--style", stylePath,
    ]);
    expect(code).toBe(0);
    expect(readFileSync(out, "utf8")).toContain("#abcdef");
  });

  it("exits 2 with usage when arguments are missing", () => {
    expect(runFigureCli("traces", renderTraces, ["--in", "somewhere"])).toBe(2);
    expect(runFigureCli("traces", renderTraces, [])).toBe(2);
    expect(console.error).toHaveBeenCalledWith(
      expect.stringContaining("usage: fig-traces --in DIR --out FILE"),
    );
  });

  it("exits 2 on unknown flags", () => {
    expect(runFigureCli("traces", renderTraces, ["--frobnicate"])).toBe(2);
  });

  it("exits 2 when the input directory is missing", () => {
    const out = join(tempDir("cli"), "x.svg");
    const code = runFigureCli("traces", renderTraces, [
      "--in", "/no/such/dir", "--out", out,
    ]);
    expect(code).toBe(2);
    expect(existsSync(out)).toBe(false);
  });

  it("exits 2 on an unreadable style file", () => {
    const dir = tempDir("cli");
    const stylePath = join(dir, "style.json");
    writeFileSync(stylePath, "{not json");
    const code = runFigureCli("contour", renderContour, [
      "--in", join(FIXTURES, "surface"),
      "--out", join(dir, "x.svg"),
      "--style", stylePath,
    ]);
    expect(code).toBe(2);
  });
});
