import { readdirSync, readFileSync } from "node:fs";
import { dirname, join, resolve } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

const SRC = resolve(dirname(fileURLToPath(import.meta.url)), "..", "src");

function sourceFiles(): string[] {
  return readdirSync(SRC, { recursive: true })
    .map(String)
    .filter((f) => f.endsWith(".ts"))
    .map((f) => join(SRC, f));
}

describe("renderer source hygiene", () => {
  const sources = sourceFiles().map((path) => ({
    path,
    text: readFileSync(path, "utf8"),
  }));

  it("finds the source tree", () => {
    expect(sources.length).toBeGreaterThanOrEqual(10);
  });

  it("never shells out or imports the simulator: CSVs are the only input", () => {
    for (const { path, text } of sources) {
      expect(text, path).not.toMatch(/child_process|execFile|execSync|spawn/);
      expect(text, path).not.toMatch(/from ["']echosim|import ["']echosim/);
    }
  });

  it("uses no clocks, randomness or environment lookups", () => {
    for (const { path, text } of sources) {
      expect(text, path).not.toMatch(/Math\.random/);
      expect(text, path).not.toMatch(/Date\.now|new Date\(/);
      expect(text, path).not.toMatch(/process\.env/);
    }
  });

  it("routes every coordinate through the fixed formatter", () => {
    // toFixed appears only in the formatter module itself.
    for (const { path, text } of sources) {
      if (path.endsWith(`svg.ts`)) continue;
      expect(text, path).not.toMatch(/toFixed/);
    }
  });
});
