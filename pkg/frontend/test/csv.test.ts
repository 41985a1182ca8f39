import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import {
  CsvError,
  numericColumn,
  parseTable,
  readTable,
  requireColumns,
  requireMeta,
  toNumber,
} from "../src/csv.js";
import { FIXTURES } from "./util.js";

const TRACE = join(FIXTURES, "traces/twodw/ergodic/trace_b399e43975e9e3b6.csv");

describe("toNumber", () => {
  it("parses plain and scientific notation", () => {
    expect(toNumber("0.6")).toBe(0.6);
    expect(toNumber("1e-3")).toBe(1e-3);
    expect(toNumber("-4")).toBe(-4);
  });
  it("maps the writer's special tokens", () => {
    expect(toNumber("nan")).toBeNaN();
    expect(toNumber("")).toBeNaN();
    expect(toNumber("inf")).toBe(Infinity);
    expect(toNumber("-inf")).toBe(-Infinity);
  });
  it("rejects garbage instead of silently yielding NaN", () => {
    expect(() => toNumber("0.3.4", "ctx")).toThrow(CsvError);
    expect(() => toNumber("abc")).toThrow(/cannot parse/);
  });
});

describe("parseTable", () => {
  it("splits the # key=value preamble from the rows", () => {
    const table = readTable(TRACE);
    expect(table.meta["kind"]).toBe("ergodic");
    expect(table.meta["period"]).toBe("0.6");
    expect(table.meta["config_hash"]).toMatch(/^[0-9a-f]{16}$/);
    expect(table.columns.slice(0, 2)).toEqual(["time", "p_mean"]);
    expect(table.columns).toContain("p_3");
    // 64 grid steps over [0, T] plus the t = 0 row.
    expect(table.rows.length).toBe(65);
    expect(table.rows[0]["time"]).toBe("0");
    expect(table.rows[0]["p_mean"]).toBe("1");
  });
  it("keeps meta values verbatim, including full-precision floats", () => {
    const raw = readFileSync(join(FIXTURES, "surface/twodw/surface.csv"), "utf8");
    const table = parseTable(raw, "surface.csv");
    const line = raw.split("\n").find((l) => l.startsWith("# level="))!;
    expect(table.meta["level"]).toBe(line.slice("# level=".length));
  });
  it("rejects empty input", () => {
    expect(() => parseTable("", "empty.csv")).toThrow(CsvError);
  });
});

describe("requireColumns", () => {
  it("names both the missing and the available columns", () => {
    const table = parseTable("a,b\n1,2\n", "mini.csv");
    try {
      requireColumns(table, ["a", "t_r", "p_mean"]);
      expect.unreachable("should have thrown");
    } catch (err) {
      expect(err).toBeInstanceOf(CsvError);
      const msg = (err as Error).message;
      expect(msg).toContain("mini.csv");
      expect(msg).toContain("[t_r, p_mean]");
      expect(msg).toContain("found [a, b]");
    }
  });
  it("passes when every column is present", () => {
    const table = readTable(TRACE);
    expect(() => requireColumns(table, ["time", "p_mean", "p_0"])).not.toThrow();
  });
});

describe("numericColumn and requireMeta", () => {
  it("reads a column as numbers in row order", () => {
    const table = readTable(TRACE);
    const times = numericColumn(table, "time");
    expect(times[0]).toBe(0);
    expect(times[64]).toBeCloseTo(0.6, 12);
    expect(times.length).toBe(65);
  });
  it("points at the offending cell on parse failure", () => {
    const table = parseTable("x\noops\n", "bad.csv");
    expect(() => numericColumn(table, "x")).toThrow(/bad\.csv: row 1, column x/);
  });
  it("lists available meta keys when one is missing", () => {
    const table = readTable(TRACE);
    expect(requireMeta(table, "cell_hash")).toMatch(/^[0-9a-f]{16}$/);
    expect(() => requireMeta(table, "level")).toThrow(/found keys \[.*config_hash/);
  });
});
