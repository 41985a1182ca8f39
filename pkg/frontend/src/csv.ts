/**
 * Reader for the simulator's CSV interchange format.
 *
 * Every file starts with comment lines of the form `# key=value`
 * (config hash, code version, per-file extras such as the contour
 * level), followed by a regular CSV header and rows. Cells are plain
 * text: no quoting or embedded separators. Numeric cells may carry
 * the tokens `nan`, `inf` and `-inf`.
 */
import { readFileSync } from "node:fs";
import Papa from "papaparse";

export interface Table {
  /** Path the table was read from, used in error messages. */
  path: string;
  /** `# key=value` preamble, values kept verbatim. */
  meta: Record<string, string>;
  /** Header row, in file order. */
  columns: string[];
  /** Data rows as column -> cell string maps. */
  rows: Record<string, string>[];
}

export class CsvError extends Error {}

/** Parse one numeric cell; empty and `nan` map to NaN, `inf` to Infinity. */
export function toNumber(cell: string, context = "cell"): number {
  const text = cell.trim();
  if (text === "" || text === "nan" || text === "-nan") return NaN;
  if (text === "inf") return Infinity;
  if (text === "-inf") return -Infinity;
  const value = Number(text);
  if (Number.isNaN(value)) {
    throw new CsvError(`${context}: cannot parse ${JSON.stringify(cell)} as a number`);
  }
  return value;
}

export function parseTable(text: string, path = "<string>"): Table {
  const meta: Record<string, string> = {};
  let offset = 0;
  const lines = text.split("\n");
  while (offset < lines.length && (lines[offset] ?? "").startsWith("#")) {
    const line = (lines[offset] ?? "").replace(/^#\s*/, "");
    const eq = line.indexOf("=");
    if (eq > 0) meta[line.slice(0, eq)] = line.slice(eq + 1).trimEnd();
    offset += 1;
  }
  const body = lines.slice(offset).join("\n");
  const parsed = Papa.parse<Record<string, string>>(body, {
    header: true,
    skipEmptyLines: true,
    delimiter: ",",
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new CsvError(`${path}: ${first?.message ?? "malformed CSV"}`);
  }
  const columns = (parsed.meta.fields ?? []).slice();
  if (columns.length === 0) {
    throw new CsvError(`${path}: no header row found`);
  }
  return { path, meta, columns, rows: parsed.data };
}

export function readTable(path: string): Table {
  return parseTable(readFileSync(path, "utf8"), path);
}

/** Reject tables missing required columns, naming both sides. */
export function requireColumns(table: Table, needed: string[]): void {
  const have = new Set(table.columns);
  const missing = needed.filter((c) => !have.has(c));
  if (missing.length > 0) {
    throw new CsvError(
      `${table.path}: missing required columns [${missing.join(", ")}]; ` +
        `found [${table.columns.join(", ")}]`,
    );
  }
}

/** One column as numbers, in row order. */
export function numericColumn(table: Table, name: string): number[] {
  requireColumns(table, [name]);
  return table.rows.map((row, i) =>
    toNumber(row[name] ?? "", `${table.path}: row ${i + 1}, column ${name}`),
  );
}

/** Meta value that must be present, kept as the verbatim string. */
export function requireMeta(table: Table, key: string): string {
  const value = table.meta[key];
  if (value === undefined) {
    throw new CsvError(
      `${table.path}: missing meta line "# ${key}=..."; ` +
        `found keys [${Object.keys(table.meta).sort().join(", ")}]`,
    );
  }
  return value;
}
