/**
 * FigureSpec: which CSV files feed a figure and how panels are laid
 * out. Panels order left to right with the quantized-well family
 * (`twodw`) first and the sign-randomized counterpart (`ermt`) second,
 * matching the two-column layout of the source figures. Files written
 * by one simulator invocation carry one config hash; the renderers
 * check that grouped files agree.
 */
import { existsSync, readdirSync, statSync } from "node:fs";
import { join } from "node:path";
import { CsvError, Table } from "./csv.js";

export type FigureKind = "traces" | "compensation" | "scaling" | "contour";

/** One echo-trace run: the trace grid plus its companion results row. */
export interface RunInputs {
  dir: string;
  traces: string[];
  results: string;
}

export interface Panel {
  label: string;
  dir: string;
  /** traces figure: one entry per run directory, stacked vertically. */
  runs: RunInputs[];
  /** compensation and scaling figures */
  results?: string;
  /** scaling figure */
  scaling?: string;
  /** contour figure */
  surface?: string;
}

export interface FigureSpec {
  kind: FigureKind;
  panels: Panel[];
  /** Optional axis overrides; data ranges are used when absent. */
  xRange?: [number, number];
  yRange?: [number, number];
  /** Polynomial degree of the scaling-curve overlay. */
  fitDegree: number;
}

export const DEFAULT_FIT_DEGREE = 3;

function isDir(path: string): boolean {
  return existsSync(path) && statSync(path).isDirectory();
}

function subdirs(dir: string): string[] {
  return readdirSync(dir, { withFileTypes: true })
    .filter((e) => e.isDirectory())
    .map((e) => e.name)
    .sort();
}

function panelOrder(names: string[]): string[] {
  const head = ["twodw", "ermt"].filter((n) => names.includes(n));
  const rest = names.filter((n) => !head.includes(n));
  return [...head, ...rest];
}

function panelLabel(name: string): string {
  if (name === "twodw") return "2DW";
  if (name === "ermt") return "ERMT";
  return name;
}

function traceFiles(dir: string): string[] {
  return readdirSync(dir)
    .filter((f) => f.startsWith("trace_") && f.endsWith(".csv"))
    .sort()
    .map((f) => join(dir, f));
}

function runInputs(dir: string): RunInputs | null {
  const traces = traceFiles(dir);
  if (traces.length === 0) return null;
  return { dir, traces, results: join(dir, "results.csv") };
}

function collectRuns(panelDir: string): RunInputs[] {
  const own = runInputs(panelDir);
  if (own) return [own];
  const runs: RunInputs[] = [];
  for (const name of subdirs(panelDir)) {
    const run = runInputs(join(panelDir, name));
    if (run) runs.push(run);
  }
  return runs;
}

/**
 * Assemble a FigureSpec from the conventional directory layout:
 * `inDir/twodw` (and optionally `inDir/ermt` or others) hold the CSVs
 * for one panel each; `inDir` itself is used as a single panel when it
 * holds the files directly.
 */
export function discoverFigure(kind: FigureKind, inDir: string): FigureSpec {
  if (!isDir(inDir)) {
    throw new CsvError(`input directory not found: ${inDir}`);
  }
  const panels: Panel[] = [];
  const tryAdd = (dir: string, label: string): void => {
    if (kind === "traces") {
      const runs = collectRuns(dir);
      if (runs.length > 0) panels.push({ label, dir, runs });
    } else if (kind === "compensation") {
      const results = join(dir, "results.csv");
      if (existsSync(results)) panels.push({ label, dir, runs: [], results });
    } else if (kind === "scaling") {
      const results = join(dir, "results.csv");
      const scaling = join(dir, "scaling.csv");
      if (existsSync(results) && existsSync(scaling)) {
        panels.push({ label, dir, runs: [], results, scaling });
      }
    } else {
      const surface = join(dir, "surface.csv");
      if (existsSync(surface)) panels.push({ label, dir, runs: [], surface });
    }
  };
  for (const name of panelOrder(subdirs(inDir))) {
    tryAdd(join(inDir, name), panelLabel(name));
  }
  if (panels.length === 0) {
    // inDir itself may hold the files directly (e.g. a bare run dir).
    tryAdd(inDir, "2DW");
  }
  return { kind, panels, fitDegree: DEFAULT_FIT_DEGREE };
}

/** Reject specs whose referenced files are missing or ranges invalid. */
export function validateFigureSpec(spec: FigureSpec): void {
  if (spec.panels.length === 0) {
    throw new CsvError(`no ${spec.kind} inputs found (expected the CSV layout written by the simulator)`);
  }
  const referenced: string[] = [];
  for (const panel of spec.panels) {
    for (const run of panel.runs) referenced.push(...run.traces, run.results);
    for (const f of [panel.results, panel.scaling, panel.surface]) {
      if (f !== undefined) referenced.push(f);
    }
  }
  const missing = referenced.filter((f) => !existsSync(f));
  if (missing.length > 0) {
    throw new CsvError(`missing input files: ${missing.join(", ")}`);
  }
  for (const range of [spec.xRange, spec.yRange]) {
    if (range && !(range[0] < range[1])) {
      throw new CsvError(`axis range must be increasing, got [${range[0]}, ${range[1]}]`);
    }
  }
  if (!Number.isInteger(spec.fitDegree) || spec.fitDegree < 0) {
    throw new CsvError(`fit degree must be a nonnegative integer, got ${spec.fitDegree}`);
  }
}

/** Files produced together must carry one config hash. */
export function checkSameConfigHash(tables: Table[]): void {
  const hashes = tables.map((t) => t.meta["config_hash"] ?? "<none>");
  const first = hashes[0];
  if (!hashes.every((h) => h === first)) {
    const detail = tables.map((t, i) => `${t.path}: ${hashes[i]}`).join("; ");
    throw new CsvError(`config hash mismatch between grouped inputs (${detail})`);
  }
}
