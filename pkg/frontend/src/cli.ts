/**
 * Shared command line for the figure scripts: `--in DIR --out FILE
 * [--style PATH]`. Inputs are discovered inside DIR by the simulator's
 * own output layout; the style file pins every rendered byte.
 */
import { writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { CsvError } from "./csv.js";
import { discoverFigure, FigureKind, FigureSpec, validateFigureSpec } from "./figspec.js";
import { loadStyle, Style } from "./style.js";

export type Renderer = (spec: FigureSpec, style: Style) => string;

export function runFigureCli(kind: FigureKind, render: Renderer, argv: string[]): number {
  let values: { in?: string; out?: string; style?: string };
  try {
    values = parseArgs({
      args: argv,
      options: {
        in: { type: "string" },
        out: { type: "string" },
        style: { type: "string" },
      },
    }).values;
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    return 2;
  }
  if (!values.in || !values.out) {
    console.error(`usage: fig-${kind} --in DIR --out FILE [--style PATH]`);
    return 2;
  }
  try {
    const style = loadStyle(values.style);
    const spec = discoverFigure(kind, values.in);
    validateFigureSpec(spec);
    writeFileSync(values.out, render(spec, style));
  } catch (err) {
    if (err instanceof CsvError || (err instanceof Error && err.name === "SyntaxError")) {
      console.error(`error: ${err.message}`);
      return 2;
    }
    throw err;
  }
  console.log(`wrote ${values.out}`);
  return 0;
}
