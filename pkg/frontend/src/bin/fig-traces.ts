import { runFigureCli } from "../cli.js";
import { renderTraces } from "../fig/traces.js";

process.exit(runFigureCli("traces", renderTraces, process.argv.slice(2)));
