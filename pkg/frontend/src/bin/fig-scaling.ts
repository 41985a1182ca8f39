import { runFigureCli } from "../cli.js";
import { renderScaling } from "../fig/scaling.js";

process.exit(runFigureCli("scaling", renderScaling, process.argv.slice(2)));
