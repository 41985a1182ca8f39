import { runFigureCli } from "../cli.js";
import { renderCompensation } from "../fig/compensation.js";

process.exit(runFigureCli("compensation", renderCompensation, process.argv.slice(2)));
