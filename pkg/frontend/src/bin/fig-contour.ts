import { runFigureCli } from "../cli.js";
import { renderContour } from "../fig/contour.js";

process.exit(runFigureCli("contour", renderContour, process.argv.slice(2)));
