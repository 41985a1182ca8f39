/**
 * Rendering style: every color, dash pattern, size and font used by
 * the figure renderers lives here. Output is a pure function of the
 * input CSVs and the style, so a fixed style file pins the rendered
 * bytes exactly.
 */
import { readFileSync } from "node:fs";

export interface PanelStyle {
  width: number;
  height: number;
  marginLeft: number;
  marginRight: number;
  marginTop: number;
  marginBottom: number;
  gapX: number;
  gapY: number;
}

export interface LineStyle {
  stroke: string;
  dash: string; // SVG stroke-dasharray, "" for solid
}

export interface Style {
  panel: PanelStyle;
  fontFamily: string;
  fontSize: number;
  titleSize: number;
  background: string;
  axisColor: string;
  gridColor: string;
  textColor: string;
  /** Line style per preparation kind for mean echo traces. */
  preparations: Record<string, LineStyle>;
  /** Thin per-realization trace color. */
  realizationColor: string;
  /** Marker shape cycle for (epsilon_prep, epsilon_evol) scatter. */
  markerShapes: string[];
  /** Series color cycle (scatter fills, grouped curves). */
  seriesColors: string[];
  binnedColor: string;
  fitColor: string;
  fitDash: string;
  plateauColor: string;
  plateauDash: string;
  arrowColor: string;
  endpointColor: string;
  contourColor: string;
  pathColor: string;
  pathDash: string;
  leAxisColor: string;
  leAxisDash: string;
  strokeWidth: {
    axis: number;
    mean: number;
    realization: number;
    fit: number;
    binned: number;
    contour: number;
    path: number;
    marker: number;
  };
  markerSize: number;
}

export const DEFAULT_STYLE: Style = {
  panel: {
    width: 340,
    height: 220,
    marginLeft: 52,
    marginRight: 14,
    marginTop: 26,
    marginBottom: 40,
    gapX: 18,
    gapY: 14,
  },
  fontFamily: "Helvetica, Arial, sans-serif",
  fontSize: 11,
  titleSize: 12,
  background: "#ffffff",
  axisColor: "#000000",
  gridColor: "#d8d8d8",
  textColor: "#000000",
  preparations: {
    ergodic: { stroke: "#1f5fa8", dash: "" },
    coherent: { stroke: "#b02a30", dash: "" },
    "random-superposition": { stroke: "#2a7d3f", dash: "6 3" },
    eigenstate: { stroke: "#7b4fa6", dash: "2 3" },
  },
  realizationColor: "#9db8d4",
  markerShapes: ["circle", "square", "triangle", "diamond", "cross"],
  seriesColors: ["#1f5fa8", "#b02a30", "#2a7d3f", "#7b4fa6", "#c07a1f", "#3f7f8c"],
  binnedColor: "#000000",
  fitColor: "#b02a30",
  fitDash: "7 4",
  plateauColor: "#777777",
  plateauDash: "2 4",
  arrowColor: "#b02a30",
  endpointColor: "#b02a30",
  contourColor: "#1f5fa8",
  pathColor: "#b02a30",
  pathDash: "6 4",
  leAxisColor: "#555555",
  leAxisDash: "2 4",
  strokeWidth: {
    axis: 1,
    mean: 1.6,
    realization: 0.7,
    fit: 1.4,
    binned: 1.4,
    contour: 1.6,
    path: 1.4,
    marker: 1,
  },
  markerSize: 3.2,
};

function isPlainObject(x: unknown): x is Record<string, unknown> {
  return typeof x === "object" && x !== null && !Array.isArray(x);
}

function merge<T>(base: T, override: unknown): T {
  if (!isPlainObject(base) || !isPlainObject(override)) {
    return (override === undefined ? base : override) as T;
  }
  const out: Record<string, unknown> = { ...base };
  for (const key of Object.keys(override)) {
    out[key] = merge((base as Record<string, unknown>)[key], override[key]);
  }
  return out as T;
}

/** Defaults, with a JSON style file deep-merged on top when given. */
export function loadStyle(path?: string): Style {
  if (!path) return DEFAULT_STYLE;
  const override = JSON.parse(readFileSync(path, "utf8"));
  return merge(DEFAULT_STYLE, override);
}
