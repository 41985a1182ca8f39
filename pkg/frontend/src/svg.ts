/**
 * Minimal deterministic SVG assembly. Elements are plain strings,
 * attributes render in insertion order, and all coordinates go
 * through one fixed-precision formatter, so identical inputs yield
 * identical bytes.
 */

/** Screen-coordinate formatter: fixed two decimals, no negative zero. */
export function fmt(x: number): string {
  if (!Number.isFinite(x)) {
    throw new Error(`non-finite coordinate: ${x}`);
  }
  const s = x.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

/** Data-value label formatter: up to 6 significant digits, plain form. */
export function fmtValue(x: number): string {
  if (Number.isNaN(x)) return "nan";
  if (!Number.isFinite(x)) return x > 0 ? "inf" : "-inf";
  const rounded = Number(x.toPrecision(6));
  return String(rounded);
}

export type Attrs = Record<string, string | number>;

export function el(name: string, attrs: Attrs, children?: string | string[]): string {
  let out = `<${name}`;
  for (const key of Object.keys(attrs)) {
    const raw = attrs[key];
    if (raw === undefined) continue;
    const value = typeof raw === "number" ? fmt(raw) : raw;
    out += ` ${key}="${value}"`;
  }
  if (children === undefined) return `${out}/>`;
  const body = Array.isArray(children) ? children.join("") : children;
  return `${out}>${body}</${name}>`;
}

export function text(x: number, y: number, content: string, attrs: Attrs = {}): string {
  return el("text", { x, y, ...attrs }, escapeText(content));
}

export function escapeText(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function line(x1: number, y1: number, x2: number, y2: number, attrs: Attrs): string {
  return el("line", { x1, y1, x2, y2, ...attrs });
}

/** Polyline through screen points; skips nothing, callers filter. */
export function polyline(points: Array<[number, number]>, attrs: Attrs): string {
  const joined = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return el("polyline", { points: joined, fill: "none", ...attrs });
}

/** Scatter marker of a named shape centered at (x, y). */
export function marker(
  shape: string,
  x: number,
  y: number,
  size: number,
  attrs: Attrs,
): string {
  const r = size;
  switch (shape) {
    case "circle":
      return el("circle", { cx: x, cy: y, r, ...attrs });
    case "square":
      return el("rect", { x: x - r, y: y - r, width: 2 * r, height: 2 * r, ...attrs });
    case "triangle": {
      const pts = `${fmt(x)},${fmt(y - r)} ${fmt(x - r)},${fmt(y + r)} ${fmt(x + r)},${fmt(y + r)}`;
      return el("polygon", { points: pts, ...attrs });
    }
    case "diamond": {
      const pts = `${fmt(x)},${fmt(y - r)} ${fmt(x + r)},${fmt(y)} ${fmt(x)},${fmt(y + r)} ${fmt(x - r)},${fmt(y)}`;
      return el("polygon", { points: pts, ...attrs });
    }
    case "cross": {
      const bar = attrs["stroke"] === undefined ? { ...attrs, stroke: attrs["fill"] ?? "#000" } : attrs;
      return (
        line(x - r, y - r, x + r, y + r, bar) + line(x - r, y + r, x + r, y - r, bar)
      );
    }
    default:
      throw new Error(`unknown marker shape: ${shape}`);
  }
}

/** Downward arrow whose tip lands on (x, yTip). */
export function arrowDown(
  x: number,
  yTip: number,
  length: number,
  color: string,
  width: number,
): string {
  const head = 4;
  const yTail = yTip - length;
  return (
    line(x, yTail, x, yTip, { stroke: color, "stroke-width": width }) +
    el("polygon", {
      points: `${fmt(x)},${fmt(yTip)} ${fmt(x - head / 2)},${fmt(yTip - head)} ${fmt(x + head / 2)},${fmt(yTip - head)}`,
      fill: color,
    })
  );
}

export function svgDocument(width: number, height: number, body: string[], background: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${fmt(width)}" height="${fmt(height)}" ` +
    `viewBox="0 0 ${fmt(width)} ${fmt(height)}">` +
    el("rect", { x: 0, y: 0, width, height, fill: background }) +
    body.join("") +
    `</svg>`
  );
}
