/**
 * Marching-squares contour extraction on a rectangular grid. Returns
 * line segments in data coordinates; the renderers draw them directly,
 * so no segment joining is needed. Cell visit order is fixed, which
 * keeps the output byte-deterministic.
 */

export type Segment = [[number, number], [number, number]];

/** Linear crossing of `level` between scalar values a and b in [0, 1]. */
function frac(a: number, b: number, level: number): number {
  if (a === b) return 0.5;
  const t = (level - a) / (b - a);
  return Math.min(1, Math.max(0, t));
}

/**
 * Contour of p at `level`. `xs` has one entry per column, `ys` one per
 * row, and `p[i][j]` is the value at (xs[j], ys[i]). Grid points with
 * p >= level count as inside, so points exactly at the level lie on
 * the contour.
 */
export function marchingSquares(
  xs: number[],
  ys: number[],
  p: number[][],
  level: number,
): Segment[] {
  if (p.length !== ys.length) {
    throw new Error(`contour: ${p.length} rows vs ${ys.length} y values`);
  }
  const segments: Segment[] = [];
  for (let i = 0; i + 1 < ys.length; i++) {
    const row0 = p[i];
    const row1 = p[i + 1];
    if (row0.length !== xs.length || row1.length !== xs.length) {
      throw new Error(`contour: row ${i} has ${row0.length} columns, expected ${xs.length}`);
    }
    for (let j = 0; j + 1 < xs.length; j++) {
      // Corners: a=(i,j) b=(i,j+1) c=(i+1,j+1) d=(i+1,j)
      const a = row0[j];
      const b = row0[j + 1];
      const c = row1[j + 1];
      const d = row1[j];
      let code = 0;
      if (a >= level) code |= 1;
      if (b >= level) code |= 2;
      if (c >= level) code |= 4;
      if (d >= level) code |= 8;
      if (code === 0 || code === 15) continue;
      const x0 = xs[j];
      const x1 = xs[j + 1];
      const y0 = ys[i];
      const y1 = ys[i + 1];
      // Edge crossings, each in data coordinates.
      const top: [number, number] = [x0 + frac(a, b, level) * (x1 - x0), y0];
      const right: [number, number] = [x1, y0 + frac(b, c, level) * (y1 - y0)];
      const bottom: [number, number] = [x0 + frac(d, c, level) * (x1 - x0), y1];
      const left: [number, number] = [x0, y0 + frac(a, d, level) * (y1 - y0)];
      switch (code) {
        case 1:
        case 14:
          segments.push([left, top]);
          break;
        case 2:
        case 13:
          segments.push([top, right]);
          break;
        case 3:
        case 12:
          segments.push([left, right]);
          break;
        case 4:
        case 11:
          segments.push([right, bottom]);
          break;
        case 6:
        case 9:
          segments.push([top, bottom]);
          break;
        case 7:
        case 8:
          segments.push([left, bottom]);
          break;
        case 5: // saddle: resolve by the cell-center average
        case 10: {
          const center = (a + b + c + d) / 4;
          const centerInside = center >= level;
          if ((code === 5) === centerInside) {
            segments.push([left, top], [right, bottom]);
          } else {
            segments.push([top, right], [left, bottom]);
          }
          break;
        }
      }
    }
  }
  return segments;
}
