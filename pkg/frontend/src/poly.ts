/**
 * Least-squares polynomial fit for the scaling-curve overlay. Normal
 * equations with partial-pivot Gaussian elimination are plenty for
 * degree <= 5 over a handful of points.
 */

/** Coefficients c[0] + c[1] x + ... + c[d] x^d minimizing squared error. */
export function polyfit(xs: number[], ys: number[], degree: number): number[] {
  if (xs.length !== ys.length) {
    throw new Error(`polyfit: ${xs.length} x values vs ${ys.length} y values`);
  }
  if (!Number.isInteger(degree) || degree < 0) {
    throw new Error(`polyfit: degree must be a nonnegative integer, got ${degree}`);
  }
  const d = Math.min(degree, Math.max(0, xs.length - 1));
  const n = d + 1;
  // Augmented normal equations: (V^T V | V^T y) with V[i][j] = x_i^j.
  const a: number[][] = Array.from({ length: n }, () => new Array<number>(n + 1).fill(0));
  for (let i = 0; i < xs.length; i++) {
    const powers = new Array<number>(2 * d + 1);
    powers[0] = 1;
    for (let k = 1; k <= 2 * d; k++) powers[k] = powers[k - 1] * xs[i];
    for (let r = 0; r < n; r++) {
      for (let c = 0; c < n; c++) a[r][c] += powers[r + c];
      a[r][n] += powers[r] * ys[i];
    }
  }
  for (let col = 0; col < n; col++) {
    let pivot = col;
    for (let r = col + 1; r < n; r++) {
      if (Math.abs(a[r][col]) > Math.abs(a[pivot][col])) pivot = r;
    }
    [a[col], a[pivot]] = [a[pivot], a[col]];
    const head = a[col][col];
    if (Math.abs(head) < 1e-14) {
      throw new Error("polyfit: singular normal equations (too few distinct x values)");
    }
    for (let r = 0; r < n; r++) {
      if (r === col) continue;
      const factor = a[r][col] / head;
      for (let c = col; c <= n; c++) a[r][c] -= factor * a[col][c];
    }
  }
  return a.map((row, r) => row[n] / row[r]);
}

export function polyval(coeffs: number[], x: number): number {
  let acc = 0;
  for (let k = coeffs.length - 1; k >= 0; k--) acc = acc * x + coeffs[k];
  return acc;
}
