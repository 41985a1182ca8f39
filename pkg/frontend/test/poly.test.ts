import { describe, expect, it } from "vitest";
import { polyfit, polyval } from "../src/poly.js";

describe("polyfit", () => {
  it("recovers exact cubic coefficients from clean samples", () => {
    const coeffs = [2.0, -1.0, 0.5, -0.25];
    const xs = [0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5];
    const ys = xs.map((x) => polyval(coeffs, x));
    const fitted = polyfit(xs, ys, 3);
    expect(fitted.length).toBe(4);
    fitted.forEach((c, i) => expect(c).toBeCloseTo(coeffs[i], 9));
  });
  it("matches the closed-form least-squares line", () => {
    // y = 3 + 2x with one point pulled off the line by 0.6: the
    // least-squares slope/intercept follow from the normal equations
    // by hand: x = [0,1,2], y = [3,5,7.6] -> slope 2.3, intercept 2.9.
    const fitted = polyfit([0, 1, 2], [3, 5, 7.6], 1);
    expect(fitted[0]).toBeCloseTo(2.9, 12);
    expect(fitted[1]).toBeCloseTo(2.3, 12);
  });
  it("clamps the degree to the number of points", () => {
    const fitted = polyfit([0, 1], [1, 3], 3);
    expect(fitted.length).toBe(2);
    expect(polyval(fitted, 0)).toBeCloseTo(1, 12);
    expect(polyval(fitted, 1)).toBeCloseTo(3, 12);
  });
  it("rejects singular systems and bad degrees", () => {
    expect(() => polyfit([1, 1, 1], [1, 2, 3], 2)).toThrow(/singular/);
    expect(() => polyfit([0, 1], [0, 1], -1)).toThrow(/degree/);
    expect(() => polyfit([0, 1], [0], 1)).toThrow(/x values/);
  });
});

describe("polyval", () => {
  it("evaluates by Horner's rule", () => {
    expect(polyval([1, 0, 2], 3)).toBe(19);
    expect(polyval([5], 100)).toBe(5);
  });
});
