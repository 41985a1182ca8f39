import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { discoverFigure } from "../src/figspec.js";
import { renderCompensation } from "../src/fig/compensation.js";
import { DEFAULT_STYLE } from "../src/style.js";
import { countMatches, FIXTURES, tempDir } from "./util.js";

const HEADER =
  "model,hbar,kind,epsilon_prep,epsilon_evol,lambda,T,t_r,t_r_over_T," +
  "p_max,gamma_sr,gamma_le,n_seeds,error";

function render(dir: string): string {
  return renderCompensation(discoverFigure("compensation", dir), DEFAULT_STYLE);
}

describe("renderCompensation", () => {
  const svg = render(join(FIXTURES, "periods"));

  it("draws one curve per evolution strength and panel", () => {
    // 3 strengths x 2 families: a legend entry and polyline each.
    expect(countMatches(svg, />epsilon = 0\.12</)).toBe(2);
    expect(countMatches(svg, />epsilon = 0\.24</)).toBe(2);
    expect(countMatches(svg, />epsilon = 0\.4</)).toBe(2);
    expect(countMatches(svg, /<polyline /)).toBe(6);
  });

  it("plots every error-free cell as a point", () => {
    // 15 cells per family; all eligible in the fixtures.
    expect(countMatches(svg, /<circle /)).toBe(30);
  });

  it("shows the no-compensation floor at one half", () => {
    expect(svg).toContain(`stroke-dasharray="${DEFAULT_STYLE.plateauDash}"`);
  });

  it("labels panels and axes", () => {
    expect(svg).toContain(">2DW<");
    expect(svg).toContain(">ERMT<");
    expect(countMatches(svg, />t_r \/ T</)).toBe(2);
    expect(countMatches(svg, />T</)).toBe(2);
  });

  it("skips rows with a recorded error", () => {
    const dir = tempDir("comp");
    mkdirSync(join(dir, "twodw"));
    const rows = [
      "2DW:aa,0.1,ergodic,0.8,0.2,0.25,0.3,0.27,0.9,0.95,nan,nan,4,",
      "2DW:aa,0.1,ergodic,0.8,0.2,0.25,0.6,0.5,0.83,0.9,nan,nan,4,",
      "2DW:aa,0.1,ergodic,0.8,0.2,0.25,0.9,nan,nan,nan,nan,nan,0,propagation failed",
    ];
    writeFileSync(
      join(dir, "twodw", "results.csv"),
      `# config_hash=aa\n${HEADER}\n${rows.join("\n")}\n`,
    );
    const mini = render(dir);
    expect(countMatches(mini, /<circle /)).toBe(2);
    expect(countMatches(mini, />epsilon = 0\.2</)).toBe(1);
  });
});
