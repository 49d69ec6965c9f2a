import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { SchemaError } from "../src/csv.js";
import { renderBifurcationBranch, renderFigure, renderRatio } from "../src/figures.js";

const FIXTURES = join(__dirname, "..", "fixtures");
const branchCsv = readFileSync(join(FIXTURES, "star4_branch.csv"), "utf8");
const report = JSON.parse(readFileSync(join(FIXTURES, "star4_report.json"), "utf8"));
const summaryN = readFileSync(join(FIXTURES, "summary_by_n.csv"), "utf8");
const summaryP = readFileSync(join(FIXTURES, "summary_by_p.csv"), "utf8");

function seriesPoints(svg: string, name: string): Array<[number, number]> {
  const m = svg.match(new RegExp(`points="([^"]*)"[^/]*data-series="${name}"`));
  expect(m, `polyline for ${name}`).toBeTruthy();
  return m![1]!
    .split(" ")
    .filter((s) => s.length)
    .map((pair) => {
      const [x, y] = pair.split(",").map(Number);
      return [x!, y!] as [number, number];
    });
}

describe("bifurcation branch figure", () => {
  const svg = renderBifurcationBranch(branchCsv, report);

  it("draws one curve per species", () => {
    expect(svg.match(/class="species-curve"/g)).toHaveLength(4);
  });

  it("shows the hub curve reaching zero at tau = 1/3", () => {
    // invert the frame scales from the branch data itself
    const taus = branchCsv
      .split("\n")
      .slice(1)
      .filter((l) => l.length)
      .map((l) => Number(l.split(",")[0]));
    const tauMax = Math.max(...taus);
    const hub = seriesPoints(svg, "x_1");
    const xs = hub.map(([x]) => x);
    const ys = hub.map(([, y]) => y);
    const yZero = Math.max(...ys); // abundance 0 maps to the largest pixel y
    const first = hub.find(([, y]) => Math.abs(y - yZero) < 0.02)!;
    expect(first).toBeTruthy();
    const xMin = Math.min(...xs);
    const xMaxPx = Math.max(...xs);
    const tauAtZero = ((first[0] - xMin) / (xMaxPx - xMin)) * tauMax;
    expect(Math.abs(tauAtZero - 1 / 3)).toBeLessThan(0.01);
  });

  it("marks tau_c from the report", () => {
    expect(svg).toContain('data-tau-c="0.333333"');
  });

  it("estimates tau_c from the flags when no report is given", () => {
    const bare = renderBifurcationBranch(branchCsv);
    const m = bare.match(/data-tau-c="([0-9.]+)"/);
    expect(m).toBeTruthy();
    expect(Math.abs(Number(m![1]) - 1 / 3)).toBeLessThan(0.01);
  });

  it("collapses to a single visible curve for equal-value species", () => {
    const rows = ["tau,x_1,x_2,x_3,feasible,stable"];
    for (let i = 0; i <= 10; i++) {
      const tau = i / 20;
      const v = (1 / (1 + 2 * tau)).toFixed(12);
      rows.push(`${tau},${v},${v},${v},1,1`);
    }
    const reg = renderBifurcationBranch(rows.join("\n"));
    const a = seriesPoints(reg, "x_1");
    const b = seriesPoints(reg, "x_2");
    const c = seriesPoints(reg, "x_3");
    expect(b).toEqual(a);
    expect(c).toEqual(a);
  });

  it("is deterministic", () => {
    expect(renderBifurcationBranch(branchCsv, report)).toBe(svg);
  });

  it("rejects schema mismatches by column name", () => {
    expect(() => renderBifurcationBranch("tau,y,feasible,stable\n0,1,1,1\n")).toThrow(/"x_1"/);
    expect(() => renderBifurcationBranch("tau,y\n0,1\n")).toThrow(/"feasible"/);
    expect(() => renderBifurcationBranch("tau,x_1,feasible,stable\n")).toThrow(SchemaError);
  });
});

describe("ratio figures", () => {
  it("draws one error bar and mean per group", () => {
    const svg = renderRatio(summaryN, "n");
    expect(svg.match(/class="error-bar"/g)).toHaveLength(3);
    expect(svg.match(/class="group-mean"/g)).toHaveLength(3);
    expect(svg).toContain('data-group="20"');
    expect(svg).toContain('data-group="100"');
    expect(svg).toContain('class="unit-ratio-baseline"');
  });

  it("handles the p-grouped summary", () => {
    const svg = renderRatio(summaryP, "p");
    expect(svg.match(/class="group-mean"/g)).toHaveLength(4);
    expect(svg).toContain('data-group="0.1"');
  });

  it("dispatches through renderFigure", () => {
    expect(renderFigure("ratio_vs_n", summaryN)).toBe(renderRatio(summaryN, "n"));
  });

  it("rejects a summary missing its group column", () => {
    expect(() => renderRatio(summaryN, "p")).toThrow(/"p"/);
  });
});
