/**
 * Figure builders over the artifact schemas:
 *
 * - bifurcation_branch: branch CSV (tau, x_1..x_n, feasible, stable) to
 *   one curve per species plus a vertical marker at the first bifurcation.
 * - ratio_vs_n / ratio_vs_p: summary CSV (n|p, mean_ratio, ci95_low,
 *   ci95_high, count) to a mean-with-error-bars plot.
 *
 * Output is a self-contained SVG string; rendering is a pure function of
 * the input bytes.
 */

import { SchemaError, Table, columnIndex, numericColumn, parseCsv } from "./csv.js";
import { PALETTE, axes, document, el, fmt, makeFrame, px } from "./svg.js";

export type FigureKind = "bifurcation_branch" | "ratio_vs_n" | "ratio_vs_p";

export interface BranchReport {
  tau_c: number;
  kind?: string;
}

function speciesColumns(table: Table): string[] {
  const names: string[] = [];
  for (let i = 1; ; i++) {
    const name = `x_${i}`;
    if (!table.header.includes(name)) {
      break;
    }
    names.push(name);
  }
  if (names.length === 0) {
    throw new SchemaError(`missing column "x_1" (header: ${table.header.join(",")})`);
  }
  return names;
}

/** First grid point where the feasible+stable run ends; NaN when it never does. */
function flagTransition(taus: number[], feasible: number[], stable: number[]): number {
  for (let i = 0; i < taus.length; i++) {
    if (!(feasible[i]! > 0 && stable[i]! > 0)) {
      return taus[i]!;
    }
  }
  return NaN;
}

export function renderBifurcationBranch(csvText: string, report?: BranchReport): string {
  const table = parseCsv(csvText);
  const taus = numericColumn(table, "tau");
  const feasible = numericColumn(table, "feasible");
  const stable = numericColumn(table, "stable");
  const names = speciesColumns(table);
  const series = names.map((n) => numericColumn(table, n));

  const finite = series.flat().filter((v) => Number.isFinite(v));
  const yMax = Math.max(1, ...finite);
  const frame = makeFrame([Math.min(...taus), Math.max(...taus)], [0, yMax * 1.05]);
  const parts: string[] = [axes(frame, "interaction strength tau", "equilibrium abundance")];

  const tauC = report?.tau_c ?? flagTransition(taus, feasible, stable);
  if (Number.isFinite(tauC)) {
    const xp = frame.x(tauC);
    parts.push(
      el("line", {
        x1: px(xp), y1: px(frame.y.range[1]), x2: px(xp), y2: px(frame.y.range[0]),
        stroke: "#555", "stroke-dasharray": "5 4", "stroke-width": 1,
        class: "tau-c-marker", "data-tau-c": fmt(tauC),
      }),
    );
    parts.push(
      el(
        "text",
        { x: px(xp + 4), y: px(frame.y.range[1] + 12), "font-size": 12, fill: "#555" },
        `tau_c = ${fmt(tauC)}`,
      ),
    );
  }

  names.forEach((name, idx) => {
    const pts: string[] = [];
    series[idx]!.forEach((v, i) => {
      if (Number.isFinite(v)) {
        pts.push(`${px(frame.x(taus[i]!))},${px(frame.y(v))}`);
      }
    });
    parts.push(
      el("polyline", {
        points: pts.join(" "),
        fill: "none",
        stroke: PALETTE[idx % PALETTE.length]!,
        "stroke-width": 1.6,
        class: "species-curve",
        "data-series": name,
      }),
    );
  });
  return document(frame, parts.join("\n"));
}

export function renderRatio(csvText: string, groupColumn: "n" | "p"): string {
  const table = parseCsv(csvText);
  columnIndex(table, groupColumn);
  const groups = numericColumn(table, groupColumn);
  const means = numericColumn(table, "mean_ratio");
  const lows = numericColumn(table, "ci95_low");
  const highs = numericColumn(table, "ci95_high");

  const xPad = (Math.max(...groups) - Math.min(...groups) || 1) * 0.08;
  const yLo = Math.min(1, ...lows);
  const yHi = Math.max(...highs);
  const yPad = (yHi - yLo || 1) * 0.1;
  const frame = makeFrame(
    [Math.min(...groups) - xPad, Math.max(...groups) + xPad],
    [yLo - yPad, yHi + yPad],
  );
  const xLabel = groupColumn === "n" ? "network size n" : "connectivity p";
  const parts: string[] = [axes(frame, xLabel, "tau_c / omega")];

  const base = frame.y(1);
  parts.push(
    el("line", {
      x1: px(frame.x.range[0]), y1: px(base), x2: px(frame.x.range[1]), y2: px(base),
      stroke: "#999", "stroke-dasharray": "3 4", class: "unit-ratio-baseline",
    }),
  );

  groups.forEach((g, i) => {
    const xp = frame.x(g);
    const cap = 5;
    parts.push(
      el("line", {
        x1: px(xp), y1: px(frame.y(lows[i]!)), x2: px(xp), y2: px(frame.y(highs[i]!)),
        stroke: "#1f77b4", "stroke-width": 1.4, class: "error-bar", "data-group": fmt(g),
      }),
    );
    for (const v of [lows[i]!, highs[i]!]) {
      parts.push(
        el("line", {
          x1: px(xp - cap), y1: px(frame.y(v)), x2: px(xp + cap), y2: px(frame.y(v)),
          stroke: "#1f77b4", "stroke-width": 1.4,
        }),
      );
    }
    parts.push(
      el("circle", {
        cx: px(xp), cy: px(frame.y(means[i]!)), r: 3.5, fill: "#1f77b4",
        class: "group-mean", "data-group": fmt(g), "data-mean": fmt(means[i]!),
      }),
    );
  });
  return document(frame, parts.join("\n"));
}

export function renderFigure(kind: FigureKind, inputText: string, report?: BranchReport): string {
  switch (kind) {
    case "bifurcation_branch":
      return renderBifurcationBranch(inputText, report);
    case "ratio_vs_n":
      return renderRatio(inputText, "n");
    case "ratio_vs_p":
      return renderRatio(inputText, "p");
    default: {
      const never: never = kind;
      throw new SchemaError(`unknown figure kind ${String(never)}`);
    }
  }
}
