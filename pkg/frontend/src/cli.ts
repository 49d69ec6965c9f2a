/**
 * glvnet-render: turn glvnet CSV/JSON artifacts into SVG figures.
 *
 *   render --kind bifurcation_branch --in branch.csv [--report report.json] --out fig.svg
 *   render --kind ratio_vs_n --in summary.csv --out fig.svg
 *   render --kind ratio_vs_p --in summary.csv --out fig.svg
 *
 * Exit codes: 0 success, 1 input/schema error (no file written), 2 usage.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { resolve } from "node:path";
import { fileURLToPath } from "node:url";
import { BranchReport, FigureKind, renderFigure } from "./figures.js";

const KINDS: FigureKind[] = ["bifurcation_branch", "ratio_vs_n", "ratio_vs_p"];
const USAGE =
  "usage: glvnet-render --kind bifurcation_branch|ratio_vs_n|ratio_vs_p " +
  "--in FILE [--report FILE] --out FILE";

function parseArgs(argv: string[]): Map<string, string> {
  const out = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag || !flag.startsWith("--") || value === undefined) {
      throw new UsageError(`bad argument near ${flag ?? "<end>"}`);
    }
    out.set(flag.slice(2), value);
  }
  return out;
}

class UsageError extends Error {}

export function main(argv: string[]): number {
  let args: Map<string, string>;
  try {
    args = parseArgs(argv);
    for (const key of args.keys()) {
      if (!["kind", "in", "report", "out"].includes(key)) {
        throw new UsageError(`unknown flag --${key}`);
      }
    }
    if (!args.has("kind") || !args.has("in") || !args.has("out")) {
      throw new UsageError("need --kind, --in and --out");
    }
    if (!KINDS.includes(args.get("kind") as FigureKind)) {
      throw new UsageError(`--kind must be one of ${KINDS.join("|")}`);
    }
  } catch (e) {
    if (e instanceof UsageError) {
      console.error(`glvnet-render: ${e.message}\n${USAGE}`);
      return 2;
    }
    throw e;
  }

  try {
    const kind = args.get("kind") as FigureKind;
    const inputText = readFileSync(args.get("in")!, "utf8");
    let report: BranchReport | undefined;
    const reportPath = args.get("report");
    if (reportPath !== undefined) {
      const payload = JSON.parse(readFileSync(reportPath, "utf8")) as Record<string, unknown>;
      if (typeof payload["tau_c"] !== "number") {
        throw new Error(`${reportPath}: no numeric tau_c field`);
      }
      report = { tau_c: payload["tau_c"], kind: payload["kind"] as string | undefined };
    }
    const svg = renderFigure(kind, inputText, report);
    writeFileSync(args.get("out")!, svg, "utf8");
    return 0;
  } catch (e) {
    console.error(`glvnet-render: error: ${e instanceof Error ? e.message : String(e)}`);
    return 1;
  }
}

const entryPath = process.argv[1];
if (entryPath !== undefined && fileURLToPath(import.meta.url) === resolve(entryPath)) {
  process.exit(main(process.argv.slice(2)));
}
