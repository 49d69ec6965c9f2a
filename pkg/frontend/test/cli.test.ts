import { execFileSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

const ROOT = join(__dirname, "..");
const CLI = join(ROOT, "dist", "cli.js");
const FIXTURES = join(ROOT, "fixtures");

function run(...args: string[]): { code: number; stderr: string } {
  try {
    execFileSync("node", [CLI, ...args], { stdio: ["ignore", "pipe", "pipe"] });
    return { code: 0, stderr: "" };
  } catch (e) {
    const err = e as { status: number; stderr: Buffer };
    return { code: err.status, stderr: err.stderr.toString() };
  }
}

describe("glvnet-render CLI", () => {
  const dir = mkdtempSync(join(tmpdir(), "glvnet-render-"));

  it("renders the star(4) branch figure deterministically", () => {
    const out1 = join(dir, "branch1.svg");
    const out2 = join(dir, "branch2.svg");
    for (const out of [out1, out2]) {
      const res = run(
        "--kind", "bifurcation_branch",
        "--in", join(FIXTURES, "star4_branch.csv"),
        "--report", join(FIXTURES, "star4_report.json"),
        "--out", out,
      );
      expect(res.code).toBe(0);
    }
    const a = readFileSync(out1, "utf8");
    expect(a).toBe(readFileSync(out2, "utf8"));
    expect(a).toContain("<svg");
    expect(a).toContain('data-series="x_1"');
  });

  it("renders the ratio-vs-n figure deterministically", () => {
    const out1 = join(dir, "ratio1.svg");
    const out2 = join(dir, "ratio2.svg");
    for (const out of [out1, out2]) {
      const res = run(
        "--kind", "ratio_vs_n",
        "--in", join(FIXTURES, "summary_by_n.csv"),
        "--out", out,
      );
      expect(res.code).toBe(0);
    }
    expect(readFileSync(out1, "utf8")).toBe(readFileSync(out2, "utf8"));
    expect(readFileSync(out1, "utf8")).toContain('class="error-bar"');
  });

  it("exits 1 on schema errors and writes nothing", () => {
    const bad = join(dir, "empty.csv");
    execFileSync("node", ["-e", `require("fs").writeFileSync(${JSON.stringify(bad)}, "tau,x_1,feasible,stable\\n")`]);
    const out = join(dir, "never.svg");
    const res = run("--kind", "bifurcation_branch", "--in", bad, "--out", out);
    expect(res.code).toBe(1);
    expect(res.stderr).toContain("error");
    expect(existsSync(out)).toBe(false);
  });

  it("exits 1 on a missing input file", () => {
    const res = run("--kind", "ratio_vs_n", "--in", join(dir, "nope.csv"), "--out", join(dir, "x.svg"));
    expect(res.code).toBe(1);
  });

  it("exits 2 on usage errors", () => {
    expect(run("--kind", "nope", "--in", "a", "--out", "b").code).toBe(2);
    expect(run("--in", "a").code).toBe(2);
    expect(run("--mystery", "1", "--kind", "ratio_vs_n", "--in", "a", "--out", "b").code).toBe(2);
  });
});
