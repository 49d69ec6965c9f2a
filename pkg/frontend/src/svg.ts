/**
 * Deterministic SVG assembly: linear scales, 1-2-5 ticks, and element
 * helpers. No timestamps, no randomness, fixed float formatting, so the
 * same input bytes always produce the same output bytes.
 */

export interface Scale {
  (v: number): number;
  invert(px: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.invert = (px: number) => d0 + ((px - r0) / (r1 - r0 || 1)) * span;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

/** Round ticks covering [lo, hi] with a 1/2/5 step, at most `count + 1`. */
export function niceTicks(lo: number, hi: number, count = 6): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const rawStep = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const mult of [1, 2, 5, 10]) {
    if (mag * mult >= rawStep) {
      step = mag * mult;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export function fmt(v: number): string {
  return Number.isInteger(v) ? String(v) : String(Number(v.toPrecision(6)));
}

export function px(v: number): string {
  return v.toFixed(2);
}

export function el(tag: string, attrs: Record<string, string | number>, body = ""): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${v}"`)
    .join(" ");
  return body === "" && tag !== "text"
    ? `<${tag} ${parts}/>`
    : `<${tag} ${parts}>${body}</${tag}>`;
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#e377c2",
  "#17becf",
  "#bcbd22",
  "#7f7f7f",
];

export interface Frame {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
  x: Scale;
  y: Scale;
}

export function makeFrame(
  xDomain: [number, number],
  yDomain: [number, number],
  width = 640,
  height = 420,
): Frame {
  const margin = { top: 24, right: 20, bottom: 46, left: 58 };
  const x = linearScale(xDomain, [margin.left, width - margin.right]);
  const y = linearScale(yDomain, [height - margin.bottom, margin.top]);
  return { width, height, margin, x, y };
}

export function axes(frame: Frame, xLabel: string, yLabel: string): string {
  const { x, y, width, height, margin } = frame;
  const parts: string[] = [];
  const bottom = height - margin.bottom;
  parts.push(
    el("line", {
      x1: px(margin.left), y1: px(bottom), x2: px(width - margin.right), y2: px(bottom),
      stroke: "#333", "stroke-width": 1,
    }),
  );
  parts.push(
    el("line", {
      x1: px(margin.left), y1: px(margin.top), x2: px(margin.left), y2: px(bottom),
      stroke: "#333", "stroke-width": 1,
    }),
  );
  for (const t of niceTicks(x.domain[0], x.domain[1])) {
    const xp = x(t);
    parts.push(el("line", { x1: px(xp), y1: px(bottom), x2: px(xp), y2: px(bottom + 5), stroke: "#333" }));
    parts.push(
      el("text", { x: px(xp), y: px(bottom + 20), "text-anchor": "middle", "font-size": 12 }, fmt(t)),
    );
  }
  for (const t of niceTicks(y.domain[0], y.domain[1])) {
    const yp = y(t);
    parts.push(el("line", { x1: px(margin.left - 5), y1: px(yp), x2: px(margin.left), y2: px(yp), stroke: "#333" }));
    parts.push(
      el(
        "text",
        { x: px(margin.left - 9), y: px(yp + 4), "text-anchor": "end", "font-size": 12 },
        fmt(t),
      ),
    );
  }
  parts.push(
    el(
      "text",
      { x: px((margin.left + width - margin.right) / 2), y: px(height - 10), "text-anchor": "middle", "font-size": 13 },
      xLabel,
    ),
  );
  parts.push(
    el(
      "text",
      {
        x: 16, y: px((margin.top + bottom) / 2), "text-anchor": "middle", "font-size": 13,
        transform: `rotate(-90 16 ${px((margin.top + bottom) / 2)})`,
      },
      yLabel,
    ),
  );
  return parts.join("\n");
}

export function document(frame: Frame, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${frame.width} ${frame.height}" font-family="sans-serif">`,
    el("rect", { x: 0, y: 0, width: frame.width, height: frame.height, fill: "#ffffff" }),
    body,
    "</svg>",
    "",
  ].join("\n");
}
