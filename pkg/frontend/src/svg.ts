/**
 * Deterministic SVG scatter plots: fixed viewport, golden-angle palette,
 * nice-number ticks. Same input, same bytes.
 */

export const STYLE_VERSION = "1";

export interface Point {
  x: number;
  y: number;
}

export interface Series {
  label: string;
  points: Point[];
}

export interface ScatterOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  width?: number;
  height?: number;
}

const MARGIN = { top: 34, right: 16, bottom: 44, left: 64 };

export function seriesColor(index: number): string {
  const hue = (index * 137.508) % 360;
  return `hsl(${hue.toFixed(1)},62%,42%)`;
}

function niceNumber(range: number, round: boolean): number {
  const exponent = Math.floor(Math.log10(range));
  const fraction = range / 10 ** exponent;
  let nice: number;
  if (round) {
    nice = fraction < 1.5 ? 1 : fraction < 3 ? 2 : fraction < 7 ? 5 : 10;
  } else {
    nice = fraction <= 1 ? 1 : fraction <= 2 ? 2 : fraction <= 5 ? 5 : 10;
  }
  return nice * 10 ** exponent;
}

export function ticks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const step = niceNumber((hi - lo) / (target - 1), true);
  const kLo = Math.ceil(lo / step - 1e-9);
  const kHi = Math.floor(hi / step + 1e-9);
  const out: number[] = [];
  for (let k = kLo; k <= kHi; k++) {
    out.push(k === 0 ? 0 : k * step);
  }
  return out;
}

function formatTick(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1e4 || magnitude < 1e-3) return value.toExponential(1);
  return String(parseFloat(value.toPrecision(6)));
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo === Infinity) return [0, 1]; // no data: unit box
  if (lo === hi) return [lo - 0.5, hi + 0.5];
  const pad = 0.04 * (hi - lo);
  return [lo - pad, hi + pad];
}

const esc = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export function renderScatter(series: Series[], options: ScatterOptions): string {
  const width = options.width ?? 720;
  const height = options.height ?? 460;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const ys = series.flatMap((s) => s.points.map((p) => p.y));
  const [x0, x1] = extent(xs);
  const [y0, y1] = extent(ys);
  const sx = (x: number) => MARGIN.left + ((x - x0) / (x1 - x0)) * plotW;
  const sy = (y: number) => MARGIN.top + plotH - ((y - y0) / (y1 - y0)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" data-style-version="${STYLE_VERSION}">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<text x="${width / 2}" y="20" text-anchor="middle" ` +
      `font-family="sans-serif" font-size="14">${esc(options.title)}</text>`,
  );

  for (const t of ticks(x0, x1)) {
    const px = sx(t).toFixed(2);
    parts.push(
      `<line x1="${px}" y1="${MARGIN.top}" x2="${px}" y2="${MARGIN.top + plotH}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${px}" y="${MARGIN.top + plotH + 18}" text-anchor="middle" ` +
        `font-family="sans-serif" font-size="11">${formatTick(t)}</text>`,
    );
  }
  for (const t of ticks(y0, y1)) {
    const py = sy(t).toFixed(2);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${py}" x2="${MARGIN.left + plotW}" y2="${py}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${py}" text-anchor="end" dominant-baseline="middle" ` +
        `font-family="sans-serif" font-size="11">${formatTick(t)}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="#333333"/>`,
  );
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${height - 8}" text-anchor="middle" ` +
      `font-family="sans-serif" font-size="12">${esc(options.xLabel)}</text>`,
  );
  parts.push(
    `<text x="16" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
      `font-family="sans-serif" font-size="12" ` +
      `transform="rotate(-90 16 ${MARGIN.top + plotH / 2})">${esc(options.yLabel)}</text>`,
  );

  series.forEach((s, i) => {
    const color = seriesColor(i);
    const circles = s.points
      .map((p) => `<circle cx="${sx(p.x).toFixed(2)}" cy="${sy(p.y).toFixed(2)}" r="1.6"/>`)
      .join("");
    parts.push(`<g fill="${color}" data-series="${esc(s.label)}">${circles}</g>`);
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
