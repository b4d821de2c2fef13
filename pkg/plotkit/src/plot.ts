/**
 * The figure: prior and posterior distance densities overlaid on one
 * axis pair, so concentration toward 0 (or away from it) is visible at
 * a glance.
 */

import { evaluateOnGrid, reflectedKde, Curve } from "./kde.js";
import { SamplePair } from "./csv.js";
import { escapeXml, polylinePath, px, tickLabel } from "./svg.js";

export interface PlotOptions {
  title?: string;
  width?: number;
  height?: number;
}

const MARGIN = { top: 40, right: 24, bottom: 52, left: 64 };
const GRID_POINTS = 401;
const PRIOR_COLOR = "#4477aa";
const POSTERIOR_COLOR = "#ee6677";

export interface DensityFigure {
  prior: Curve;
  posterior: Curve;
}

/** Both densities on one shared grid covering the pooled sample range. */
export function densityCurves(pair: SamplePair): DensityFigure {
  const hi = Math.min(1, 1.1 * Math.max(...pair.prior, ...pair.posterior));
  const grid = hi > 0 ? hi : 1;
  return {
    prior: evaluateOnGrid(reflectedKde(pair.prior), 0, grid, GRID_POINTS),
    posterior: evaluateOnGrid(reflectedKde(pair.posterior), 0, grid, GRID_POINTS),
  };
}

function ticks(hi: number, count: number): number[] {
  const out: number[] = [];
  for (let i = 0; i < count; i++) out.push((hi * i) / (count - 1));
  return out;
}

export function plotDensities(pair: SamplePair, options: PlotOptions = {}): string {
  const width = options.width ?? 640;
  const height = options.height ?? 400;
  const { prior, posterior } = densityCurves(pair);

  const xMax = prior.xs[prior.xs.length - 1];
  const yMax = 1.05 * Math.max(...prior.ys, ...posterior.ys);
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const xPix = (x: number) => MARGIN.left + (x / xMax) * plotW;
  const yPix = (y: number) => MARGIN.top + plotH - (y / yMax) * plotH;

  const toPath = (curve: Curve) =>
    polylinePath(curve.xs.map((x, i) => [xPix(x), yPix(curve.ys[i])] as [number, number]));

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);

  if (options.title) {
    parts.push(
      `<text x="${px(width / 2)}" y="22" text-anchor="middle" font-size="14">` +
        `${escapeXml(options.title)}</text>`,
    );
  }

  // axes
  const x0 = MARGIN.left;
  const y0 = MARGIN.top + plotH;
  parts.push(
    `<line x1="${px(x0)}" y1="${px(y0)}" x2="${px(x0 + plotW)}" y2="${px(y0)}" stroke="black"/>`,
  );
  parts.push(
    `<line x1="${px(x0)}" y1="${px(MARGIN.top)}" x2="${px(x0)}" y2="${px(y0)}" stroke="black"/>`,
  );
  for (const t of ticks(xMax, 6)) {
    const x = xPix(t);
    parts.push(`<line x1="${px(x)}" y1="${px(y0)}" x2="${px(x)}" y2="${px(y0 + 4)}" stroke="black"/>`);
    parts.push(
      `<text x="${px(x)}" y="${px(y0 + 18)}" text-anchor="middle">${tickLabel(t)}</text>`,
    );
  }
  for (const t of ticks(yMax, 5)) {
    const y = yPix(t);
    parts.push(`<line x1="${px(x0 - 4)}" y1="${px(y)}" x2="${px(x0)}" y2="${px(y)}" stroke="black"/>`);
    parts.push(
      `<text x="${px(x0 - 8)}" y="${px(y + 4)}" text-anchor="end">${tickLabel(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${px(x0 + plotW / 2)}" y="${px(height - 12)}" text-anchor="middle">distance</text>`,
  );
  parts.push(
    `<text x="16" y="${px(MARGIN.top + plotH / 2)}" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${px(MARGIN.top + plotH / 2)})">density</text>`,
  );

  // curves
  parts.push(
    `<path d="${toPath(prior)}" fill="none" stroke="${PRIOR_COLOR}" stroke-width="1.5"/>`,
  );
  parts.push(
    `<path d="${toPath(posterior)}" fill="none" stroke="${POSTERIOR_COLOR}" stroke-width="1.5"/>`,
  );

  // legend, top right of the plot area
  const lx = x0 + plotW - 110;
  const ly = MARGIN.top + 10;
  const entries: Array<[string, string]> = [
    ["prior", PRIOR_COLOR],
    ["posterior", POSTERIOR_COLOR],
  ];
  entries.forEach(([label, color], i) => {
    const y = ly + 18 * i;
    parts.push(
      `<line x1="${px(lx)}" y1="${px(y)}" x2="${px(lx + 22)}" y2="${px(y)}" ` +
        `stroke="${color}" stroke-width="1.5"/>`,
    );
    parts.push(`<text x="${px(lx + 28)}" y="${px(y + 4)}">${label}</text>`);
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
