/**
 * Gaussian kernel density estimation for the distance samples, with the
 * kernel mass reflected at 0 so nonnegative data keeps a nonzero density
 * at the boundary instead of leaking half its mass below it.
 */

const SQRT_2PI = Math.sqrt(2 * Math.PI);

function sampleSd(xs: number[]): number {
  const n = xs.length;
  let sum = 0;
  for (const x of xs) sum += x;
  const mean = sum / n;
  let ss = 0;
  for (const x of xs) ss += (x - mean) * (x - mean);
  return Math.sqrt(ss / (n - 1));
}

// linear-interpolation quantile of a sorted array
function quantileSorted(sorted: number[], p: number): number {
  const pos = p * (sorted.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.ceil(pos);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo);
}

/** Silverman's rule: 0.9 * min(sd, iqr/1.34) * n^(-1/5). */
export function silvermanBandwidth(xs: number[]): number {
  if (xs.length < 2) {
    throw new Error(`need at least 2 samples for a bandwidth, got ${xs.length}`);
  }
  const sorted = [...xs].sort((a, b) => a - b);
  const sd = sampleSd(xs);
  const iqr = quantileSorted(sorted, 0.75) - quantileSorted(sorted, 0.25);
  const spreads = [sd, iqr / 1.34].filter((s) => s > 0);
  if (spreads.length === 0) {
    throw new Error("samples have zero spread, cannot estimate a density");
  }
  return 0.9 * Math.min(...spreads) * Math.pow(xs.length, -1 / 5);
}

/**
 * Density function of a reflected-at-zero Gaussian KDE. The returned
 * function is 0 for x < 0 and integrates to 1 over [0, inf) when the
 * samples are nonnegative.
 */
export function reflectedKde(xs: number[], bandwidth?: number): (x: number) => number {
  const h = bandwidth ?? silvermanBandwidth(xs);
  const norm = 1 / (xs.length * h * SQRT_2PI);
  return (x: number) => {
    if (x < 0) return 0;
    let sum = 0;
    for (const xi of xs) {
      const u = (x - xi) / h;
      const v = (x + xi) / h;
      sum += Math.exp(-0.5 * u * u) + Math.exp(-0.5 * v * v);
    }
    return norm * sum;
  };
}

export interface Curve {
  xs: number[];
  ys: number[];
}

export function evaluateOnGrid(
  density: (x: number) => number,
  lo: number,
  hi: number,
  points: number,
): Curve {
  const xs: number[] = [];
  const ys: number[] = [];
  for (let i = 0; i < points; i++) {
    const x = lo + ((hi - lo) * i) / (points - 1);
    xs.push(x);
    ys.push(density(x));
  }
  return { xs, ys };
}

/** Location of the curve's highest point. */
export function modeOf(curve: Curve): number {
  let best = 0;
  for (let i = 1; i < curve.ys.length; i++) {
    if (curve.ys[i] > curve.ys[best]) best = i;
  }
  return curve.xs[best];
}
