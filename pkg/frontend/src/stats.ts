/** Across-instance reductions behind the shaded-band plots. */
import { CurveRow } from './csv.js';

export interface BandPoint {
  x: number;
  mean: number;
  lower: number;
  upper: number;
}

/** Population mean and standard deviation (ddof = 0). */
export function meanStd(values: number[]): { mean: number; std: number } {
  const mean = values.reduce((a, b) => a + b, 0) / values.length;
  const variance = values.reduce((a, b) => a + (b - mean) ** 2, 0) / values.length;
  return { mean, std: Math.sqrt(variance) };
}

/**
 * Per-x mean with a band of mean +- multiplier * std across instances.
 * x values are sorted ascending; instances missing an x are simply absent
 * from that x's reduction.
 */
export function crossInstanceBand(
  rows: CurveRow[],
  column: 'cost' | 'true_cost',
  multiplier: number,
): BandPoint[] {
  const byX = new Map<number, number[]>();
  for (const row of rows) {
    const bucket = byX.get(row.evaluation);
    if (bucket === undefined) byX.set(row.evaluation, [row[column]]);
    else bucket.push(row[column]);
  }
  return [...byX.entries()]
    .sort((a, b) => a[0] - b[0])
    .map(([x, values]) => {
      const { mean, std } = meanStd(values);
      return { x, mean, lower: mean - multiplier * std, upper: mean + multiplier * std };
    });
}

/** Uniform thinning to at most maxPoints, always keeping the endpoints. */
export function thin<T>(points: T[], maxPoints: number): T[] {
  if (points.length <= maxPoints) return points;
  const out: T[] = [];
  const step = (points.length - 1) / (maxPoints - 1);
  for (let i = 0; i < maxPoints; i++) out.push(points[Math.round(i * step)]);
  return out;
}

/** Band over interval-minimum series (one series per instance). */
export function intervalMinimaBand(series: number[][], multiplier: number): BandPoint[] {
  const length = Math.max(...series.map((s) => s.length));
  const points: BandPoint[] = [];
  for (let k = 0; k < length; k++) {
    const values = series.filter((s) => k < s.length).map((s) => s[k]);
    const { mean, std } = meanStd(values);
    points.push({ x: k + 1, mean, lower: mean - multiplier * std, upper: mean + multiplier * std });
  }
  return points;
}
