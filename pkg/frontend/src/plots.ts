/**
 * The three figure styles produced from run logs:
 *
 * - learning curves: per-series mean cost vs evaluation index with a shaded
 *   mean +- multiplier * std band across instances;
 * - resource sweep: copies (log axis) vs achieved cost per method;
 * - interval minima: per-interval minimum cost with the same band style.
 *
 * Rendering is deterministic: series keep their given order, colors are
 * assigned by that order, and inputs are never modified.
 */
import { writeFileSync } from 'fs';

import { readCurves, readIntervalMinima, readSweep } from './csv.js';
import { BandPoint, crossInstanceBand, intervalMinimaBand, thin } from './stats.js';
import { DEFAULT_FRAME, SvgScene, linearScale, logScale, seriesColor } from './svg.js';

export interface CurveSpec {
  inputs: string[];
  labels: string[];
  bandMultiplier?: number;   // defaults to 0.3
  output: string;
  column?: 'cost' | 'true_cost';
  title?: string;
  maxPoints?: number;
}

export interface SweepSpec {
  inputs: string[];
  labels: string[];
  output: string;
  title?: string;
  column?: 'mean_lowest_cost' | 'mean_final_cost';
}

function checkSpec(inputs: string[], labels: string[], bandMultiplier: number): void {
  if (inputs.length === 0) throw new Error('need at least one input file');
  if (inputs.length !== labels.length) throw new Error('one label per input file is required');
  if (bandMultiplier < 0) throw new Error('band multiplier must be >= 0');
}

export function computeCurveBands(spec: CurveSpec): BandPoint[][] {
  const multiplier = spec.bandMultiplier ?? 0.3;
  checkSpec(spec.inputs, spec.labels, multiplier);
  const column = spec.column ?? 'cost';
  return spec.inputs.map((path) => crossInstanceBand(readCurves(path), column, multiplier));
}

export function plotLearningCurves(spec: CurveSpec): string {
  const bands = computeCurveBands(spec).map((b) => thin(b, spec.maxPoints ?? 2000));
  const scene = renderBands(bands, spec.labels, 'evaluation', spec.column ?? 'cost',
    spec.title ?? 'Learning curves');
  writeFileSync(spec.output, scene);
  return spec.output;
}

export function plotIntervalMinima(spec: CurveSpec): string {
  const multiplier = spec.bandMultiplier ?? 0.3;
  checkSpec(spec.inputs, spec.labels, multiplier);
  const bands = spec.inputs.map((path) => intervalMinimaBand(readIntervalMinima(path), multiplier));
  const scene = renderBands(bands, spec.labels, 'interval', 'interval-minimum cost',
    spec.title ?? 'Interval minima');
  writeFileSync(spec.output, scene);
  return spec.output;
}

function renderBands(
  bands: BandPoint[][],
  labels: string[],
  xLabel: string,
  yLabel: string,
  title: string,
): string {
  const frame = DEFAULT_FRAME;
  const all = bands.flat();
  const xs = all.map((p) => p.x);
  const lows = all.map((p) => p.lower);
  const highs = all.map((p) => p.upper);
  const x = linearScale(Math.min(...xs), Math.max(...xs), frame.left, frame.width - frame.right, xLabel);
  const pad = 0.05 * (Math.max(...highs) - Math.min(...lows) || 1);
  const y = linearScale(
    Math.min(...lows) - pad, Math.max(...highs) + pad,
    frame.height - frame.bottom, frame.top, yLabel,
  );
  const scene = new SvgScene(frame, title);
  scene.axes(x, y);
  bands.forEach((band, i) => {
    const color = seriesColor(i);
    scene.band(
      band.map((p) => ({ px: x.toPixel(p.x), upper: y.toPixel(p.upper), lower: y.toPixel(p.lower) })),
      color,
    );
    scene.line(band.map((p) => ({ px: x.toPixel(p.x), py: y.toPixel(p.mean) })), color);
  });
  scene.legend(labels, labels.map((_, i) => seriesColor(i)));
  return scene.render();
}

export function plotResourceSweep(spec: SweepSpec): string {
  checkSpec(spec.inputs, spec.labels, 0);
  const column = spec.column ?? 'mean_lowest_cost';
  const tables = spec.inputs.map((path) => readSweep(path));
  const frame = DEFAULT_FRAME;
  const allRows = tables.flat();
  if (allRows.length === 0) throw new Error('sweep inputs contain no rows');
  const costs = allRows.map((r) => r[column]);
  const copies = allRows.map((r) => r.copies);
  const x = linearScale(
    Math.min(0, Math.min(...costs)), Math.max(...costs) * 1.05,
    frame.left, frame.width - frame.right, 'achieved cost',
  );
  const y = logScale(
    Math.min(...copies) / 2, Math.max(...copies) * 2,
    frame.height - frame.bottom, frame.top, 'total copies',
  );
  const scene = new SvgScene(frame, spec.title ?? 'Copies needed per achieved cost');
  scene.axes(x, y);
  const labels: string[] = [];
  const colors: string[] = [];
  tables.forEach((rows, t) => {
    const methods = [...new Set(rows.map((r) => r.method))];
    methods.forEach((method) => {
      const color = seriesColor(labels.length);
      const points = rows
        .filter((r) => r.method === method)
        .sort((a, b) => a[column] - b[column])
        .map((r) => ({ px: x.toPixel(r[column]), py: y.toPixel(r.copies) }));
      scene.line(points, color, '4 3');
      points.forEach((p) => scene.marker(p.px, p.py, color));
      labels.push(spec.labels.length > 1 ? `${spec.labels[t]}: ${method}` : method);
      colors.push(color);
    });
  });
  scene.legend(labels, colors);
  const rendered = scene.render();
  writeFileSync(spec.output, rendered);
  return spec.output;
}
