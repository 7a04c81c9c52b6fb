/**
 * Readers for the run-log contract emitted by the shadowopt CLI:
 *
 *   curves.csv   — instance,evaluation,cost,cumulative_copies,true_cost
 *   sweep.csv    — method,budget,copies,mean_lowest_cost,mean_final_cost
 *   summary.json — per-instance records incl. interval_minima arrays
 *
 * Values are plain (unquoted) CSV as documented by the producer.
 */
import { readFileSync } from 'fs';

export interface CurveRow {
  instance: number;
  evaluation: number;
  cost: number;
  cumulative_copies: number;
  true_cost: number;
}

export interface SweepRow {
  method: string;
  budget: number;
  copies: number;
  mean_lowest_cost: number;
  mean_final_cost: number;
}

export class MalformedCsvError extends Error {}

function parseTable(path: string, requiredColumns: string[]): Record<string, string>[] {
  const text = readFileSync(path, 'utf8');
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length < 1) throw new MalformedCsvError(`${path}: empty file`);
  const header = lines[0].split(',');
  for (const col of requiredColumns) {
    if (!header.includes(col)) {
      throw new MalformedCsvError(`${path}: missing column '${col}' in header '${lines[0]}'`);
    }
  }
  return lines.slice(1).map((line, i) => {
    const parts = line.split(',');
    if (parts.length !== header.length) {
      throw new MalformedCsvError(`${path}: row ${i + 2} has ${parts.length} fields, expected ${header.length}`);
    }
    const row: Record<string, string> = {};
    header.forEach((name, j) => (row[name] = parts[j]));
    return row;
  });
}

function asNumber(path: string, field: string, raw: string): number {
  const value = Number(raw);
  if (!Number.isFinite(value)) {
    throw new MalformedCsvError(`${path}: field '${field}' is not a number: '${raw}'`);
  }
  return value;
}

export function readCurves(path: string): CurveRow[] {
  const cols = ['instance', 'evaluation', 'cost', 'cumulative_copies', 'true_cost'];
  return parseTable(path, cols).map((r) => ({
    instance: asNumber(path, 'instance', r.instance),
    evaluation: asNumber(path, 'evaluation', r.evaluation),
    cost: asNumber(path, 'cost', r.cost),
    cumulative_copies: asNumber(path, 'cumulative_copies', r.cumulative_copies),
    true_cost: asNumber(path, 'true_cost', r.true_cost),
  }));
}

export function readSweep(path: string): SweepRow[] {
  const cols = ['method', 'budget', 'copies', 'mean_lowest_cost', 'mean_final_cost'];
  return parseTable(path, cols).map((r) => ({
    method: r.method,
    budget: asNumber(path, 'budget', r.budget),
    copies: asNumber(path, 'copies', r.copies),
    mean_lowest_cost: asNumber(path, 'mean_lowest_cost', r.mean_lowest_cost),
    mean_final_cost: asNumber(path, 'mean_final_cost', r.mean_final_cost),
  }));
}

export function readIntervalMinima(summaryPath: string): number[][] {
  const data = JSON.parse(readFileSync(summaryPath, 'utf8'));
  if (!Array.isArray(data.instances)) {
    throw new MalformedCsvError(`${summaryPath}: no instances array in summary`);
  }
  return data.instances.map((inst: { interval_minima: number[] }) => inst.interval_minima);
}
