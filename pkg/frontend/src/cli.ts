/**
 * Plot runner:
 *
 *   node dist/cli.js learning-curves --out fig.svg [--band 0.3] [--column cost]
 *                    --series label=path/to/curves.csv [--series ...]
 *   node dist/cli.js interval-minima --out fig.svg --series label=summary.json ...
 *   node dist/cli.js resource-sweep  --out fig.svg --series label=sweep.csv ...
 */
import { plotIntervalMinima, plotLearningCurves, plotResourceSweep } from './plots.js';

interface Parsed {
  command: string;
  out: string;
  band?: number;
  column?: string;
  title?: string;
  inputs: string[];
  labels: string[];
}

export function parseArgs(argv: string[]): Parsed {
  const [command, ...rest] = argv;
  if (!command) throw new Error('usage: <learning-curves|interval-minima|resource-sweep> ...');
  const parsed: Parsed = { command, out: '', inputs: [], labels: [] };
  for (let i = 0; i < rest.length; i++) {
    const arg = rest[i];
    const next = () => {
      if (i + 1 >= rest.length) throw new Error(`missing value after ${arg}`);
      return rest[++i];
    };
    if (arg === '--out') parsed.out = next();
    else if (arg === '--band') parsed.band = Number(next());
    else if (arg === '--column') parsed.column = next();
    else if (arg === '--title') parsed.title = next();
    else if (arg === '--series') {
      const spec = next();
      const eq = spec.indexOf('=');
      if (eq < 1) throw new Error(`--series expects label=path, got '${spec}'`);
      parsed.labels.push(spec.slice(0, eq));
      parsed.inputs.push(spec.slice(eq + 1));
    } else throw new Error(`unknown argument '${arg}'`);
  }
  if (!parsed.out) throw new Error('--out is required');
  if (parsed.inputs.length === 0) throw new Error('at least one --series label=path is required');
  return parsed;
}

export function main(argv: string[]): number {
  let parsed: Parsed;
  try {
    parsed = parseArgs(argv);
    const common = {
      inputs: parsed.inputs,
      labels: parsed.labels,
      output: parsed.out,
      bandMultiplier: parsed.band,
      title: parsed.title,
    };
    if (parsed.command === 'learning-curves') {
      plotLearningCurves({ ...common, column: parsed.column as 'cost' | 'true_cost' | undefined });
    } else if (parsed.command === 'interval-minima') {
      plotIntervalMinima(common);
    } else if (parsed.command === 'resource-sweep') {
      plotResourceSweep({ ...common, column: parsed.column as 'mean_lowest_cost' | undefined });
    } else {
      throw new Error(`unknown command '${parsed.command}'`);
    }
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 2;
  }
  console.log(`wrote ${parsed.out}`);
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith('cli.js')) {
  process.exit(main(process.argv.slice(2)));
}
