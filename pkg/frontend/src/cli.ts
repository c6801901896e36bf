#!/usr/bin/env node
import { realpathSync, writeFileSync } from 'fs';
import { fileURLToPath } from 'url';
import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';

import { CsvError, FigureKind, SCHEMAS, readMany } from './csv.js';
import { renderSummaryTable } from './markdown.js';
import { renderConvergence, renderSuccessCurve } from './svg.js';

export function render(kind: FigureKind, inputs: string[], outPath: string): void {
  const table = readMany(inputs, kind);
  let payload: string;
  if (kind === 'summary-table') {
    if (!outPath.endsWith('.md')) {
      throw new CsvError(`summary-table writes markdown; use a .md path, got ${outPath}`);
    }
    payload = renderSummaryTable(table);
  } else {
    if (outPath.endsWith('.png')) {
      throw new CsvError('png output is not supported in this build; use .svg');
    }
    if (!outPath.endsWith('.svg')) {
      throw new CsvError(`figures are written as SVG; use a .svg path, got ${outPath}`);
    }
    payload = kind === 'success-curve' ? renderSuccessCurve(table) : renderConvergence(table);
  }
  writeFileSync(outPath, payload);
}

export async function main(argv: string[]): Promise<number> {
  const parser = yargs(argv)
    .scriptName('report-plots')
    .usage('$0 --kind <success-curve|convergence|summary-table> --in <csv...> --out <path>')
    .option('kind', {
      choices: Object.keys(SCHEMAS) as FigureKind[],
      demandOption: true,
      describe: 'figure or table to render',
    })
    .option('in', {
      type: 'string',
      array: true,
      demandOption: true,
      describe: 'input CSV file(s) from the experiment pipeline',
    })
    .option('out', {
      type: 'string',
      demandOption: true,
      describe: 'output path (.svg for figures, .md for tables)',
    })
    .strict()
    .fail((msg: string | null, err: Error | undefined) => {
      throw err ?? new UsageError(msg ?? 'bad arguments');
    })
    .help();

  try {
    const args = await parser.parse();
    render(args.kind as FigureKind, args.in as string[], args.out as string);
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 2;
    }
    const message = err instanceof Error ? err.message : String(err);
    process.stderr.write(`error: ${message}\n`);
    return 1;
  }
}

class UsageError extends Error {}

let invokedDirectly = false;
if (process.argv[1] !== undefined) {
  try {
    invokedDirectly = realpathSync(process.argv[1]) === fileURLToPath(import.meta.url);
  } catch {
    invokedDirectly = false;
  }
}

if (invokedDirectly) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
