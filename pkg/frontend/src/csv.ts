import { readFileSync } from 'fs';

/** Column schemas of the CSV files the experiment pipeline emits. */
export const SCHEMAS = {
  'success-curve': ['label', 'interval_index', 'rate'],
  convergence: ['label', 'step', 'error'],
  'summary-table': [
    'stage', 'topology', 'cut', 'seed_count', 'min_error', 'avg_error',
    'depth', 'cnot', 'rot', 'successes',
  ],
} as const;

export type FigureKind = keyof typeof SCHEMAS;

export interface Table {
  columns: string[];
  rows: string[][];
}

export class CsvError extends Error {}

/** Parse one CSV file and check its header against the expected schema. */
export function readCsv(path: string, kind: FigureKind): Table {
  let text: string;
  try {
    text = readFileSync(path, 'utf8');
  } catch {
    throw new CsvError(`cannot read ${path}`);
  }
  const lines = text.split('\n').filter((line) => line.trim() !== '');
  if (lines.length === 0) {
    throw new CsvError(`${path} is empty`);
  }
  const expected = SCHEMAS[kind];
  const header = lines[0].split(',');
  if (header.length !== expected.length || header.some((c, i) => c !== expected[i])) {
    throw new CsvError(
      `${path} has columns [${header.join(', ')}], expected [${expected.join(', ')}]`,
    );
  }
  const rows = lines.slice(1).map((line, i) => {
    const cells = line.split(',');
    if (cells.length !== expected.length) {
      throw new CsvError(`${path}:${i + 2} has ${cells.length} cells, expected ${expected.length}`);
    }
    return cells;
  });
  if (rows.length === 0) {
    throw new CsvError(`${path} has no data rows`);
  }
  return { columns: [...expected], rows };
}

/** Read and concatenate several same-schema CSV files in argument order. */
export function readMany(paths: string[], kind: FigureKind): Table {
  const tables = paths.map((p) => readCsv(p, kind));
  return { columns: tables[0].columns, rows: tables.flatMap((t) => t.rows) };
}

export function toNumber(cell: string, what: string): number {
  const value = Number(cell);
  if (!Number.isFinite(value)) {
    throw new CsvError(`${what} is not a finite number: '${cell}'`);
  }
  return value;
}
