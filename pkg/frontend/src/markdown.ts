import { Table } from './csv.js';

/** Markdown table mirroring the summary CSV; cell text is passed through
 * verbatim so the output bytes depend only on the input bytes. */
export function renderSummaryTable(table: Table): string {
  const widths = table.columns.map((col, i) =>
    Math.max(col.length, ...table.rows.map((row) => row[i].length)),
  );
  const pad = (text: string, i: number) => text.padEnd(widths[i]);
  const lines = [
    `| ${table.columns.map(pad).join(' | ')} |`,
    `| ${widths.map((w) => '-'.repeat(w)).join(' | ')} |`,
    ...table.rows.map((row) => `| ${row.map(pad).join(' | ')} |`),
  ];
  return lines.join('\n') + '\n';
}
