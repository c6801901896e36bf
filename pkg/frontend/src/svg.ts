import { Table, toNumber } from './csv.js';

const WIDTH = 640;
const HEIGHT = 400;
const PLOT = { left: 70, right: 620, top: 30, bottom: 340 };

const PALETTE = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b'];

const fmt = (x: number) => x.toFixed(2);

interface Series {
  label: string;
  points: Array<[number, number]>;
}

function groupSeries(table: Table, xCol: number, yCol: number): Series[] {
  const byLabel = new Map<string, Array<[number, number]>>();
  for (const row of table.rows) {
    const x = toNumber(row[xCol], table.columns[xCol]);
    const y = toNumber(row[yCol], table.columns[yCol]);
    const points = byLabel.get(row[0]) ?? [];
    points.push([x, y]);
    byLabel.set(row[0], points);
  }
  return [...byLabel.keys()].sort().map((label) => ({
    label,
    points: byLabel.get(label)!.slice().sort((a, b) => a[0] - b[0]),
  }));
}

function header(): string[] {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
  ];
}

function axes(): string {
  return (
    `<line x1="${PLOT.left}" y1="${PLOT.bottom}" x2="${PLOT.right}" y2="${PLOT.bottom}" stroke="black"/>` +
    `<line x1="${PLOT.left}" y1="${PLOT.top}" x2="${PLOT.left}" y2="${PLOT.bottom}" stroke="black"/>`
  );
}

function legend(series: Series[]): string[] {
  return series.map((s, i) => {
    const y = PLOT.top + 16 * i;
    const color = PALETTE[i % PALETTE.length];
    return (
      `<line x1="${PLOT.left + 12}" y1="${y}" x2="${PLOT.left + 36}" y2="${y}" stroke="${color}" stroke-width="2"/>` +
      `<text x="${PLOT.left + 42}" y="${y + 4}" font-size="11" font-family="sans-serif">${escapeXml(s.label)}</text>`
    );
  });
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

/** Success probability per training interval; y is fixed to [0, 1]. */
export function renderSuccessCurve(table: Table): string {
  const series = groupSeries(table, 1, 2);
  const maxX = Math.max(1, ...series.flatMap((s) => s.points.map((p) => p[0])));
  const sx = (x: number) => PLOT.left + ((PLOT.right - PLOT.left) * x) / maxX;
  const sy = (y: number) => PLOT.bottom - (PLOT.bottom - PLOT.top) * y;

  const parts = header();
  parts.push(axes());
  const xStep = Math.max(1, Math.ceil(maxX / 10));
  for (let x = 0; x <= maxX; x += xStep) {
    parts.push(
      `<line x1="${fmt(sx(x))}" y1="${PLOT.bottom}" x2="${fmt(sx(x))}" y2="${PLOT.bottom + 5}" stroke="black"/>` +
        `<text x="${fmt(sx(x))}" y="${PLOT.bottom + 18}" font-size="11" text-anchor="middle" font-family="sans-serif">${x}</text>`,
    );
  }
  for (const tick of [0, 0.25, 0.5, 0.75, 1]) {
    parts.push(
      `<line x1="${PLOT.left - 5}" y1="${fmt(sy(tick))}" x2="${PLOT.left}" y2="${fmt(sy(tick))}" stroke="black"/>` +
        `<text x="${PLOT.left - 9}" y="${fmt(sy(tick) + 4)}" font-size="11" text-anchor="end" font-family="sans-serif">${tick}</text>`,
    );
  }
  series.forEach((s, i) => {
    const coords = s.points.map(([x, y]) => `${fmt(sx(x))},${fmt(sy(Math.min(1, Math.max(0, y))))}`);
    parts.push(
      `<polyline fill="none" stroke="${PALETTE[i % PALETTE.length]}" stroke-width="2" points="${coords.join(' ')}"/>`,
    );
  });
  parts.push(...legend(series));
  parts.push(
    `<text x="${(PLOT.left + PLOT.right) / 2}" y="${HEIGHT - 20}" font-size="12" text-anchor="middle" font-family="sans-serif">training interval</text>`,
    `<text x="18" y="${(PLOT.top + PLOT.bottom) / 2}" font-size="12" text-anchor="middle" font-family="sans-serif" transform="rotate(-90 18 ${(PLOT.top + PLOT.bottom) / 2})">success probability</text>`,
  );
  parts.push('</svg>');
  return parts.join('\n') + '\n';
}

/** Energy error against gate-placement step, log-scaled vertical axis. */
export function renderConvergence(table: Table): string {
  const series = groupSeries(table, 1, 2);
  const FLOOR = 1e-16;
  const logs = series.flatMap((s) => s.points.map(([, y]) => Math.log10(Math.max(y, FLOOR))));
  const lo = Math.floor(Math.min(...logs));
  const hi = Math.ceil(Math.max(...logs));
  const span = Math.max(hi - lo, 1);
  const maxX = Math.max(1, ...series.flatMap((s) => s.points.map((p) => p[0])));

  const sx = (x: number) => PLOT.left + ((PLOT.right - PLOT.left) * x) / maxX;
  const sy = (logY: number) => PLOT.bottom - ((PLOT.bottom - PLOT.top) * (logY - lo)) / span;

  const parts = header();
  parts.push(axes());
  const xStep = Math.max(1, Math.ceil(maxX / 10));
  for (let x = 0; x <= maxX; x += xStep) {
    parts.push(
      `<line x1="${fmt(sx(x))}" y1="${PLOT.bottom}" x2="${fmt(sx(x))}" y2="${PLOT.bottom + 5}" stroke="black"/>` +
        `<text x="${fmt(sx(x))}" y="${PLOT.bottom + 18}" font-size="11" text-anchor="middle" font-family="sans-serif">${x}</text>`,
    );
  }
  const decadeStep = Math.max(1, Math.ceil(span / 8));
  for (let d = lo; d <= hi; d += decadeStep) {
    parts.push(
      `<line x1="${PLOT.left - 5}" y1="${fmt(sy(d))}" x2="${PLOT.left}" y2="${fmt(sy(d))}" stroke="black"/>` +
        `<text x="${PLOT.left - 9}" y="${fmt(sy(d) + 4)}" font-size="11" text-anchor="end" font-family="sans-serif">1e${d}</text>`,
    );
  }
  series.forEach((s, i) => {
    const coords = s.points.map(
      ([x, y]) => `${fmt(sx(x))},${fmt(sy(Math.log10(Math.max(y, FLOOR))))}`,
    );
    parts.push(
      `<polyline fill="none" stroke="${PALETTE[i % PALETTE.length]}" stroke-width="2" points="${coords.join(' ')}"/>`,
    );
  });
  parts.push(...legend(series));
  parts.push(
    `<text x="${(PLOT.left + PLOT.right) / 2}" y="${HEIGHT - 20}" font-size="12" text-anchor="middle" font-family="sans-serif">gate placement step</text>`,
    `<text x="18" y="${(PLOT.top + PLOT.bottom) / 2}" font-size="12" text-anchor="middle" font-family="sans-serif" transform="rotate(-90 18 ${(PLOT.top + PLOT.bottom) / 2})">energy error (Hartree)</text>`,
  );
  parts.push('</svg>');
  return parts.join('\n') + '\n';
}
