/**
 * Reader for the simulator's CSV dialect: '# key=value' comment headers,
 * one column-name row, then numeric (or tag) rows.
 */

import { readFileSync } from 'fs';

export interface Table {
  meta: Record<string, string>;
  columns: string[];
  rows: (number | string)[][];
}

export function parseCsv(text: string): Table {
  const meta: Record<string, string> = {};
  let columns: string[] | null = null;
  const rows: (number | string)[][] = [];
  for (const raw of text.split('\n')) {
    const line = raw.trim();
    if (!line) continue;
    if (line.startsWith('#')) {
      const body = line.replace(/^#\s*/, '');
      const eq = body.indexOf('=');
      if (eq > 0) meta[body.slice(0, eq).trim()] = body.slice(eq + 1).trim();
      continue;
    }
    if (!columns) {
      columns = line.split(',').map((c) => c.trim());
      continue;
    }
    rows.push(
      line.split(',').map((cell) => {
        const v = Number(cell);
        return Number.isFinite(v) && cell.trim() !== '' ? v : cell.trim();
      }),
    );
  }
  if (!columns) throw new Error('csv has no header row');
  return { meta, columns, rows };
}

export function loadCsv(path: string): Table {
  return parseCsv(readFileSync(path, 'utf8'));
}

/** Numeric column accessor that names the file and column on failure. */
export function column(table: Table, name: string, file: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new Error(`missing column '${name}' in ${file} (has: ${table.columns.join(',')})`);
  }
  return table.rows.map((r) => Number(r[idx]));
}

/** String-valued column (group tags such as model names). */
export function tagColumn(table: Table, name: string, file: string): string[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new Error(`missing column '${name}' in ${file} (has: ${table.columns.join(',')})`);
  }
  return table.rows.map((r) => String(r[idx]));
}

/** Split row indices by the distinct values of one column. */
export function groupBy(values: (number | string)[]): Map<string, number[]> {
  const groups = new Map<string, number[]>();
  values.forEach((v, i) => {
    const key = String(v);
    const bucket = groups.get(key);
    if (bucket) bucket.push(i);
    else groups.set(key, [i]);
  });
  return groups;
}
