// CSV handling for user uploads and figure exports.

export interface ParsedSeries {
  t: number[];
  x: number[];
}

export interface ParseIssue {
  row: number; // 1-based line number
  message: string;
}

export interface ParseResult {
  series: ParsedSeries | null;
  issues: ParseIssue[];
  warning: string | null;
}

//: estimates of local roughness are unreliable below this many samples
export const RELIABLE_POINTS = 500;

export function parseSeriesCsv(text: string): ParseResult {
  const issues: ParseIssue[] = [];
  const t: number[] = [];
  const x: number[] = [];
  const lines = text.split(/\r\n|\r|\n/);
  if (lines.length === 0 || lines.every((line) => line.trim() === '')) {
    return { series: null, issues: [{ row: 1, message: 'empty file' }], warning: null };
  }
  let start = 0;
  const first = splitRow(lines[0]);
  if (first.length >= 2 && (isNaN(Number(first[0])) || first[0].trim() === '')) {
    start = 1; // header row
  }
  for (let i = start; i < lines.length; i++) {
    const line = lines[i];
    if (line.trim() === '') continue;
    const cells = splitRow(line);
    if (cells.length < 2) {
      issues.push({ row: i + 1, message: `expected 2 columns, got ${cells.length}` });
      continue;
    }
    const tv = Number(cells[0]);
    const xv = Number(cells[1]);
    if (cells[0].trim() === '' || isNaN(tv)) {
      issues.push({ row: i + 1, message: `non-numeric time ${JSON.stringify(cells[0])}` });
      continue;
    }
    if (cells[1].trim() === '' || isNaN(xv)) {
      issues.push({ row: i + 1, message: `non-numeric value ${JSON.stringify(cells[1])}` });
      continue;
    }
    t.push(tv);
    x.push(xv);
  }
  if (issues.length > 0) {
    return { series: null, issues, warning: null };
  }
  if (t.length < 2) {
    return { series: null, issues: [{ row: lines.length, message: 'need at least 2 data rows' }], warning: null };
  }
  for (let i = 1; i < t.length; i++) {
    if (!(t[i] > t[i - 1])) {
      return {
        series: null,
        issues: [{ row: start + i + 1, message: 'times must be strictly increasing' }],
        warning: null,
      };
    }
  }
  const warning =
    t.length < RELIABLE_POINTS
      ? `only ${t.length} points; estimates of local roughness need at least ${RELIABLE_POINTS} for reliable results`
      : null;
  return { series: { t, x }, issues: [], warning };
}

function splitRow(line: string): string[] {
  return line.split(',');
}

export function seriesToCsv(t: number[], x: number[], header = 't,x'): string {
  const rows = [header];
  for (let i = 0; i < t.length; i++) {
    rows.push(`${t[i]},${x[i]}`);
  }
  return rows.join('\n') + '\n';
}

export function tableToCsv(header: string[], columns: number[][]): string {
  const rows = [header.join(',')];
  const n = columns.length > 0 ? columns[0].length : 0;
  for (let i = 0; i < n; i++) {
    rows.push(columns.map((c) => String(c[i])).join(','));
  }
  return rows.join('\n') + '\n';
}

export function matrixToCsv(grid: number[], entries: number[][]): string {
  const rows = ['t,' + grid.join(',')];
  for (let i = 0; i < grid.length; i++) {
    rows.push(`${grid[i]},` + entries[i].join(','));
  }
  return rows.join('\n') + '\n';
}
