// Hand-rolled SVG charts. Every builder returns an SVG string computed
// purely from its inputs, so charts are trivially testable and exportable.

export interface Curve {
  x: number[];
  y: number[];
  label: string;
  color?: string;
  axis?: 'left' | 'right';
  width?: number;
}

export interface Band {
  from: number;
  to: number;
}

const COLORS = ['#1f77b4', '#d62728', '#2ca02c', '#ff7f0e', '#9467bd', '#8c564b', '#17becf'];

const W = 740;
const H = 360;
const PAD = { l: 52, r: 52, t: 24, b: 34 };

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (!(hi > lo)) {
    hi = lo + 1;
  }
  return [lo, hi];
}

function ticks(lo: number, hi: number, count = 5): number[] {
  const out: number[] = [];
  for (let i = 0; i < count; i++) {
    out.push(lo + ((hi - lo) * i) / (count - 1));
  }
  return out;
}

const fmt = (v: number) => {
  const a = Math.abs(v);
  if (a !== 0 && (a >= 10000 || a < 0.001)) return v.toExponential(2);
  return String(Math.round(v * 10000) / 10000);
};

export function lineChart(curves: Curve[], opts: { title?: string; bands?: Band[]; hlines?: { y: number; axis?: 'left' | 'right'; label?: string }[] } = {}): string {
  const allX = curves.flatMap((c) => c.x);
  const [x0, x1] = extent(allX);
  const leftCurves = curves.filter((c) => c.axis !== 'right');
  const rightCurves = curves.filter((c) => c.axis === 'right');
  const [l0, l1] = pad(extent(leftCurves.flatMap((c) => c.y)));
  const [r0, r1] = rightCurves.length ? pad(extent(rightCurves.flatMap((c) => c.y))) : [0, 1];

  const iw = W - PAD.l - PAD.r;
  const ih = H - PAD.t - PAD.b;
  const sx = (v: number) => PAD.l + ((v - x0) / (x1 - x0)) * iw;
  const syL = (v: number) => PAD.t + ((l1 - v) / (l1 - l0)) * ih;
  const syR = (v: number) => PAD.t + ((r1 - v) / (r1 - r0)) * ih;

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" class="chart" role="img">`,
    `<rect width="${W}" height="${H}" fill="white"/>`,
  ];
  if (opts.title) {
    parts.push(`<text x="${W / 2}" y="14" text-anchor="middle" class="chart-title">${esc(opts.title)}</text>`);
  }
  for (const band of opts.bands ?? []) {
    const bx = sx(Math.max(band.from, x0));
    const bw = Math.max(0, sx(Math.min(band.to, x1)) - bx);
    parts.push(`<rect class="band" x="${bx.toFixed(1)}" y="${PAD.t}" width="${bw.toFixed(1)}" height="${ih}" fill="#fdd" opacity="0.6"/>`);
  }
  parts.push(`<rect x="${PAD.l}" y="${PAD.t}" width="${iw}" height="${ih}" fill="none" stroke="#444"/>`);
  for (const tv of ticks(x0, x1)) {
    parts.push(
      `<text x="${sx(tv).toFixed(1)}" y="${H - 14}" text-anchor="middle" class="tick">${fmt(tv)}</text>`,
    );
  }
  for (const tv of ticks(l0, l1)) {
    parts.push(`<text x="${PAD.l - 6}" y="${(syL(tv) + 3).toFixed(1)}" text-anchor="end" class="tick">${fmt(tv)}</text>`);
  }
  if (rightCurves.length) {
    for (const tv of ticks(r0, r1)) {
      parts.push(
        `<text x="${PAD.l + iw + 6}" y="${(syR(tv) + 3).toFixed(1)}" text-anchor="start" class="tick">${fmt(tv)}</text>`,
      );
    }
  }
  for (const hl of opts.hlines ?? []) {
    const sy = hl.axis === 'right' ? syR : syL;
    const y = sy(hl.y).toFixed(1);
    parts.push(`<line x1="${PAD.l}" y1="${y}" x2="${PAD.l + iw}" y2="${y}" stroke="#999" stroke-dasharray="4 3"/>`);
    if (hl.label) {
      parts.push(`<text x="${PAD.l + 4}" y="${Number(y) - 3}" class="tick">${esc(hl.label)}</text>`);
    }
  }
  curves.forEach((curve, i) => {
    const color = curve.color ?? COLORS[i % COLORS.length];
    const sy = curve.axis === 'right' ? syR : syL;
    const pts: string[] = [];
    for (let k = 0; k < curve.x.length; k++) {
      if (Number.isFinite(curve.y[k])) {
        pts.push(`${sx(curve.x[k]).toFixed(1)},${sy(curve.y[k]).toFixed(1)}`);
      }
    }
    parts.push(
      `<polyline data-label="${esc(curve.label)}" points="${pts.join(' ')}" fill="none" stroke="${color}" stroke-width="${curve.width ?? 1.3}"/>`,
    );
    parts.push(
      `<g class="legend-item"><line x1="${PAD.l + 8}" y1="${PAD.t + 12 + 14 * i}" x2="${PAD.l + 26}" y2="${PAD.t + 12 + 14 * i}" stroke="${color}" stroke-width="2"/>` +
        `<text x="${PAD.l + 30}" y="${PAD.t + 16 + 14 * i}" class="tick">${esc(curve.label)}</text></g>`,
    );
  });
  parts.push('</svg>');
  return parts.join('');
}

function pad([lo, hi]: [number, number]): [number, number] {
  const span = hi - lo || 1;
  return [lo - 0.05 * span, hi + 0.05 * span];
}

function esc(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;').replace(/"/g, '&quot;');
}

// Bands (x-intervals) where the series satisfies the level condition; used
// to shade excursion regions. Purely visual: the reported statistics come
// from the service.
export function levelBands(t: number[], x: number[], level: number, direction: 'greater' | 'lower'): Band[] {
  const ok = (v: number) => (direction === 'greater' ? v >= level : v <= level);
  const bands: Band[] = [];
  let start: number | null = null;
  for (let i = 0; i < t.length; i++) {
    if (ok(x[i])) {
      if (start === null) start = t[i];
    } else if (start !== null) {
      bands.push({ from: start, to: t[i - 1] });
      start = null;
    }
  }
  if (start !== null) {
    bands.push({ from: start, to: t[t.length - 1] });
  }
  return bands;
}

export function rsiPanels(
  t: number[],
  prices: number[],
  rsi: (number | null)[],
  overbought = 70,
  oversold = 30,
): string {
  const tt: number[] = [];
  const vv: number[] = [];
  for (let i = 0; i < rsi.length; i++) {
    const v = rsi[i];
    if (v !== null && v !== undefined) {
      tt.push(t[i]);
      vv.push(v);
    }
  }
  const top = lineChart([{ x: tt, y: vv, label: 'RSI', color: '#1f77b4' }], {
    title: 'relative strength index',
    hlines: [
      { y: overbought, label: `overbought ${overbought}` },
      { y: oversold, label: `oversold ${oversold}` },
    ],
  });
  const bottom = lineChart([{ x: t, y: prices, label: 'price', color: '#2ca02c' }], {
    title: 'price series',
  });
  return `<div class="rsi-panels">${top}${bottom}</div>`;
}

export function heatmap(grid: number[], entries: number[][], title = ''): string {
  const n = grid.length;
  const size = 420;
  const padAll = 36;
  const cell = (size - 2 * padAll) / n;
  let vmax = 0;
  for (const row of entries) for (const v of row) vmax = Math.max(vmax, Math.abs(v));
  if (vmax === 0) vmax = 1;
  const color = (v: number) => {
    const z = Math.max(-1, Math.min(1, v / vmax));
    if (z >= 0) {
      const c = Math.round(255 * (1 - z));
      return `rgb(255,${c},${c})`;
    }
    const c = Math.round(255 * (1 + z));
    return `rgb(${c},${c},255)`;
  };
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${size} ${size + 20}" class="chart heatmap" role="img">`,
    `<rect width="${size}" height="${size + 20}" fill="white"/>`,
  ];
  if (title) parts.push(`<text x="${size / 2}" y="14" text-anchor="middle" class="chart-title">${esc(title)}</text>`);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      const x = padAll + j * cell;
      const y = padAll + (n - 1 - i) * cell;
      parts.push(
        `<rect x="${x.toFixed(2)}" y="${y.toFixed(2)}" width="${cell.toFixed(2)}" height="${cell.toFixed(2)}" fill="${color(entries[i][j])}"/>`,
      );
    }
  }
  parts.push(`<text x="${padAll}" y="${size + 12}" class="tick">range ±${fmt(vmax)}</text>`);
  parts.push('</svg>');
  return parts.join('');
}

// Dendrogram from the ordered merge triples: leaves 0..n-1, merge s creates
// cluster id n+s at the recorded height.
export function dendrogram(nItems: number, steps: { left: number; right: number; height: number }[], labels?: string[]): string {
  const size = { w: 680, h: 320 };
  const padAll = { l: 40, r: 10, t: 10, b: 28 };
  const leafOrder: number[] = [];

  const children = new Map<number, [number, number]>();
  steps.forEach((s, i) => children.set(nItems + i, [s.left, s.right]));

  const visit = (id: number) => {
    const kids = children.get(id);
    if (!kids) {
      leafOrder.push(id);
      return;
    }
    visit(kids[0]);
    visit(kids[1]);
  };
  visit(nItems + steps.length - 1);

  const leafX = new Map<number, number>();
  leafOrder.forEach((leaf, i) => leafX.set(leaf, i));
  const maxH = Math.max(...steps.map((s) => s.height), 1e-12);
  const iw = size.w - padAll.l - padAll.r;
  const ih = size.h - padAll.t - padAll.b;
  const sx = (pos: number) => padAll.l + ((pos + 0.5) / leafOrder.length) * iw;
  const sy = (h: number) => padAll.t + (1 - h / maxH) * ih;

  const xOf = new Map<number, number>();
  const hOf = new Map<number, number>();
  leafOrder.forEach((leaf) => {
    xOf.set(leaf, sx(leafX.get(leaf)!));
    hOf.set(leaf, sy(0));
  });

  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${size.w} ${size.h}" class="chart dendrogram" role="img">`,
    `<rect width="${size.w}" height="${size.h}" fill="white"/>`,
  ];
  steps.forEach((s, i) => {
    const id = nItems + i;
    const xl = xOf.get(s.left)!;
    const xr = xOf.get(s.right)!;
    const yl = hOf.get(s.left)!;
    const yr = hOf.get(s.right)!;
    const y = sy(s.height);
    parts.push(`<path d="M ${xl.toFixed(1)} ${yl.toFixed(1)} V ${y.toFixed(1)} H ${xr.toFixed(1)} V ${yr.toFixed(1)}" fill="none" stroke="#333"/>`);
    xOf.set(id, (xl + xr) / 2);
    hOf.set(id, y);
  });
  leafOrder.forEach((leaf, i) => {
    const label = labels ? labels[leaf] : String(leaf + 1);
    parts.push(
      `<text x="${sx(i).toFixed(1)}" y="${size.h - 10}" text-anchor="middle" class="tick">${esc(label)}</text>`,
    );
  });
  for (const tv of ticks(0, maxH, 4)) {
    parts.push(`<text x="4" y="${(sy(tv) + 3).toFixed(1)}" class="tick">${fmt(tv)}</text>`);
  }
  parts.push('</svg>');
  return parts.join('');
}
