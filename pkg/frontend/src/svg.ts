/**
 * Minimal deterministic SVG plotting: linear/log/sqrt/power axes, polyline
 * series, closed-form guide lines.  Numbers are formatted with fixed
 * precision so re-rendering the same inputs is byte-stable.
 */

export type AxisTransform = 'linear' | 'log' | 'sqrt' | 'pow23';

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color?: string;
}

export interface Guide {
  label: string;
  /** closed-form guide in data coordinates */
  points: [number, number][];
  dashed?: boolean;
}

export interface Panel {
  title: string;
  xLabel: string;
  yLabel: string;
  xTransform: AxisTransform;
  yTransform: AxisTransform;
  series: Series[];
  guides?: Guide[];
}

const PALETTE = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b', '#17becf'];

const WIDTH = 420;
const HEIGHT = 340;
const MARGIN = { left: 58, right: 14, top: 30, bottom: 44 };

function forward(t: AxisTransform): (v: number) => number {
  switch (t) {
    case 'linear':
      return (v) => v;
    case 'log':
      return (v) => Math.log10(v);
    case 'sqrt':
      return (v) => Math.sqrt(v);
    case 'pow23':
      return (v) => Math.pow(v, 2 / 3);
  }
}

function fmt(v: number): string {
  if (!Number.isFinite(v)) return '0';
  return v.toFixed(2);
}

function fmtTick(v: number): string {
  const a = Math.abs(v);
  if (a !== 0 && (a < 1e-2 || a >= 1e4)) return v.toExponential(0);
  return String(Math.round(v * 1000) / 1000);
}

interface Scale {
  (v: number): number;
  domain: [number, number];
}

function makeScale(
  values: number[],
  transform: AxisTransform,
  range: [number, number],
): Scale {
  const fwd = forward(transform);
  const finite = values.filter((v) => Number.isFinite(fwd(v)));
  let lo = Math.min(...finite.map(fwd));
  let hi = Math.max(...finite.map(fwd));
  if (!(hi > lo)) {
    hi = lo + 1;
  }
  const pad = 0.04 * (hi - lo);
  lo -= pad;
  hi += pad;
  const scale = ((v: number) =>
    range[0] + ((fwd(v) - lo) / (hi - lo)) * (range[1] - range[0])) as Scale;
  scale.domain = [lo, hi];
  return scale;
}

function ticks(domain: [number, number], transform: AxisTransform): number[] {
  const [lo, hi] = domain;
  const out: number[] = [];
  const n = 5;
  for (let i = 0; i <= n; i++) {
    const u = lo + ((hi - lo) * i) / n;
    switch (transform) {
      case 'linear':
        out.push(u);
        break;
      case 'log':
        out.push(Math.pow(10, u));
        break;
      case 'sqrt':
        out.push(u * u);
        break;
      case 'pow23':
        out.push(Math.pow(Math.max(u, 0), 1.5));
        break;
    }
  }
  return out;
}

function renderPanel(panel: Panel, xOffset: number): string {
  const xs = panel.series.flatMap((s) => s.x).concat(
    (panel.guides ?? []).flatMap((g) => g.points.map((p) => p[0])),
  );
  const ys = panel.series.flatMap((s) => s.y).concat(
    (panel.guides ?? []).flatMap((g) => g.points.map((p) => p[1])),
  );
  const sx = makeScale(xs, panel.xTransform, [xOffset + MARGIN.left, xOffset + WIDTH - MARGIN.right]);
  const sy = makeScale(ys, panel.yTransform, [HEIGHT - MARGIN.bottom, MARGIN.top]);
  const fx = forward(panel.xTransform);
  const fy = forward(panel.yTransform);
  const parts: string[] = [];
  parts.push(
    `<rect x="${fmt(xOffset + MARGIN.left)}" y="${fmt(MARGIN.top)}" width="${fmt(
      WIDTH - MARGIN.left - MARGIN.right,
    )}" height="${fmt(HEIGHT - MARGIN.top - MARGIN.bottom)}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  for (const t of ticks(sx.domain, panel.xTransform)) {
    const px = sx(t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(HEIGHT - MARGIN.bottom)}" x2="${fmt(px)}" y2="${fmt(
        HEIGHT - MARGIN.bottom + 4,
      )}" stroke="#333"/>`,
      `<text x="${fmt(px)}" y="${fmt(HEIGHT - MARGIN.bottom + 16)}" font-size="9" text-anchor="middle">${fmtTick(
        t,
      )}</text>`,
    );
  }
  for (const t of ticks(sy.domain, panel.yTransform)) {
    const py = sy(t);
    parts.push(
      `<line x1="${fmt(xOffset + MARGIN.left - 4)}" y1="${fmt(py)}" x2="${fmt(
        xOffset + MARGIN.left,
      )}" y2="${fmt(py)}" stroke="#333"/>`,
      `<text x="${fmt(xOffset + MARGIN.left - 6)}" y="${fmt(py + 3)}" font-size="9" text-anchor="end">${fmtTick(
        t,
      )}</text>`,
    );
  }
  panel.series.forEach((s, i) => {
    const color = s.color ?? PALETTE[i % PALETTE.length];
    const pts = s.x
      .map((xv, k) => [xv, s.y[k]] as [number, number])
      .filter(([xv, yv]) => Number.isFinite(fx(xv)) && Number.isFinite(fy(yv)))
      .map(([xv, yv]) => `${fmt(sx(xv))},${fmt(sy(yv))}`)
      .join(' ');
    parts.push(`<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="1.4"/>`);
    parts.push(
      `<text x="${fmt(xOffset + WIDTH - MARGIN.right - 6)}" y="${fmt(MARGIN.top + 14 + 12 * i)}" font-size="9" text-anchor="end" fill="${color}">${s.label}</text>`,
    );
  });
  (panel.guides ?? []).forEach((g) => {
    const pts = g.points
      .filter(([xv, yv]) => Number.isFinite(fx(xv)) && Number.isFinite(fy(yv)))
      .map(([xv, yv]) => `${fmt(sx(xv))},${fmt(sy(yv))}`)
      .join(' ');
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="#000" stroke-width="1" stroke-dasharray="5,3"/>`,
    );
    const [gx, gy] = g.points[g.points.length - 1];
    parts.push(
      `<text x="${fmt(sx(gx))}" y="${fmt(sy(gy) - 4)}" font-size="9" text-anchor="end">${g.label}</text>`,
    );
  });
  parts.push(
    `<text x="${fmt(xOffset + WIDTH / 2)}" y="${fmt(MARGIN.top - 10)}" font-size="11" text-anchor="middle">${panel.title}</text>`,
    `<text x="${fmt(xOffset + WIDTH / 2)}" y="${fmt(HEIGHT - 10)}" font-size="10" text-anchor="middle">${panel.xLabel}</text>`,
    `<text x="${fmt(xOffset + 14)}" y="${fmt(HEIGHT / 2)}" font-size="10" text-anchor="middle" transform="rotate(-90 ${fmt(
      xOffset + 14,
    )} ${fmt(HEIGHT / 2)})">${panel.yLabel}</text>`,
  );
  return parts.join('\n');
}

export function renderSvg(panels: Panel[], metadata: object): string {
  const body = panels.map((p, i) => renderPanel(p, i * WIDTH)).join('\n');
  const meta = JSON.stringify(metadata);
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${panels.length * WIDTH}" height="${HEIGHT}" viewBox="0 0 ${panels.length * WIDTH} ${HEIGHT}">`,
    `<metadata id="voidlab-figure">${meta}</metadata>`,
    `<rect width="100%" height="100%" fill="white"/>`,
    body,
    `</svg>`,
    ``,
  ].join('\n');
}
