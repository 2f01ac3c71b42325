/**
 * Figure registry: which artifact files each figure consumes and how the
 * panels transform their axes.  Guide lines come from closed forms, never
 * from fits.
 */

import { join, dirname } from 'path';
import { readFileSync } from 'fs';
import { Table, loadCsv, column, tagColumn, groupBy } from './csv.js';
import { Panel, Series, Guide } from './svg.js';

export interface FigureSpec {
  name: string;
  inputs: string[];
  build: (tables: Map<string, Table>) => Panel[];
  transforms: string[];
}

function logSafe(values: number[]): number[] {
  return values.map((v) => (v > 0 ? Math.log10(v) : NaN));
}

function seriesByGroup(
  table: Table,
  file: string,
  groupCol: string,
  xCol: string,
  yCol: string,
  prefix: string,
): Series[] {
  const tags = tagColumn(table, groupCol, file);
  const xs = column(table, xCol, file);
  const ys = column(table, yCol, file);
  const out: Series[] = [];
  for (const [key, idx] of groupBy(tags)) {
    out.push({
      label: `${prefix}${key}`,
      x: idx.map((i) => xs[i]),
      y: idx.map((i) => ys[i]),
    });
  }
  return out;
}

function powerGuide(xLo: number, xHi: number, exponent: number, anchorY: number, label: string): Guide {
  // y = anchorY * (x / xLo)^exponent through the start of the window
  const points: [number, number][] = [];
  for (let i = 0; i <= 24; i++) {
    const x = xLo * Math.pow(xHi / xLo, i / 24);
    points.push([x, anchorY * Math.pow(x / xLo, exponent)]);
  }
  return { label, points };
}

const figure1: FigureSpec = {
  name: '1',
  inputs: ['fig1_zsum.csv', 'fig1_zsum_noisy.csv'],
  transforms: ['x:sqrt(t)', 'y:log', 'x:t', 'y:log'],
  build: (tables) => {
    const clean = tables.get('fig1_zsum.csv')!;
    const noisy = tables.get('fig1_zsum_noisy.csv')!;
    const t = column(clean, 't', 'fig1_zsum.csv');
    const z = column(clean, 'Zsum', 'fig1_zsum.csv');
    const tn = column(noisy, 't', 'fig1_zsum_noisy.csv');
    const zn = column(noisy, 'Zsum', 'fig1_zsum_noisy.csv');
    const keep = t.map((_, i) => i).filter((i) => z[i] > 0 && t[i] > 0);
    const keepN = tn.map((_, i) => i).filter((i) => zn[i] > 0 && tn[i] > 0);
    return [
      {
        title: 'summed squared correlator, clean circuit',
        xLabel: 'sqrt(t)',
        yLabel: 'log10 sum_x Z(x,t)',
        xTransform: 'sqrt',
        yTransform: 'linear',
        series: [
          {
            label: 'clean',
            x: keep.map((i) => t[i]),
            y: keep.map((i) => Math.log10(z[i])),
          },
        ],
      },
      {
        title: 'with dephasing',
        xLabel: 't',
        yLabel: 'log10 sum_x Z(x,t)',
        xTransform: 'linear',
        yTransform: 'linear',
        series: [
          {
            label: 'gamma_z=0.4',
            x: keepN.map((i) => tn[i]),
            y: keepN.map((i) => Math.log10(zn[i])),
          },
        ],
      },
    ];
  },
};

const figure2: FigureSpec = {
  name: '2',
  inputs: ['fig2_lowdensity.csv', 'fig2_hydro_collapse.csv'],
  transforms: ['x:n*t', 'y:log', 'x:log(eta)', 'y:log(n)'],
  build: (tables) => {
    const low = tables.get('fig2_lowdensity.csv')!;
    const tags = tagColumn(low, 'n', 'fig2_lowdensity.csv');
    const t = column(low, 't', 'fig2_lowdensity.csv');
    const s = column(low, 'sumsq', 'fig2_lowdensity.csv');
    const lowSeries: Series[] = [];
    for (const [key, idx] of groupBy(tags)) {
      const n = Number(key);
      lowSeries.push({
        label: `n=${key}`,
        x: idx.map((i) => n * t[i]),
        y: idx.map((i) => Math.log10(s[i] / (n * n))),
      });
    }
    const hyd = tables.get('fig2_hydro_collapse.csv')!;
    const collapse = collapsePanel(hyd, 'fig2_hydro_collapse.csv');
    return [
      {
        title: 'low-density decay vs n*t',
        xLabel: 'n*t',
        yLabel: 'log10 of rescaled sum_x |C|^2',
        xTransform: 'linear',
        yTransform: 'linear',
        series: lowSeries,
      },
      collapse,
    ];
  },
};

function collapsePanel(table: Table, file: string): Panel {
  const tcol = tagColumn(table, 't', file);
  const eta = column(table, 'eta', file);
  const n = column(table, 'n', file);
  const series: Series[] = [];
  for (const [key, idx] of groupBy(tcol)) {
    const pts = idx.filter((i) => eta[i] > 0 && n[i] > 0);
    series.push({
      label: `t=${key}`,
      x: pts.map((i) => eta[i]),
      y: pts.map((i) => n[i]),
    });
  }
  const etaPos = eta.filter((v, i) => v > 0 && n[i] > 0);
  const nPos = n.filter((v, i) => v > 0 && eta[i] > 0);
  const lo = Math.max(1.0, Math.min(...etaPos));
  const hi = Math.max(...etaPos);
  const anchor = Math.max(...nPos);
  return {
    title: 'domain-wall scaling collapse',
    xLabel: 'eta = x/sqrt(t)',
    yLabel: 'n',
    xTransform: 'log',
    yTransform: 'log',
    series,
    guides: [powerGuide(lo, hi, -2, anchor, 'eta^-2')],
  };
}

const figureS1: FigureSpec = {
  name: 'S1',
  inputs: ['figS1_noisy_zsum.csv'],
  transforms: ['x:t', 'y:log'],
  build: (tables) => {
    const tab = tables.get('figS1_noisy_zsum.csv')!;
    const tags = tagColumn(tab, 'gamma_z', 'figS1_noisy_zsum.csv');
    const t = column(tab, 't', 'figS1_noisy_zsum.csv');
    const z = column(tab, 'Zsum', 'figS1_noisy_zsum.csv');
    const series: Series[] = [];
    for (const [key, idx] of groupBy(tags)) {
      const pts = idx.filter((i) => z[i] > 0);
      series.push({
        label: `gamma_z=${key}`,
        x: pts.map((i) => t[i]),
        y: pts.map((i) => Math.log10(z[i])),
      });
    }
    return [
      {
        title: 'dephased circuit: exponential decay',
        xLabel: 't',
        yLabel: 'log10 sum_x Z(x,t)',
        xTransform: 'linear',
        yTransform: 'linear',
        series,
      },
    ];
  },
};

const figureS2: FigureSpec = {
  name: 'S2',
  inputs: ['figS2_collapse.csv', 'figS2_tracks.csv'],
  transforms: ['x:log(eta)', 'y:log(n)', 'x:log(t)', 'y:log(c^2 n)'],
  build: (tables) => {
    const collapse = collapsePanel(tables.get('figS2_collapse.csv')!, 'figS2_collapse.csv');
    const tracks = tables.get('figS2_tracks.csv')!;
    const c = tagColumn(tracks, 'c', 'figS2_tracks.csv');
    const t = column(tracks, 't', 'figS2_tracks.csv');
    const n = column(tracks, 'n', 'figS2_tracks.csv');
    const series: Series[] = [];
    let anchor = 0;
    let tLo = Infinity;
    let tHi = 0;
    for (const [key, idx] of groupBy(c)) {
      const cv = Number(key);
      const pts = idx.filter((i) => n[i] > 0 && t[i] > 0);
      if (!pts.length) continue;
      series.push({
        label: `c=${key}`,
        x: pts.map((i) => t[i]),
        y: pts.map((i) => cv * cv * n[i]),
      });
      anchor = Math.max(anchor, cv * cv * n[pts[0]]);
      tLo = Math.min(tLo, t[pts[0]]);
      tHi = Math.max(tHi, t[pts[pts.length - 1]]);
    }
    return [
      collapse,
      {
        title: 'density along x = c t^(2/3)',
        xLabel: 't',
        yLabel: 'c^2 n',
        xTransform: 'log',
        yTransform: 'log',
        series,
        guides: [powerGuide(tLo, tHi, -1 / 3, anchor, 't^-1/3')],
      },
    ];
  },
};

const figureS3: FigureSpec = {
  name: 'S3',
  inputs: ['figS3_structure.csv', 'figS3_kubo.csv'],
  transforms: ['x:x*sqrt(n/t)', 'y:corr/peak', 'x:1/n', 'y:D'],
  build: (tables) => {
    const st = tables.get('figS3_structure.csv')!;
    const nTag = tagColumn(st, 'n', 'figS3_structure.csv');
    const tCol = column(st, 't', 'figS3_structure.csv');
    const xCol = column(st, 'x', 'figS3_structure.csv');
    const corr = column(st, 'corr', 'figS3_structure.csv');
    const series: Series[] = [];
    for (const [key, idx] of groupBy(nTag.map((n, i) => `${n}|${tCol[i]}`))) {
      const [nStr, tStr] = key.split('|');
      const n = Number(nStr);
      const t = Number(tStr);
      const peak = Math.max(...idx.map((i) => corr[i]));
      const sorted = [...idx].sort((a, b) => xCol[a] - xCol[b]);
      series.push({
        label: `n=${nStr}, t=${tStr}`,
        x: sorted.map((i) => xCol[i] * Math.sqrt(n / t)),
        y: sorted.map((i) => corr[i] / peak),
      });
    }
    const kubo = tables.get('figS3_kubo.csv')!;
    const invN = column(kubo, 'inv_n', 'figS3_kubo.csv');
    const d = column(kubo, 'D', 'figS3_kubo.csv');
    const order = invN.map((_, i) => i).sort((a, b) => invN[a] - invN[b]);
    return [
      {
        title: 'density correlator collapse',
        xLabel: 'x sqrt(n/t)',
        yLabel: 'corr / peak',
        xTransform: 'linear',
        yTransform: 'linear',
        series,
      },
      {
        title: 'Kubo diffusivity',
        xLabel: '1/n',
        yLabel: 'D',
        xTransform: 'linear',
        yTransform: 'linear',
        series: [
          {
            label: 'D(n)',
            x: order.map((i) => invN[i]),
            y: order.map((i) => d[i]),
          },
        ],
      },
    ];
  },
};

const figureS4: FigureSpec = {
  name: 'S4',
  inputs: ['figS4_survival.csv', 'figS4_alpha.csv'],
  transforms: ['x:t^(2/3)', 'y:log', 'x:t', 'y:alpha'],
  build: (tables) => {
    const surv = tables.get('figS4_survival.csv')!;
    const t = column(surv, 't', 'figS4_survival.csv');
    const p = column(surv, 'P', 'figS4_survival.csv');
    const keep = t.map((_, i) => i).filter((i) => p[i] > 0 && t[i] > 0);
    const alpha = tables.get('figS4_alpha.csv')!;
    const ta = column(alpha, 't', 'figS4_alpha.csv');
    const av = column(alpha, 'alpha', 'figS4_alpha.csv');
    return [
      {
        title: 'magnon survival',
        xLabel: 't^(2/3)',
        yLabel: 'log10 P(t)',
        xTransform: 'pow23',
        yTransform: 'linear',
        series: [
          { label: 'P(t)', x: keep.map((i) => t[i]), y: keep.map((i) => Math.log10(p[i])) },
        ],
      },
      {
        title: 'running stretch exponent',
        xLabel: 't',
        yLabel: 'alpha(t)',
        xTransform: 'linear',
        yTransform: 'linear',
        series: [{ label: 'alpha(t)', x: ta, y: av }],
        guides: [
          {
            label: '2/3',
            points: [
              [ta[0], 2 / 3],
              [ta[ta.length - 1], 2 / 3],
            ],
          },
        ],
      },
    ];
  },
};

const figureS5: FigureSpec = {
  name: 'S5',
  inputs: ['figS5_infT.csv'],
  transforms: ['x:t^(2/3)', 'y:log'],
  build: (tables) => {
    const tab = tables.get('figS5_infT.csv')!;
    const models = tagColumn(tab, 'model', 'figS5_infT.csv');
    const t = column(tab, 't', 'figS5_infT.csv');
    const s = column(tab, 'sumsq', 'figS5_infT.csv');
    const series: Series[] = [];
    for (const [key, idx] of groupBy(models)) {
      const pts = idx.filter((i) => s[i] > 0 && t[i] > 0);
      series.push({
        label: `model ${key}`,
        x: pts.map((i) => t[i]),
        y: pts.map((i) => Math.log10(s[i])),
      });
    }
    return [
      {
        title: 'half-filling decay, squashed time axis',
        xLabel: 't^(2/3)',
        yLabel: 'log10 sum_x |C|^2',
        xTransform: 'pow23',
        yTransform: 'linear',
        series,
      },
    ];
  },
};

export const FIGURES: Record<string, FigureSpec> = {
  '1': figure1,
  '2': figure2,
  S1: figureS1,
  S2: figureS2,
  S3: figureS3,
  S4: figureS4,
  S5: figureS5,
};

export interface Manifest {
  files: Record<string, string>;
  config?: Record<string, unknown>;
}

export function loadManifest(path: string): Manifest {
  return JSON.parse(readFileSync(path, 'utf8')) as Manifest;
}

export function loadInputs(spec: FigureSpec, manifestPath: string): Map<string, Table> {
  const manifest = loadManifest(manifestPath);
  const dir = dirname(manifestPath);
  const tables = new Map<string, Table>();
  for (const input of spec.inputs) {
    if (!(input in manifest.files)) {
      throw new Error(`manifest ${manifestPath} does not list required input ${input}`);
    }
    tables.set(input, loadCsv(join(dir, input)));
  }
  return tables;
}
