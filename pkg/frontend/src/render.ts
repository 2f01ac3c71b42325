import { writeFileSync } from 'fs';

import { FIGURES, FigureSpec, loadInputs } from './figures.js';
import { renderSvg } from './svg.js';

export interface RenderResult {
  svg: string;
  metadata: object;
}

export function renderFigure(name: string, manifestPath: string): RenderResult {
  const spec: FigureSpec | undefined = FIGURES[normalize(name)];
  if (!spec) {
    throw new Error(`unknown figure '${name}'; valid: ${Object.keys(FIGURES).join(', ')}`);
  }
  const tables = loadInputs(spec, manifestPath);
  const panels = spec.build(tables);
  const metadata = {
    figure: spec.name,
    inputs: spec.inputs,
    axis_transforms: spec.transforms,
    panel_transforms: panels.map((p) => ({ x: p.xTransform, y: p.yTransform })),
    guides: panels.flatMap((p) => (p.guides ?? []).map((g) => g.label)),
    columns: Object.fromEntries(
      [...tables.entries()].map(([file, table]) => [file, table.columns]),
    ),
  };
  return { svg: renderSvg(panels, metadata), metadata };
}

export function renderToFile(name: string, manifestPath: string, outPath: string): void {
  const { svg } = renderFigure(name, manifestPath);
  writeFileSync(outPath, svg);
}

function normalize(name: string): string {
  const lower = name.toLowerCase();
  return lower.startsWith('s') ? lower.toUpperCase() : name;
}
