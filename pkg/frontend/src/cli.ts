#!/usr/bin/env node
/**
 * plots render --figure S4 --manifest run/manifest.json --out figS4.svg
 *
 * Repeat --figure/--out pairs to render several figures in one call; an
 * empty figure list is a successful no-op.
 */

import { renderToFile } from './render.js';

interface Job {
  figure: string;
  manifest: string | null;
  out: string | null;
}

export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  if (command === undefined) {
    console.error('usage: plots render --figure <name> --manifest <path> --out <path.svg>');
    return 2;
  }
  if (command !== 'render') {
    console.error(`unknown command '${command}' (only 'render')`);
    return 2;
  }
  const jobs: Job[] = [];
  let manifest: string | null = null;
  for (let i = 0; i < rest.length; i++) {
    const arg = rest[i];
    const value = rest[i + 1];
    switch (arg) {
      case '--figure':
        jobs.push({ figure: value, manifest: null, out: null });
        i++;
        break;
      case '--manifest':
        if (jobs.length) jobs[jobs.length - 1].manifest = value;
        manifest = value;
        i++;
        break;
      case '--out':
        if (!jobs.length) {
          console.error('--out before any --figure');
          return 2;
        }
        jobs[jobs.length - 1].out = value;
        i++;
        break;
      default:
        console.error(`unknown argument '${arg}'`);
        return 2;
    }
  }
  for (const job of jobs) {
    const m = job.manifest ?? manifest;
    if (!m || !job.out) {
      console.error(`figure ${job.figure}: need --manifest and --out`);
      return 2;
    }
    try {
      renderToFile(job.figure, m, job.out);
      console.log(`wrote ${job.out}`);
    } catch (err) {
      console.error(`figure ${job.figure}: ${(err as Error).message}`);
      return 1;
    }
  }
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split('/').pop()!);
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
