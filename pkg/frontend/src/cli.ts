#!/usr/bin/env node
// adapter <mode> --in <path> --out <path> [--model <id>] [--batch <n>]
//
// Modes produce the sidecar files the cskb pipeline consumes:
//   parse      raw text            -> CoNLL-U
//   embed      one key per line    -> key<TAB>v1 .. vd   (unit vectors)
//   perplexity one sentence a line -> key<TAB>score
//   sentiment  one sentence a line -> key<TAB>p_pos p_neu p_neg
//
// Output row order always equals input order; batching only chunks work.

import { readFileSync, writeFileSync } from 'node:fs';
import { basename } from 'node:path';
import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';

import { embedLines } from './embed.js';
import { parseCorpus } from './parse.js';
import { perplexity, scoreLines } from './perplexity.js';
import { polarityLines } from './sentiment.js';

const MODES = ['parse', 'embed', 'perplexity', 'sentiment'] as const;
type Mode = (typeof MODES)[number];

const KNOWN_MODELS = new Set(['heuristic-v1']);

interface Job {
  mode: Mode;
  input: string;
  output: string;
  model: string;
  batch: number;
}

function readLines(path: string): string[] {
  return readFileSync(path, 'utf-8')
    .split('\n')
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
}

function inBatches<T, R>(items: T[], batch: number, fn: (chunk: T[]) => R[]): R[] {
  const out: R[] = [];
  for (let i = 0; i < items.length; i += batch) {
    out.push(...fn(items.slice(i, i + batch)));
  }
  return out;
}

export function runJob(job: Job): void {
  if (!KNOWN_MODELS.has(job.model)) {
    throw new Error(`unknown model ${job.model}; available: ${[...KNOWN_MODELS].join(', ')}`);
  }
  if (job.batch < 1) {
    throw new Error('batch size must be >= 1');
  }
  if (job.mode === 'parse') {
    const text = readFileSync(job.input, 'utf-8');
    const base = basename(job.input).replace(/\.[^.]+$/, '');
    writeFileSync(job.output, parseCorpus(text, base), 'utf-8');
    return;
  }
  const lines = readLines(job.input);
  let rows: string[];
  if (job.mode === 'embed') {
    rows = inBatches(lines, job.batch, (chunk) => embedLines(chunk));
  } else if (job.mode === 'perplexity') {
    rows = inBatches(lines, job.batch, (chunk) => scoreLines(chunk));
  } else {
    rows = inBatches(lines, job.batch, (chunk) => polarityLines(chunk));
  }
  writeFileSync(job.output, rows.length > 0 ? rows.join('\n') + '\n' : '', 'utf-8');
}

async function main(): Promise<void> {
  const argv = await yargs(hideBin(process.argv))
    .command('$0 <mode>', 'produce a cskb input sidecar from raw text', (y) =>
      y.positional('mode', { choices: MODES, demandOption: true }),
    )
    .option('in', { type: 'string', demandOption: true, describe: 'input file' })
    .option('out', { type: 'string', demandOption: true, describe: 'output file' })
    .option('model', { type: 'string', default: 'heuristic-v1' })
    .option('batch', { type: 'number', default: 64 })
    .strict()
    .parse();

  runJob({
    mode: argv.mode as Mode,
    input: argv.in as string,
    output: argv.out as string,
    model: argv.model as string,
    batch: argv.batch as number,
  });
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(basename(process.argv[1]));

if (invokedDirectly) {
  main().catch((err) => {
    console.error(String(err?.message ?? err));
    process.exit(1);
  });
}

export { perplexity };
