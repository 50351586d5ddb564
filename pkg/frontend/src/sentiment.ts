// Lexicon-based sentence polarity: (p_pos, p_neu, p_neg) rows that sum to 1
// within 1e-6 after formatting.

import { NEGATIVE_WORDS, POSITIVE_WORDS } from './lexicon.js';

// two or more polarized hits outweigh the neutral prior
const NEUTRAL_MASS = 1.5;

export function polarity(sentence: string): [number, number, number] {
  const words = sentence
    .toLowerCase()
    .replace(/[.,!?;:]+/g, ' ')
    .split(/\s+/)
    .filter((w) => w.length > 0);
  let pos = 0;
  let neg = 0;
  for (const word of words) {
    if (POSITIVE_WORDS.has(word)) pos += 1;
    if (NEGATIVE_WORDS.has(word)) neg += 1;
  }
  const total = pos + neg + NEUTRAL_MASS;
  return [pos / total, NEUTRAL_MASS / total, neg / total];
}

/** Format so the printed row sums to exactly 1 at six decimals. */
export function formatPolarity(values: [number, number, number]): string {
  const pos = Number(values[0].toFixed(6));
  const neg = Number(values[2].toFixed(6));
  const neu = Number((1 - pos - neg).toFixed(6));
  return `${pos.toFixed(6)} ${neu.toFixed(6)} ${neg.toFixed(6)}`;
}

export function polarityLines(lines: string[]): string[] {
  return lines.map((line) => `${line}\t${formatPolarity(polarity(line))}`);
}
