// Bigram-aware surprisal scores standing in for a language-model perplexity.
//
// Scores are positive, finite, and order-sensitive: shuffled or word-salad
// sentences lose their bigram support and score strictly higher than their
// grammatical counterparts.

import { COMMON_BIGRAMS, WORD_RANK } from './lexicon.js';

const OOV_PROB = 1e-5;
const BIGRAM_BOOST = 25.0;
const MAX_PROB = 0.2;

function unigramProb(word: string): number {
  const rank = WORD_RANK.get(word);
  if (rank === undefined) return OOV_PROB;
  return Math.min(MAX_PROB, 1.0 / (rank + 8));
}

export function perplexity(sentence: string): number {
  const words = sentence
    .toLowerCase()
    .replace(/[.,!?;:]+/g, ' ')
    .split(/\s+/)
    .filter((w) => w.length > 0);
  if (words.length === 0) return 1.0;
  let logProbSum = 0;
  for (let i = 0; i < words.length; i++) {
    let p = unigramProb(words[i]);
    if (i > 0 && COMMON_BIGRAMS.has(`${words[i - 1]} ${words[i]}`)) {
      p = Math.min(MAX_PROB, p * BIGRAM_BOOST);
    }
    logProbSum += Math.log(p);
  }
  return Math.exp(-logProbSum / words.length);
}

export function scoreLines(lines: string[]): string[] {
  return lines.map((line) => `${line}\t${perplexity(line).toFixed(4)}`);
}
