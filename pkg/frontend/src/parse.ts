// Heuristic tagger and dependency parser emitting CoNLL-U.
//
// The goal is structurally valid, deterministic output (single root, acyclic
// heads, sane POS classes, NER tags in MISC), not treebank-grade analyses.

import {
  ADJECTIVES,
  ADVERBS,
  AUXILIARIES,
  CONJUNCTIONS,
  DETERMINERS,
  NER_DATES,
  NER_LOCATIONS,
  NER_TIMES,
  PREPOSITIONS,
  PRONOUNS,
  SUBORDINATORS,
  VERB_STEMS,
} from './lexicon.js';
import { RawToken, detokenize, splitDocuments, splitSentences, tokenize } from './tokenize.js';

export interface ParsedToken {
  index: number;
  form: string;
  lemma: string;
  upos: string;
  head: number;
  deprel: string;
  ner: string | null;
  glueRight: boolean;
}

const PUNCT = /^[.,!?;:]$/;

function verbStem(word: string): string | null {
  if (VERB_STEMS.has(word)) return word;
  if (word.endsWith('ies') && VERB_STEMS.has(word.slice(0, -3) + 'y')) {
    return word.slice(0, -3) + 'y';
  }
  for (const suffix of ['es', 's', 'ed', 'd']) {
    const stem = word.slice(0, -suffix.length);
    if (word.endsWith(suffix) && VERB_STEMS.has(stem)) return stem;
  }
  if (word.endsWith('ing')) {
    const stem = word.slice(0, -3);
    if (VERB_STEMS.has(stem) || VERB_STEMS.has(stem + 'e')) {
      return VERB_STEMS.has(stem) ? stem : stem + 'e';
    }
  }
  return null;
}

function nounLemma(word: string): string {
  if (word.endsWith('ies') && word.length > 4) return word.slice(0, -3) + 'y';
  if (word.endsWith('ves') && word.length > 4) return word.slice(0, -3) + 'f';
  if (word.endsWith('ses') || word.endsWith('xes') || word.endsWith('hes')) {
    return word.slice(0, -2);
  }
  if (word.endsWith('s') && !word.endsWith('ss') && word.length > 3) {
    return word.slice(0, -1);
  }
  return word;
}

function tagToken(raw: RawToken, position: number): ParsedToken {
  const form = raw.form;
  const lower = form.toLowerCase();
  let upos: string;
  let lemma = lower;
  if (PUNCT.test(form)) {
    upos = 'PUNCT';
    lemma = form;
  } else if (/^https?:\/\//.test(lower) || /^www\./.test(lower)) {
    upos = 'X';
  } else if (/^[-+]?[0-9][0-9,.]*$/.test(form)) {
    upos = 'NUM';
  } else if (lower === "'s") {
    upos = 'PART';
  } else if (lower === 'to') {
    upos = 'PART';
  } else if (lower === 'not') {
    upos = 'PART';
  } else if (AUXILIARIES.has(lower)) {
    upos = 'AUX';
    lemma = ['is', 'are', 'was', 'were', 'am', 'been', 'being'].includes(lower)
      ? 'be'
      : ['has', 'had'].includes(lower)
        ? 'have'
        : ['does', 'did'].includes(lower)
          ? 'do'
          : lower;
  } else if (DETERMINERS.has(lower)) {
    upos = 'DET';
    lemma = lower === 'an' ? 'a' : lower;
  } else if (PRONOUNS.has(lower)) {
    upos = 'PRON';
    lemma = ['their', 'them', 'they'].includes(lower) ? 'they' : lower;
  } else if (PREPOSITIONS.has(lower)) {
    upos = 'ADP';
  } else if (CONJUNCTIONS.has(lower)) {
    upos = 'CCONJ';
  } else if (SUBORDINATORS.has(lower)) {
    upos = 'SCONJ';
  } else if (ADVERBS.has(lower) || (lower.endsWith('ly') && lower.length > 3)) {
    upos = 'ADV';
  } else if (ADJECTIVES.has(lower)) {
    upos = 'ADJ';
  } else {
    const stem = verbStem(lower);
    if (stem !== null) {
      upos = 'VERB';
      lemma = stem;
    } else if (/^[A-Z]/.test(form) && position > 0) {
      upos = 'PROPN';
      lemma = form;
    } else if (lower.endsWith('ful') || lower.endsWith('ous') || lower.endsWith('ive')) {
      upos = 'ADJ';
    } else {
      upos = 'NOUN';
      lemma = nounLemma(lower);
    }
  }
  let ner: string | null = null;
  if (NER_LOCATIONS.has(lower)) ner = 'LOC';
  else if (NER_TIMES.has(lower)) ner = 'TIME';
  else if (NER_DATES.has(lower)) ner = 'DATE';
  return {
    index: position + 1,
    form,
    lemma,
    upos,
    head: 0,
    deprel: 'dep',
    ner,
    glueRight: raw.glueRight,
  };
}

const NOMINAL = new Set(['NOUN', 'PROPN', 'PRON', 'NUM', 'X']);

function nextIndexWhere(
  tokens: ParsedToken[],
  start: number,
  pred: (t: ParsedToken) => boolean,
): number {
  for (let i = start; i < tokens.length; i++) {
    if (pred(tokens[i])) return i;
  }
  return -1;
}

/** Assign heads and deprels in place; guarantees a single root and a tree. */
export function attachHeads(tokens: ParsedToken[]): void {
  const n = tokens.length;
  if (n === 0) return;
  // main predicate: first VERB; else first AUX; else last nominal; else first token
  let root = tokens.findIndex((t) => t.upos === 'VERB');
  if (root < 0) root = tokens.findIndex((t) => t.upos === 'AUX');
  if (root < 0) {
    for (let i = n - 1; i >= 0; i--) {
      if (NOMINAL.has(tokens[i].upos)) {
        root = i;
        break;
      }
    }
  }
  if (root < 0) root = 0;
  tokens[root].head = 0;
  tokens[root].deprel = 'root';

  let sawSubject = false;
  let sawObject = false;
  for (let i = 0; i < n; i++) {
    if (i === root) continue;
    const tok = tokens[i];
    const lower = tok.form.toLowerCase();
    if (tok.upos === 'PUNCT') {
      tok.head = root + 1;
      tok.deprel = 'punct';
      continue;
    }
    if (tok.upos === 'DET' || tok.upos === 'ADJ' || (tok.upos === 'NUM' && i < n - 1)) {
      const noun = nextIndexWhere(tokens, i + 1, (t) => NOMINAL.has(t.upos));
      if (noun >= 0) {
        tok.head = noun + 1;
        tok.deprel = tok.upos === 'DET' ? 'det' : tok.upos === 'ADJ' ? 'amod' : 'nummod';
        continue;
      }
      if (tok.upos === 'ADJ' && i > root && tokens[root].upos === 'AUX') {
        // trailing adjective after a copular head is the complement
        tok.head = root + 1;
        tok.deprel = 'acomp';
        continue;
      }
    }
    if (tok.upos === 'NOUN' || tok.upos === 'PROPN') {
      // noun-noun compound when the immediate neighbor is nominal
      if (i + 1 < n && NOMINAL.has(tokens[i + 1].upos) && tokens[i + 1].upos !== 'PRON') {
        tok.head = i + 2;
        tok.deprel = 'compound';
        continue;
      }
    }
    if (lower === "'s" && i > 0) {
      tok.head = i; // case marker on the possessor to its left
      tok.deprel = 'case';
      continue;
    }
    if (NOMINAL.has(tok.upos)) {
      const prevPossessive = i >= 2 && tokens[i - 1].form.toLowerCase() === "'s";
      if (prevPossessive) {
        // attach the possessor (two back) to this noun; if the possessor had
        // claimed the subject slot, this head noun takes it instead
        if (tokens[i - 2].deprel === 'nsubj') sawSubject = false;
        tokens[i - 2].head = i + 1;
        tokens[i - 2].deprel = 'nmod:poss';
      }
      const prevAdp = i > 0 && tokens[i - 1].upos === 'ADP';
      if (prevAdp) {
        tokens[i - 1].head = i + 1;
        tokens[i - 1].deprel = 'case';
        tok.head = root + 1;
        tok.deprel = i < root ? 'nmod' : 'obl';
        continue;
      }
      if (i < root && !sawSubject) {
        sawSubject = true;
        tok.head = root + 1;
        tok.deprel = 'nsubj';
        continue;
      }
      if (i > root && !sawObject && tokens[root].upos === 'VERB') {
        sawObject = true;
        tok.head = root + 1;
        tok.deprel = 'obj';
        continue;
      }
      if (i > root && tokens[root].upos === 'AUX' && !sawObject) {
        sawObject = true;
        tok.head = root + 1;
        tok.deprel = 'attr';
        continue;
      }
      tok.head = root + 1;
      tok.deprel = 'dep';
      continue;
    }
    if (tok.upos === 'AUX') {
      tok.head = root + 1;
      tok.deprel = 'aux';
      continue;
    }
    if (tok.upos === 'VERB') {
      tok.head = root + 1;
      tok.deprel = i > root ? 'conj' : 'dep';
      continue;
    }
    if (tok.upos === 'ADV' || lower === 'not') {
      tok.head = root + 1;
      tok.deprel = 'advmod';
      continue;
    }
    if (tok.upos === 'PART' && lower === 'to') {
      const verb = nextIndexWhere(tokens, i + 1, (t) => t.upos === 'VERB');
      tok.head = verb >= 0 ? verb + 1 : root + 1;
      tok.deprel = 'mark';
      continue;
    }
    if (tok.upos === 'CCONJ') {
      const next = nextIndexWhere(
        tokens,
        i + 1,
        (t) => NOMINAL.has(t.upos) || t.upos === 'VERB',
      );
      tok.head = next >= 0 ? next + 1 : root + 1;
      tok.deprel = 'cc';
      continue;
    }
    if (tok.upos === 'SCONJ') {
      const next = nextIndexWhere(tokens, i + 1, (t) => t.upos === 'VERB');
      tok.head = next >= 0 ? next + 1 : root + 1;
      tok.deprel = 'mark';
      continue;
    }
    if (tok.upos === 'ADP') {
      // stranded preposition (no following nominal handled it)
      tok.head = root + 1;
      tok.deprel = 'case';
      continue;
    }
    tok.head = root + 1;
    tok.deprel = 'dep';
  }
  if (!isTree(tokens)) {
    // fall back to a flat tree; never emit malformed output
    for (let i = 0; i < n; i++) {
      if (i === root) continue;
      tokens[i].head = root + 1;
      tokens[i].deprel = tokens[i].upos === 'PUNCT' ? 'punct' : 'dep';
    }
  }
}

export function isTree(tokens: ParsedToken[]): boolean {
  const n = tokens.length;
  const roots = tokens.filter((t) => t.head === 0);
  if (roots.length !== 1) return false;
  const children: number[][] = Array.from({ length: n + 1 }, () => []);
  for (const tok of tokens) {
    if (tok.head < 0 || tok.head > n || tok.head === tok.index) return false;
    children[tok.head].push(tok.index);
  }
  const seen = new Set<number>();
  const stack = [roots[0].index];
  while (stack.length > 0) {
    const i = stack.pop()!;
    if (seen.has(i)) return false;
    seen.add(i);
    stack.push(...children[i]);
  }
  return seen.size === n;
}

export function parseSentence(sentence: string): ParsedToken[] {
  const tokens = tokenize(sentence).map(tagToken);
  // "have"/"do" with no verb to govern are main verbs, not auxiliaries
  const hasVerb = tokens.some((t) => t.upos === 'VERB');
  if (!hasVerb) {
    for (const tok of tokens) {
      if (tok.upos === 'AUX' && (tok.lemma === 'have' || tok.lemma === 'do')) {
        tok.upos = 'VERB';
        break;
      }
    }
  }
  attachHeads(tokens);
  return tokens;
}

function misc(tok: ParsedToken): string {
  const parts: string[] = [];
  if (tok.ner) parts.push(`NER=${tok.ner}`);
  if (tok.glueRight) parts.push('SpaceAfter=No');
  return parts.length > 0 ? parts.join('|') : '_';
}

export function toConllu(docId: string, sentences: ParsedToken[][]): string {
  const lines: string[] = [`# newdoc id = ${docId}`];
  for (const tokens of sentences) {
    lines.push(`# text = ${detokenize(tokens)}`);
    for (const tok of tokens) {
      lines.push(
        [
          String(tok.index),
          tok.form,
          tok.lemma,
          tok.upos,
          '_',
          '_',
          String(tok.head),
          tok.deprel,
          '_',
          misc(tok),
        ].join('\t'),
      );
    }
    lines.push('');
  }
  return lines.join('\n') + '\n';
}

/** Raw text file -> CoNLL-U; blank-line separated blocks become documents. */
export function parseCorpus(text: string, baseId: string): string {
  const documents = splitDocuments(text);
  const blocks: string[] = [];
  documents.forEach((docText, i) => {
    const sentences = splitSentences(docText).map(parseSentence).filter((s) => s.length > 0);
    if (sentences.length > 0) {
      blocks.push(toConllu(`${baseId}-${i + 1}`, sentences));
    }
  });
  return blocks.join('');
}
