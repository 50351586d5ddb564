// Sentence splitting and tokenization for the heuristic pipeline.

export interface RawToken {
  form: string;
  /** no whitespace between this token and the next in the original text */
  glueRight: boolean;
}

const SENTENCE_END = /([.!?])(\s+|$)/g;
const TRAILING_PUNCT = /^(.*?)([.,!?;:]+)$/;

/** Blank-line separated blocks of a raw text file are documents. */
export function splitDocuments(text: string): string[] {
  return text
    .split(/\n\s*\n/)
    .map((block) => block.replace(/\s+/g, ' ').trim())
    .filter((block) => block.length > 0);
}

export function splitSentences(text: string): string[] {
  const sentences: string[] = [];
  let last = 0;
  for (const match of text.matchAll(SENTENCE_END)) {
    const end = match.index! + match[1].length;
    const sentence = text.slice(last, end).trim();
    if (sentence) sentences.push(sentence);
    last = match.index! + match[0].length;
  }
  const tail = text.slice(last).trim();
  if (tail) sentences.push(tail);
  return sentences;
}

/** Split off trailing punctuation and possessive clitics as their own tokens. */
export function tokenize(sentence: string): RawToken[] {
  const out: RawToken[] = [];
  const words = sentence.split(/\s+/).filter((w) => w.length > 0);
  for (const word of words) {
    const pieces: string[] = [];
    let core = word;
    const punct = core.match(TRAILING_PUNCT);
    let trailing = '';
    // keep URLs intact
    if (!/^https?:\/\//.test(core) && punct) {
      core = punct[1];
      trailing = punct[2];
    }
    if (/^[A-Za-z]+'s$/.test(core)) {
      pieces.push(core.slice(0, -2), "'s");
    } else if (core.length > 0) {
      pieces.push(core);
    }
    for (const piece of trailing) pieces.push(piece);
    for (let i = 0; i < pieces.length; i++) {
      out.push({ form: pieces[i], glueRight: i < pieces.length - 1 });
    }
  }
  if (out.length > 0) out[out.length - 1].glueRight = false;
  return out;
}

/** Reconstruct the surface text from tokens (drives `# text` comments). */
export function detokenize(tokens: RawToken[]): string {
  let text = '';
  tokens.forEach((tok, i) => {
    text += tok.form;
    if (i < tokens.length - 1 && !tok.glueRight) text += ' ';
  });
  return text;
}
