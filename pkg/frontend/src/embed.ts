// Deterministic feature-hashed text embeddings, L2-normalized.
//
// A stand-in for a sentence-embedding model: similar surface forms land on
// similar vectors (shared word and character-trigram buckets), and the output
// loads anywhere a `key<TAB>v1 .. vd` unit-vector table is expected.

export const DEFAULT_DIM = 64;

const FNV_OFFSET = 0x811c9dc5;
const FNV_PRIME = 0x01000193;

export function fnv1a(text: string): number {
  let hash = FNV_OFFSET;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, FNV_PRIME) >>> 0;
  }
  return hash >>> 0;
}

function addFeature(vec: number[], feature: string, weight: number): void {
  const h = fnv1a(feature);
  const index = h % vec.length;
  const sign = (h >>> 16) & 1 ? 1 : -1;
  vec[index] += sign * weight;
}

export function embedText(text: string, dim: number = DEFAULT_DIM): number[] {
  const vec = new Array<number>(dim).fill(0);
  const words = text.toLowerCase().split(/\s+/).filter((w) => w.length > 0);
  for (const word of words) {
    addFeature(vec, `w:${word}`, 1.0);
    const padded = `^${word}$`;
    for (let i = 0; i + 3 <= padded.length; i++) {
      addFeature(vec, `t:${padded.slice(i, i + 3)}`, 0.5);
    }
  }
  let norm = Math.sqrt(vec.reduce((acc, v) => acc + v * v, 0));
  if (norm === 0) {
    vec[0] = 1.0;
    norm = 1.0;
  }
  return vec.map((v) => v / norm);
}

export function embedLines(lines: string[], dim: number = DEFAULT_DIM): string[] {
  return lines.map((line) => {
    const vec = embedText(line, dim);
    return `${line}\t${vec.map((v) => v.toPrecision(9)).join(' ')}`;
  });
}
