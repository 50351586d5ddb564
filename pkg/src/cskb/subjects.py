"""Subject registry: primary concepts, mined subgroups, and mined aspects."""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .clustering import ClusterParams, Linkage, hac
from .conllu import Document, Sentence, noun_chunks
from .extraction import (
    ARTICLES,
    POSS_DEPS,
    QUANTIFIER_WORDS,
    OpenAssertion,
    extract_sentence,
    render_phrase,
)
from .tables import EmbeddingTable

log = logging.getLogger(__name__)

# predicates whose objects are aspect candidates
_ASPECT_PREDICATES = frozenset({"have", "contain"})
_ASPECT_BE_PREFIXES = ("assembled of ", "composed of ")

_POSSESSIVE_PRONOUNS = frozenset({"their", "its", "his", "her"})


@dataclass(frozen=True)
class SubgroupCluster:
    representative: str
    members: tuple[str, ...]
    count: int


class SubjectRegistry:
    """Primary concepts with lemma variants, subgroups and aspects.

    Aspect subjects are stored as full phrases containing their primary
    ("elephant diet"); subgroup subjects end with the primary or one of its
    registered lemmas.
    """

    def __init__(self):
        self.primaries: set[str] = set()
        self.lemmas: dict[str, list[str]] = {}
        self.subgroups: dict[str, list[str]] = {}
        self.aspects: dict[str, list[str]] = {}
        self._alias: dict[str, tuple[str, str]] = {}
        self._owner: dict[str, str] = {}

    # -- construction -------------------------------------------------------

    def add_primary(self, name: str, lemmas: Iterable[str] = ()):
        name = name.strip().lower()
        if not name:
            raise ValueError("primary concept name must be nonempty")
        self.primaries.add(name)
        self.lemmas.setdefault(name, [])
        self.subgroups.setdefault(name, [])
        self.aspects.setdefault(name, [])
        self._alias.setdefault(name, (name, "primary"))
        self._owner.setdefault(name, name)
        for lemma in lemmas:
            self.add_lemma(name, lemma)

    def add_lemma(self, primary: str, lemma: str):
        lemma = lemma.strip().lower()
        if lemma and lemma not in self.lemmas[primary]:
            self.lemmas[primary].append(lemma)
            self._alias.setdefault(lemma, (primary, "primary"))

    def surface_forms(self, primary: str) -> list[str]:
        return [primary, *self.lemmas.get(primary, [])]

    def add_subgroup(self, primary: str, name: str, variants: Iterable[str] = ()):
        name = name.strip().lower()
        forms = self.surface_forms(primary)
        if not any(name == f or name.endswith(" " + f) for f in forms):
            raise ValueError(
                f"subgroup {name!r} must end with its primary {primary!r} or a registered lemma"
            )
        if name in (s.lower() for s in self.subgroups[primary]):
            return
        self.subgroups[primary].append(name)
        self._alias.setdefault(name, (name, "subgroup"))
        self._owner.setdefault(name, primary)
        for variant in variants:
            variant = variant.strip().lower()
            if variant:
                self._alias.setdefault(variant, (name, "subgroup"))

    def add_aspect(self, primary: str, phrase: str):
        phrase = phrase.strip().lower()
        if not phrase:
            return
        forms = self.surface_forms(primary)
        if not any(f in phrase.split() for f in forms):
            full = f"{primary} {phrase}"
        else:
            full = phrase
        if full in (a.lower() for a in self.aspects[primary]):
            return
        self.aspects[primary].append(full)
        self._alias.setdefault(full, (full, "aspect"))
        self._owner.setdefault(full, primary)
        # possessive surface variants resolve to the same aspect subject
        for form in forms:
            self._alias.setdefault(f"{form}'s {phrase}", (full, "aspect"))
            self._alias.setdefault(f"{form} 's {phrase}", (full, "aspect"))

    # -- lookup -------------------------------------------------------------

    def family(self, primary: str) -> list[str]:
        return [primary, *self.subgroups.get(primary, []), *self.aspects.get(primary, [])]

    def stype_of(self, subject: str) -> str | None:
        hit = self._alias.get(subject.strip().lower())
        return hit[1] if hit else None

    def owner_of(self, subject: str) -> str | None:
        """The primary concept a canonical subject belongs to."""
        return self._owner.get(subject.strip().lower())

    def match_subject(self, phrase: str) -> tuple[str, str] | None:
        """Resolve a rendered subject phrase to (canonical subject, stype)."""
        key = phrase.strip().lower()
        if not key:
            return None
        hit = self._alias.get(key)
        if hit:
            return hit
        if "'s " in key:
            return self._alias.get(key.replace("'s ", " ").replace("  ", " "))
        return None

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "primaries": sorted(self.primaries),
            "lemmas": {k: self.lemmas[k] for k in sorted(self.lemmas)},
            "subgroups": {k: self.subgroups[k] for k in sorted(self.subgroups)},
            "aspects": {k: self.aspects[k] for k in sorted(self.aspects)},
            "aliases": {
                k: list(v) for k, v in sorted(self._alias.items())
            },
        }

    @classmethod
    def from_json_dict(cls, raw: Mapping) -> "SubjectRegistry":
        reg = cls()
        lemmas = raw.get("lemmas", {})
        for name in raw.get("primaries", []):
            reg.add_primary(name, lemmas.get(name, []))
        for primary, names in raw.get("subgroups", {}).items():
            for name in names:
                reg.add_subgroup(primary, name)
        for primary, names in raw.get("aspects", {}).items():
            for name in names:
                reg.add_aspect(primary, name)
        for alias, (canon, stype) in raw.get("aliases", {}).items():
            reg._alias.setdefault(alias, (canon, stype))
        return reg


def load_registry(path: str | Path) -> SubjectRegistry:
    """Load a registry from JSON.

    Seed format: `{"elephant": {"lemmas": ["elephants"]}}`; full dumps written
    by save_registry load too.
    """
    with open(path, encoding="utf-8") as f:
        raw = json.load(f)
    if "primaries" in raw:
        return SubjectRegistry.from_json_dict(raw)
    reg = SubjectRegistry()
    for name, spec in raw.items():
        lemmas = spec.get("lemmas", []) if isinstance(spec, Mapping) else list(spec)
        reg.add_primary(name, lemmas)
    return reg


def save_registry(registry: SubjectRegistry, path: str | Path):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(registry.to_json_dict(), f, ensure_ascii=False, indent=1, sort_keys=True)
        f.write("\n")


# ---------------------------------------------------------------------------
# antonym constraints


def load_antonyms(path: str | Path) -> frozenset[frozenset[str]]:
    pairs = set()
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            words = line.lower().split()
            if len(words) != 2:
                raise ValueError(f"antonym line must hold exactly two words: {line!r}")
            pairs.add(frozenset(words))
    return frozenset(pairs)


def _antonymous(a: str, b: str, pairs: frozenset[frozenset[str]]) -> bool:
    wa, wb = set(a.split()), set(b.split())
    for pair in pairs:
        x, y = tuple(pair)
        if (x in wa and y in wb) or (y in wa and x in wb):
            return True
    return False


# ---------------------------------------------------------------------------
# subgroup mining


DEFAULT_SUBGROUP_PARAMS = ClusterParams(linkage=Linkage.AVERAGE, distance_threshold=1.0)


def mine_subgroups(
    chunks: Mapping[str, int] | Iterable[str],
    primary: str,
    registry: SubjectRegistry,
    embeddings: EmbeddingTable,
    *,
    params: ClusterParams = DEFAULT_SUBGROUP_PARAMS,
    antonyms: frozenset[frozenset[str]] = frozenset(),
) -> list[SubgroupCluster]:
    """Cluster corpus noun chunks that end with the primary (or a lemma).

    Candidates without an embedding stay singleton clusters; antonym-marked
    phrase pairs are never co-clustered.
    """
    if primary not in registry.primaries:
        raise ValueError(f"{primary!r} is not a registered primary concept")
    if not isinstance(chunks, Mapping):
        chunks = Counter(chunks)
    forms = registry.surface_forms(primary)
    collected: Counter[str] = Counter()
    for text, count in chunks.items():
        words = text.strip().lower().split()
        while words and words[0] in QUANTIFIER_WORDS:
            words = words[1:]
        key = " ".join(words)
        if any(key != form and key.endswith(" " + form) for form in forms):
            collected[key] += count
    candidates = sorted(collected.items(), key=lambda item: (-item[1], item[0]))
    if not candidates:
        return []

    vectors, weights, with_vec, without_vec = [], [], [], []
    for pos, (text, count) in enumerate(candidates):
        vec = embeddings.get(text)
        if vec is None:
            without_vec.append(pos)
        else:
            vectors.append(vec)
            weights.append(count)
            with_vec.append(pos)

    blocks: list[list[int]] = []
    if with_vec:
        cannot_link = set()
        for i, pi in enumerate(with_vec):
            for j in range(i + 1, len(with_vec)):
                pj = with_vec[j]
                if _antonymous(candidates[pi][0], candidates[pj][0], antonyms):
                    cannot_link.add(frozenset({i, j}))
        partition = hac(vectors, weights=weights, params=params, cannot_link=frozenset(cannot_link))
        blocks.extend([[with_vec[i] for i in block] for block in partition])
    blocks.extend([[pos] for pos in without_vec])

    clusters = []
    for block in blocks:
        members = sorted(
            (candidates[pos] for pos in block), key=lambda item: (-item[1], item[0])
        )
        clusters.append(
            SubgroupCluster(
                representative=members[0][0],
                members=tuple(text for text, _ in members),
                count=sum(count for _, count in members),
            )
        )
    clusters.sort(key=lambda c: (-c.count, c.representative))
    return clusters


# ---------------------------------------------------------------------------
# aspect mining


def focus_subject(doc: Document, registry: SubjectRegistry) -> str | None:
    """The registry primary most frequently mentioned in the document."""
    counts: Counter[str] = Counter()
    surface: dict[str, str] = {}
    for primary in registry.primaries:
        for form in registry.surface_forms(primary):
            surface[form] = primary
    for sentence in doc.sentences:
        for tok in sentence.tokens:
            for text in (tok.form.lower(), tok.lemma.lower()):
                primary = surface.get(text)
                if primary:
                    counts[primary] += 1
                    break
    if not counts:
        return None
    best = min(counts.items(), key=lambda item: (-item[1], item[0]))
    return best[0]


def _possessive_aspects(
    sentence: Sentence, forms: list[str], primary_is_focus: bool
) -> list[str]:
    out = []
    for start, end in noun_chunks(sentence):
        head = end
        for child in sentence.children(head):
            if child.deprel not in POSS_DEPS or not (start <= child.index <= head):
                continue
            possessor = render_phrase(sentence, child.index, drop_deps=frozenset({"case"}))
            possessor = possessor.strip().lower()
            matched = possessor in forms
            if not matched and child.upos == "PRON":
                matched = primary_is_focus and possessor in _POSSESSIVE_PRONOUNS
            if not matched:
                continue
            aspect = render_phrase(
                sentence, head, drop_tokens=frozenset(sentence.subtree(child.index))
            )
            if aspect:
                out.append(aspect)
    return out


def mine_aspects(
    doc: Document,
    primary: str,
    registry: SubjectRegistry,
    assertions: list[OpenAssertion] | None = None,
) -> list[str]:
    """Aspect phrases for a primary: possessive noun chunks and objects of
    have/contain/"be assembled of"/"be composed of" assertions."""
    forms = registry.surface_forms(primary)
    is_focus = focus_subject(doc, registry) == primary
    found: list[str] = []
    for sentence in doc.sentences:
        found.extend(_possessive_aspects(sentence, forms, is_focus))
    if assertions is None:
        assertions = [
            a
            for idx, sentence in enumerate(doc.sentences)
            for a in extract_sentence(sentence, doc.id, idx)
        ]
    for a in assertions:
        if a.subject not in forms:
            continue
        obj = a.object.strip()
        if not obj:
            continue
        if a.predicate in _ASPECT_PREDICATES:
            found.append(obj)
        elif a.predicate == "be":
            for prefix in _ASPECT_BE_PREFIXES:
                if obj.startswith(prefix):
                    found.append(obj[len(prefix):].strip())
                    break
    seen: set[str] = set()
    out = []
    for phrase in found:
        phrase = phrase.strip()
        words = phrase.split()
        while words and words[0] in ARTICLES:
            words = words[1:]
        phrase = " ".join(words)
        key = phrase.lower()
        if phrase and key not in seen and key not in forms:
            seen.add(key)
            out.append(phrase)
    return out
