"""Four-stage heuristic noise removal: perplexity gate, IsA head-noun filter,
unwanted-object dictionary, and per-subject truncation."""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Protocol

from .mapping import CNRelation, MappedAssertion
from .tables import ScoreTable


@dataclass(frozen=True)
class CleaningConfig:
    max_perplexity: float = 500.0
    max_assertions_per_subject: int = 1000
    max_facets_per_assertion: int = 3

    def __post_init__(self):
        if self.max_perplexity <= 0:
            raise ValueError("max_perplexity must be positive")
        if self.max_assertions_per_subject <= 0:
            raise ValueError("max_assertions_per_subject must be positive")
        if self.max_facets_per_assertion <= 0:
            raise ValueError("max_facets_per_assertion must be positive")


class _Lexicalizable(Protocol):
    subject: str
    relation: CNRelation
    object: str


_TEMPLATES: dict[CNRelation, str] = {
    CNRelation.IS_A: "{s} is a {o}.",
    CNRelation.CAPABLE_OF: "{s} can {o}.",
    CNRelation.AT_LOCATION: "{s} is located in {o}.",
    CNRelation.USED_FOR: "{s} is used for {o}.",
    CNRelation.MADE_OF: "{s} is made of {o}.",
    CNRelation.HAS_PROPERTY: "{s} is {o}.",
    CNRelation.PART_OF: "{s} is part of {o}.",
    CNRelation.CAUSES: "{s} causes {o}.",
    CNRelation.CREATED_BY: "{s} is created by {o}.",
    CNRelation.DEFINED_AS: "{s} is defined as {o}.",
    CNRelation.DESIRES: "{s} wants {o}.",
    CNRelation.HAS_A: "{s} has {o}.",
    CNRelation.HAS_PREREQUISITE: "{s} requires {o}.",
    CNRelation.HAS_SUBEVENT: "{s} involves {o}.",
    CNRelation.MOTIVATED_BY_GOAL: "{s} is motivated by {o}.",
    CNRelation.RECEIVES_ACTION: "{s} is {o}.",
    CNRelation.RELATED_TO: "{s} is related to {o}.",
    CNRelation.SIMILAR_TO: "{s} is similar to {o}.",
    CNRelation.SYMBOL_OF: "{s} is a symbol of {o}.",
}


def lexicalize(a: _Lexicalizable) -> str:
    """Relation-specific sentence template, capitalized, with a final period."""
    text = _TEMPLATES[a.relation].format(s=a.subject, o=a.object)
    return text[0].upper() + text[1:]


def filter_perplexity(
    a: MappedAssertion, scores: ScoreTable, cfg: CleaningConfig
) -> tuple[bool, bool]:
    """(keep, score_missing). Keeps iff score < max (strict); a missing score
    keeps the assertion and flags the miss."""
    score = scores.get(lexicalize(a))
    if score is None:
        return True, True
    return score < cfg.max_perplexity, False


# -- IsA reference ----------------------------------------------------------


_TRAILING_PUNCT = re.compile(r"[\s\.,;:!?\"')\]]+$")


def head_noun(obj: str) -> str:
    """Final token of an object phrase, trailing punctuation stripped."""
    cleaned = _TRAILING_PUNCT.sub("", obj.strip())
    if not cleaned:
        return ""
    return cleaned.split()[-1].lower()


class IsaReference:
    """Trusted IsA head nouns per subject, from a JSON-lines triple file."""

    def __init__(self, heads: dict[str, set[str]]):
        self._heads = heads

    def head_nouns(self, subject: str) -> frozenset[str] | None:
        """None is the sentinel for a subject absent from the reference."""
        heads = self._heads.get(subject.strip().lower())
        return frozenset(heads) if heads is not None else None


def isa_head_nouns(reference: IsaReference, subject: str) -> frozenset[str] | None:
    return reference.head_nouns(subject)


def load_isa_reference(path: str | Path) -> IsaReference:
    heads: dict[str, set[str]] = {}
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError:
                raise ValueError(f"{path}:{line_no}: invalid JSON") from None
            rel = raw.get("rel", "IsA")
            if rel != CNRelation.IS_A.value:
                continue
            subject = str(raw["s"]).strip().lower()
            noun = head_noun(str(raw["o"]))
            if noun:
                heads.setdefault(subject, set()).add(noun)
    return IsaReference(heads)


def filter_isa(a: MappedAssertion, trusted: frozenset[str] | None) -> bool:
    """Keep an IsA assertion iff any object token is a trusted head noun; a
    subject absent from the reference (sentinel None) drops all its IsA rows."""
    if trusted is None:
        return False
    tokens = {w.strip().lower() for w in a.object.split()}
    return bool(tokens & trusted)


# -- unwanted dictionary ----------------------------------------------------


class UnwantedDictionary:
    def __init__(
        self,
        objects: Iterable[str] = (),
        pairs: Iterable[tuple[str, str]] = (),
        regexes: Iterable[str] = (),
        sensitive: Iterable[str] = (),
    ):
        self.objects = {o.strip().lower() for o in objects if o.strip()}
        self.pairs = {(r.strip(), o.strip().lower()) for r, o in pairs}
        self.regexes = [re.compile(p, re.IGNORECASE) for p in regexes]
        self.sensitive = {s.strip().lower() for s in sensitive if s.strip()}

    def rejects(self, a: MappedAssertion) -> str | None:
        """The reason a mapped assertion is unwanted, or None to keep it."""
        obj = a.object.strip().lower()
        if obj in self.objects:
            return "object-blocklist"
        if (a.relation.value, obj) in self.pairs:
            return "pair-blocklist"
        for pattern in self.regexes:
            if pattern.search(a.object):
                return "object-pattern"
        words = {w.strip().lower() for w in a.subject.split()} | {
            w.strip().lower() for w in a.object.split()
        }
        if words & self.sensitive:
            return "sensitive-term"
        return None


def filter_dictionary(a: MappedAssertion, d: UnwantedDictionary) -> bool:
    return d.rejects(a) is None


def load_unwanted(path: str | Path) -> UnwantedDictionary:
    """Parse the sectioned plain-text dictionary format."""
    section = None
    objects: list[str] = []
    pairs: list[tuple[str, str]] = []
    regexes: list[str] = []
    sensitive: list[str] = []
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("[") and line.endswith("]"):
                section = line[1:-1].lower()
                if section not in ("objects", "pairs", "regex", "sensitive"):
                    raise ValueError(f"{path}:{line_no}: unknown section {section!r}")
                continue
            if section == "objects":
                objects.append(line)
            elif section == "pairs":
                rel, sep, obj = line.partition("\t")
                if not sep:
                    raise ValueError(f"{path}:{line_no}: expected Relation<TAB>object")
                CNRelation(rel.strip())  # validate the relation name
                pairs.append((rel.strip(), obj))
            elif section == "regex":
                re.compile(line)
                regexes.append(line)
            elif section == "sensitive":
                sensitive.append(line)
            else:
                raise ValueError(f"{path}:{line_no}: entry before any [section]")
    return UnwantedDictionary(objects, pairs, regexes, sensitive)


def default_unwanted() -> UnwantedDictionary:
    ref = resources.files("cskb.data").joinpath("unwanted.cfg")
    with resources.as_file(ref) as path:
        return load_unwanted(path)


# -- truncation and the staged pipeline --------------------------------------


def _assertion_order(a: MappedAssertion) -> tuple:
    return (-a.frequency, a.subject, a.relation.value, a.object)


def truncate(
    assertions: list[MappedAssertion], cfg: CleaningConfig
) -> list[MappedAssertion]:
    """Keep the most frequent assertions per subject and the most frequent
    facet groups per assertion. Idempotent."""
    by_subject: dict[str, list[MappedAssertion]] = {}
    for a in assertions:
        by_subject.setdefault(a.subject, []).append(a)
    out: list[MappedAssertion] = []
    for subject in sorted(by_subject):
        rows = sorted(by_subject[subject], key=_assertion_order)
        for a in rows[: cfg.max_assertions_per_subject]:
            facets = tuple(
                sorted(a.facets, key=lambda g: (-g.count, g.role.value, g.value))[
                    : cfg.max_facets_per_assertion
                ]
            )
            out.append(replace(a, facets=facets))
    return out


def clean_subject(
    assertions: list[MappedAssertion],
    *,
    ppl_scores: ScoreTable,
    isa_reference: IsaReference,
    dictionary: UnwantedDictionary,
    cfg: CleaningConfig,
) -> tuple[list[MappedAssertion], Counter]:
    """Run the fixed stage order (perplexity, IsA, dictionary, truncation)
    and report per-stage drop counters."""
    counters: Counter = Counter()
    kept: list[MappedAssertion] = []
    for a in assertions:
        keep, missing = filter_perplexity(a, ppl_scores, cfg)
        if missing:
            counters["missing_perplexity"] += 1
        if keep:
            kept.append(a)
        else:
            counters["dropped_perplexity"] += 1
    stage2: list[MappedAssertion] = []
    trusted_cache: dict[str, frozenset[str] | None] = {}
    for a in kept:
        if a.relation is CNRelation.IS_A:
            if a.subject not in trusted_cache:
                trusted_cache[a.subject] = isa_reference.head_nouns(a.subject)
            if not filter_isa(a, trusted_cache[a.subject]):
                counters["dropped_isa"] += 1
                continue
        stage2.append(a)
    stage3: list[MappedAssertion] = []
    for a in stage2:
        if filter_dictionary(a, dictionary):
            stage3.append(a)
        else:
            counters["dropped_dictionary"] += 1
    out = truncate(stage3, cfg)
    counters["dropped_truncated"] += len(stage3) - len(out)
    return out, counters
