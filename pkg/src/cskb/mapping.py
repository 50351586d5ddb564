"""Canonicalization of open triples into a 19-relation fixed schema."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable

from .clustering import FacetGroup, TripleCluster
from .filtering import TripleKey


class CNRelation(str, enum.Enum):
    AT_LOCATION = "AtLocation"
    CAPABLE_OF = "CapableOf"
    CAUSES = "Causes"
    CREATED_BY = "CreatedBy"
    DEFINED_AS = "DefinedAs"
    DESIRES = "Desires"
    HAS_A = "HasA"
    HAS_PREREQUISITE = "HasPrerequisite"
    HAS_PROPERTY = "HasProperty"
    HAS_SUBEVENT = "HasSubevent"
    IS_A = "IsA"
    MADE_OF = "MadeOf"
    MOTIVATED_BY_GOAL = "MotivatedByGoal"
    PART_OF = "PartOf"
    RECEIVES_ACTION = "ReceivesAction"
    RELATED_TO = "RelatedTo"
    SIMILAR_TO = "SimilarTo"
    SYMBOL_OF = "SymbolOf"
    USED_FOR = "UsedFor"


OBJECT_CATEGORIES = (
    "AdjectivePhrase",
    "PassiveVerbPhrase",
    "NounPhrase",
    "ActiveVerbPhrase",
)

ARTICLES = frozenset({"a", "an", "the"})
_BE_FORMS = frozenset({"be", "is", "are", "was", "were", "am", "been", "being"})
_IRREGULAR_LEMMAS = {
    "is": "be", "are": "be", "was": "be", "were": "be", "am": "be",
    "been": "be", "being": "be",
    "has": "have", "had": "have", "having": "have",
    "does": "do", "did": "do",
}
_SIBILANT_ES = ("ses", "xes", "zes", "ches", "shes", "oes")


def word_lemma(word: str) -> str:
    """Light verb lemmatization for pattern matching (not a full lemmatizer)."""
    w = word.lower()
    if w in _IRREGULAR_LEMMAS:
        return _IRREGULAR_LEMMAS[w]
    if len(w) > 4 and w.endswith("ies"):
        return w[:-3] + "y"
    if len(w) > 3 and w.endswith(_SIBILANT_ES):
        return w[:-2]
    if len(w) > 2 and w.endswith("s") and not w.endswith("ss"):
        return w[:-1]
    return w


def _word_matches(word: str, pattern_word: str) -> bool:
    w = word.lower()
    return w == pattern_word or word_lemma(w) == pattern_word


@dataclass(frozen=True)
class LexiconMatch:
    relation: CNRelation
    pattern: tuple[str, ...]
    consumed_object_words: int  # leading object words covered, articles included


class RelationLexicon:
    """Open-predicate patterns per target relation.

    Each relation carries 1-6 lemmatized patterns; patterns are unique across
    relations except the empty pattern, which stands for the bare-verb
    CapableOf fallback. Multiword patterns may extend across the predicate
    into the leading words of the object (skipping articles), so
    <s, "be", "part of a herd"> matches the pattern "be part of".
    """

    def __init__(self, pairs: Iterable[tuple[CNRelation, str]]):
        per_relation: dict[CNRelation, list[tuple[str, ...]]] = {}
        seen: dict[tuple[str, ...], CNRelation] = {}
        self._patterns: list[tuple[CNRelation, tuple[str, ...]]] = []
        for relation, raw in pairs:
            words = tuple(raw.lower().split())
            if not words:
                if relation is not CNRelation.CAPABLE_OF:
                    raise ValueError("only CapableOf may carry the empty pattern")
            elif words in seen:
                raise ValueError(
                    f"pattern {' '.join(words)!r} assigned to both "
                    f"{seen[words].value} and {relation.value}"
                )
            else:
                seen[words] = relation
            per_relation.setdefault(relation, []).append(words)
            self._patterns.append((relation, words))
        for relation in CNRelation:
            count = len(per_relation.get(relation, []))
            if not (1 <= count <= 6):
                raise ValueError(f"{relation.value} must have 1-6 patterns, got {count}")
        # longest pattern first so specific phrasings win
        self._ordered = sorted(
            ((rel, words) for rel, words in self._patterns if words),
            key=lambda rw: (-len(rw[1]), rw[0].value, rw[1]),
        )

    def patterns(self) -> list[tuple[CNRelation, tuple[str, ...]]]:
        return list(self._patterns)

    def match(self, predicate: str, obj: str) -> LexiconMatch | None:
        pred_words = predicate.split()
        obj_words = obj.split()
        for relation, pattern in self._ordered:
            consumed = _match_pattern(pattern, pred_words, obj_words)
            if consumed is not None:
                return LexiconMatch(relation, pattern, consumed)
        return None


def _match_pattern(
    pattern: tuple[str, ...], pred_words: list[str], obj_words: list[str]
) -> int | None:
    if len(pattern) < len(pred_words):
        return None
    for word, pattern_word in zip(pred_words, pattern):
        if not _word_matches(word, pattern_word):
            return None
    rest = pattern[len(pred_words):]
    i = 0
    for pattern_word in rest:
        while i < len(obj_words) and obj_words[i].lower() in ARTICLES:
            i += 1
        if i >= len(obj_words) or not _word_matches(obj_words[i], pattern_word):
            return None
        i += 1
    return i


def load_lexicon(path: str | Path) -> RelationLexicon:
    """Load `Relation<TAB>pattern` lines (empty pattern = CapableOf fallback)."""
    pairs: list[tuple[CNRelation, str]] = []
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            # a bare relation name declares the empty pattern (trailing tabs
            # do not survive editors)
            name, _, pattern = line.partition("\t")
            try:
                relation = CNRelation(name.strip())
            except ValueError:
                raise ValueError(f"{path}:{line_no}: unknown relation {name!r}") from None
            pairs.append((relation, pattern.strip()))
    return RelationLexicon(pairs)


def default_lexicon() -> RelationLexicon:
    ref = resources.files("cskb.data").joinpath("relation_lexicon.tsv")
    with resources.as_file(ref) as path:
        return load_lexicon(path)


_DEFAULT: RelationLexicon | None = None


def _lexicon(lexicon: RelationLexicon | None) -> RelationLexicon:
    global _DEFAULT
    if lexicon is not None:
        return lexicon
    if _DEFAULT is None:
        _DEFAULT = default_lexicon()
    return _DEFAULT


def predict_relation(
    t: TripleKey,
    object_pos: str,
    lexicon: RelationLexicon | None = None,
) -> CNRelation:
    """Fixed-schema relation for an open triple.

    Lexicon patterns win; a bare "be" predicate disambiguates on the object
    phrase category (adjective -> HasProperty, passive verb phrase ->
    ReceivesAction, else IsA); any other predicate falls back to CapableOf.
    """
    if object_pos not in OBJECT_CATEGORIES:
        raise ValueError(f"unknown object phrase category {object_pos!r}")
    match = _lexicon(lexicon).match(t.predicate, t.object)
    if match is not None:
        return match.relation
    if _is_bare_be(t.predicate):
        if object_pos == "AdjectivePhrase":
            return CNRelation.HAS_PROPERTY
        if object_pos == "PassiveVerbPhrase":
            return CNRelation.RECEIVES_ACTION
        return CNRelation.IS_A
    return CNRelation.CAPABLE_OF


def _is_bare_be(predicate: str) -> bool:
    words = predicate.split()
    return len(words) == 1 and words[0].lower() in _BE_FORMS


def _strip_leading(words: list[str], drop: frozenset[str]) -> list[str]:
    while words and words[0].lower() in drop:
        words = words[1:]
    return words


def rewrite_object(
    t: TripleKey,
    relation: CNRelation,
    lexicon: RelationLexicon | None = None,
) -> str | None:
    """Object phrase of the canonicalized triple; None signals a drop.

    Pattern words consumed from the object are removed; relation-specific
    trims then apply (articles for PartOf/SymbolOf, leading "to" for Desires,
    auxiliary be-forms for ReceivesAction, leading "for"/"to" for UsedFor,
    degree adverbs for HasProperty). The CapableOf fallback prefixes the
    lemmatized predicate onto the object.
    """
    match = _lexicon(lexicon).match(t.predicate, t.object)
    words = t.object.split()
    if match is not None and match.relation is relation:
        words = words[match.consumed_object_words:]

    if relation is CNRelation.CAPABLE_OF:
        if match is None:
            pred = [word_lemma(w) for w in t.predicate.split()]
            words = pred + words
    elif relation in (CNRelation.PART_OF, CNRelation.SYMBOL_OF):
        if match is None:
            marker = "part of" if relation is CNRelation.PART_OF else "symbol of"
            flat = " ".join(w.lower() for w in words)
            for prefix in (f"a {marker} ", f"{marker} "):
                if flat.startswith(prefix):
                    words = words[len(prefix.split()):]
                    break
        words = _strip_leading(words, ARTICLES)
    elif relation is CNRelation.DESIRES:
        words = _strip_leading(words, frozenset({"to"}))
    elif relation is CNRelation.HAS_PROPERTY:
        words = _strip_leading(words, frozenset({"very", "really"}))
    elif relation is CNRelation.RECEIVES_ACTION:
        while words and words[0].lower() in _BE_FORMS:
            words = words[1:]
    elif relation is CNRelation.USED_FOR:
        if words and words[0].lower() in ("for", "to"):
            words = words[1:]

    text = " ".join(words).strip()
    return text or None


@dataclass(frozen=True)
class MappedAssertion:
    subject: str
    relation: CNRelation
    object: str
    facets: tuple[FacetGroup, ...]
    frequency: int
    quantifiers: tuple[tuple[str, int], ...] = ()
    sources: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.object:
            raise ValueError("mapped assertion object must be nonempty")

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.subject, self.relation.value, self.object)


def map_cluster(
    cluster: TripleCluster,
    pos_of: Callable[[TripleKey], str] | None = None,
    lexicon: RelationLexicon | None = None,
) -> MappedAssertion | None:
    """Canonicalize a cluster via its representative; None when the rewrite
    empties the object (the assertion is discarded)."""
    t = cluster.representative
    if pos_of is not None:
        object_pos = pos_of(t)
    else:
        object_pos = cluster.object_pos or "NounPhrase"
    relation = predict_relation(t, object_pos, lexicon)
    obj = rewrite_object(t, relation, lexicon)
    if obj is None:
        return None
    return MappedAssertion(
        subject=t.subject,
        relation=relation,
        object=obj,
        facets=cluster.facet_groups,
        frequency=cluster.total_count,
        quantifiers=cluster.quantifiers,
        sources=cluster.sources,
    )
