"""Per-subject document admission and triple frequency thresholding."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Iterable, NamedTuple

import numpy as np

from .extraction import QUANTIFIER_WORDS, OpenAssertion

if TYPE_CHECKING:  # registry is duck-typed here to keep module layering acyclic
    from .subjects import SubjectRegistry


@dataclass(frozen=True)
class FilterConfig:
    min_doc_assertions: int = 3
    max_doc_assertions: int = 40
    doc_similarity_threshold: float = 0.6
    min_triple_frequency: int = 3

    def __post_init__(self):
        if not (0 < self.min_doc_assertions <= self.max_doc_assertions):
            raise ValueError("need 0 < min_doc_assertions <= max_doc_assertions")
        if not (-1.0 <= self.doc_similarity_threshold <= 1.0):
            raise ValueError("doc similarity threshold must be in [-1, 1]")
        if self.min_triple_frequency < 1:
            raise ValueError("min_triple_frequency must be >= 1")


class TripleKey(NamedTuple):
    subject: str
    predicate: str
    object: str


def admit_document(
    n_assertions: int,
    doc_vec: np.ndarray,
    ref_vec: np.ndarray,
    cfg: FilterConfig,
) -> bool:
    """True iff the assertion count is in range and cosine similarity is
    strictly above the threshold. Vectors must be unit-norm, same dimension."""
    doc_vec = np.asarray(doc_vec, dtype=np.float64)
    ref_vec = np.asarray(ref_vec, dtype=np.float64)
    if doc_vec.shape != ref_vec.shape:
        raise ValueError(
            f"dimension mismatch: doc {doc_vec.shape} vs reference {ref_vec.shape}"
        )
    if not (cfg.min_doc_assertions <= n_assertions <= cfg.max_doc_assertions):
        return False
    return float(np.dot(doc_vec, ref_vec)) > cfg.doc_similarity_threshold


def canonicalize_subject(
    assertion: OpenAssertion, registry: "SubjectRegistry"
) -> OpenAssertion | None:
    """Rewrite the subject to its registry canonical form.

    A leading quantifier is stripped and recorded on the assertion; subjects
    not matching any registered primary/subgroup/aspect yield None.
    """
    words = assertion.subject.split()
    quantifier = None
    if len(words) > 1 and words[0] in QUANTIFIER_WORDS:
        quantifier = words[0]
        words = words[1:]
    match = registry.match_subject(" ".join(words))
    if match is None:
        return None
    canonical, _ = match
    return replace(assertion, subject=canonical, quantifier=quantifier)


@dataclass
class AggregateEntry:
    count: int = 0
    facets: Counter = field(default_factory=Counter)
    sources: list[str] = field(default_factory=list)
    quantifiers: Counter = field(default_factory=Counter)
    object_pos: str | None = None
    pos_votes: Counter = field(default_factory=Counter)


def aggregate(assertions: Iterable[OpenAssertion]) -> dict[TripleKey, AggregateEntry]:
    """Count identical triples, pooling facets (with multiplicity), source
    sentences and subject quantifiers. Iteration order is lexicographic, and
    the result is independent of the input order (object categories resolve
    by majority vote, not first-seen)."""
    table: dict[TripleKey, AggregateEntry] = {}
    for a in assertions:
        key = TripleKey(a.subject, a.predicate, a.object)
        entry = table.get(key)
        if entry is None:
            entry = table[key] = AggregateEntry()
        entry.count += 1
        entry.facets.update(a.facets)
        entry.sources.append(a.source)
        if a.quantifier:
            entry.quantifiers[a.quantifier] += 1
        if a.object_pos is not None:
            entry.pos_votes[a.object_pos] += 1
    for entry in table.values():
        entry.sources.sort()
        if entry.pos_votes:
            entry.object_pos = min(
                entry.pos_votes.items(), key=lambda kv: (-kv[1], kv[0])
            )[0]
    return {key: table[key] for key in sorted(table)}


def threshold_triples(
    agg: dict[TripleKey, AggregateEntry], cfg: FilterConfig
) -> dict[TripleKey, AggregateEntry]:
    """Retain entries whose count is at least the minimum frequency."""
    return {
        key: entry for key, entry in agg.items() if entry.count >= cfg.min_triple_frequency
    }
