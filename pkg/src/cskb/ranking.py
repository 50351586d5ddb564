"""Saliency and typicality scoring of canonicalized assertions."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .clustering import FacetGroup
from .extraction import FacetRole
from .mapping import CNRelation

# frequency modifiers: adverbs and subject quantifiers. The source table has
# an unassigned 0.2 band; no word maps to it (see data/modifier_scores.tsv).
MODIFIER_SCORES: dict[str, float] = {
    "always": 1.0, "all": 1.0, "every": 1.0,
    "typically": 0.9, "mostly": 0.9, "mainly": 0.9, "most": 0.9,
    "usually": 0.8, "normally": 0.8, "regularly": 0.8,
    "frequently": 0.8, "commonly": 0.8,
    "many": 0.7,
    "often": 0.6,
    "some": 0.5,
    "sometimes": 0.4,
    "occasionally": 0.3, "few": 0.3,
    "hardly": 0.1, "rarely": 0.1,
    "no": 0.0, "none": 0.0,
}

DEFAULT_MODIFIER_SCORE = 0.5

POLARITY_SUM_TOL = 1e-6


def load_modifier_table(path: str | Path) -> dict[str, float]:
    """Load a `word<TAB>score` override of the built-in modifier table."""
    table: dict[str, float] = {}
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            word, sep, score = line.partition("\t")
            if not sep:
                raise ValueError(f"{path}:{line_no}: expected word<TAB>score")
            value = float(score)
            if not (0.0 <= value <= 1.0):
                raise ValueError(f"{path}:{line_no}: score must be in [0,1]")
            table[word.strip().lower()] = value
    return table


@dataclass(frozen=True)
class TypicalityWeights:
    modifier: float = 0.324
    frequency: float = 0.428
    neutrality: float = 0.088


DEFAULT_WEIGHTS = TypicalityWeights()


@dataclass(frozen=True)
class CanonicalAssertion:
    """A final KB record. `quantifiers` and `sources` are ranking inputs that
    do not serialize; scores are attached by rank_subject."""

    subject: str
    relation: CNRelation
    object: str
    facets: tuple[FacetGroup, ...]
    frequency: int
    saliency: float | None = None
    typicality: float | None = None
    stype: str = "primary"
    quantifiers: tuple[tuple[str, int], ...] = ()
    sources: tuple[str, ...] = ()

    def __post_init__(self):
        if self.frequency < 1:
            raise ValueError("frequency must be >= 1")
        for score in (self.saliency, self.typicality):
            if score is not None and not (0.0 <= score <= 1.0):
                raise ValueError("scores must lie in [0, 1]")

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.subject, self.relation.value, self.object)


def saliency(count: int, min_count: int, max_count: int) -> float:
    """Log-normalized reporting frequency within a subject.

    `(log count - log min) / (log max - log min)`; the degenerate min == max
    case scores 1.0 (a sole assertion is maximally salient among its peers).
    """
    if not (1 <= min_count <= count <= max_count):
        raise ValueError(
            f"need 1 <= min <= count <= max, got ({min_count}, {count}, {max_count})"
        )
    if min_count == max_count:
        return 1.0
    return (math.log(count) - math.log(min_count)) / (
        math.log(max_count) - math.log(min_count)
    )


def modifier_score(
    a: CanonicalAssertion, table: Mapping[str, float] | None = None
) -> float:
    """Mean of modifier-table hits over Degree-facet adverbs and subject
    quantifiers across the cluster; 0.5 when nothing matches."""
    table = MODIFIER_SCORES if table is None else table
    hits: list[float] = []
    for group in a.facets:
        if group.role is not FacetRole.DEGREE:
            continue
        for word in group.value.split():
            score = table.get(word.lower())
            if score is not None:
                hits.extend([score] * group.count)
    for word, count in a.quantifiers:
        score = table.get(word.lower())
        if score is not None:
            hits.extend([score] * count)
    if not hits:
        return DEFAULT_MODIFIER_SCORE
    return sum(hits) / len(hits)


def neutrality(polarities: Iterable[tuple[float, float, float]]) -> float:
    """1.0 iff the averaged polarity over source sentences is neutral-dominant.

    Each (p_pos, p_neu, p_neg) must sum to 1; no sentences means neutral.
    """
    rows = list(polarities)
    if not rows:
        return 1.0
    for row in rows:
        if len(row) != 3 or any(not (0.0 <= p <= 1.0) for p in row):
            raise ValueError(f"malformed polarity triple {row!r}")
        if abs(sum(row) - 1.0) > POLARITY_SUM_TOL:
            raise ValueError(f"polarity triple must sum to 1: {row!r}")
    pos = sum(r[0] for r in rows) / len(rows)
    neu = sum(r[1] for r in rows) / len(rows)
    neg = sum(r[2] for r in rows) / len(rows)
    return 1.0 if neu >= pos and neu >= neg else 0.0


def typicality(
    modifier: float,
    frequency: float,
    neutral: float,
    weights: TypicalityWeights = DEFAULT_WEIGHTS,
) -> float:
    """Linear regression over the three features."""
    for name, value in (("modifier", modifier), ("frequency", frequency), ("neutrality", neutral)):
        if not (0.0 <= value <= 1.0):
            raise ValueError(f"{name} feature must be in [0, 1], got {value}")
    return (
        weights.modifier * modifier
        + weights.frequency * frequency
        + weights.neutrality * neutral
    )


def fit_typicality_weights(path: str | Path) -> TypicalityWeights:
    """Least-squares re-derivation of the regression weights from a labeled
    TSV (`modifier<TAB>frequency<TAB>neutrality<TAB>typicality` per row).

    Not in the default scoring path; the shipped constants stay authoritative.
    """
    import numpy as np

    features: list[list[float]] = []
    labels: list[float] = []
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ValueError(f"{path}:{line_no}: expected four tab-separated columns")
            row = [float(v) for v in parts]
            features.append(row[:3])
            labels.append(row[3])
    if len(features) < 3:
        raise ValueError("need at least three labeled rows to fit weights")
    solution, *_ = np.linalg.lstsq(np.asarray(features), np.asarray(labels), rcond=None)
    return TypicalityWeights(*(float(w) for w in solution))


def rank_subject(
    assertions: list[CanonicalAssertion],
    *,
    polarity_lookup: Callable[[str], tuple[float, float, float] | None] | None = None,
    weights: TypicalityWeights = DEFAULT_WEIGHTS,
    table: Mapping[str, float] | None = None,
) -> list[CanonicalAssertion]:
    """Attach saliency and typicality over one subject's assertions and sort
    by saliency (ties: typicality, then triple key)."""
    if not assertions:
        return []
    counts = [a.frequency for a in assertions]
    lo, hi = min(counts), max(counts)
    ranked = []
    for a in assertions:
        pi = saliency(a.frequency, lo, hi)
        rows = []
        if polarity_lookup is not None:
            for source in a.sources:
                row = polarity_lookup(source)
                if row is not None:
                    rows.append(row)
        theta = typicality(modifier_score(a, table), pi, neutrality(rows), weights)
        ranked.append(replace(a, saliency=pi, typicality=theta))
    ranked.sort(key=lambda a: (-a.saliency, -a.typicality, a.key))
    return ranked
