"""Sidecar lookup tables: text embeddings and per-text scores."""

from __future__ import annotations

import logging
import math
import unicodedata
from pathlib import Path
from typing import Iterable

import numpy as np

log = logging.getLogger(__name__)

UNIT_NORM_TOL = 1e-6
POLARITY_SUM_TOL = 1e-6


class TableFormatError(ValueError):
    """Raised for malformed embedding/score table files."""


class MissingKeyError(KeyError):
    """Raised when a required table key is absent."""

    def __str__(self) -> str:  # keep the message readable, not repr-quoted
        return self.args[0] if self.args else ""


def normalize_key(text: str) -> str:
    """Canonical table key: NFC, lowercased, outer whitespace stripped."""
    return unicodedata.normalize("NFC", text).strip().lower()


class EmbeddingTable:
    """Exact-text lookup of unit-norm vectors of a fixed dimension."""

    def __init__(self, entries: dict[str, np.ndarray], dim: int):
        self._entries = entries
        self.dim = dim
        self.misses = 0

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, Iterable[float]]]) -> "EmbeddingTable":
        entries: dict[str, np.ndarray] = {}
        dim: int | None = None
        for key, values in pairs:
            vec = np.asarray(list(values), dtype=np.float64)
            if dim is None:
                dim = vec.shape[0]
            if vec.shape[0] != dim:
                raise TableFormatError(
                    f"inconsistent vector dimension for {key!r}: {vec.shape[0]} != {dim}"
                )
            norm = float(np.linalg.norm(vec))
            if not math.isfinite(norm) or norm == 0.0:
                raise TableFormatError(f"zero or non-finite vector for {key!r}")
            entries[normalize_key(key)] = vec / norm
        if dim is None:
            dim = 0
        return cls(entries, dim)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: str) -> bool:
        return normalize_key(key) in self._entries

    def lookup(self, key: str) -> np.ndarray:
        norm = normalize_key(key)
        vec = self._entries.get(norm)
        if vec is None:
            raise MissingKeyError(f"no embedding for key {key!r}")
        return vec

    def get(self, key: str) -> np.ndarray | None:
        """Like lookup but reports misses instead of raising."""
        norm = normalize_key(key)
        vec = self._entries.get(norm)
        if vec is None:
            self.misses += 1
            log.warning("missing embedding for key %r", key)
        return vec

    def keys(self):
        return self._entries.keys()


def load_embeddings(path: str | Path) -> EmbeddingTable:
    """Load a `key<TAB>v1 v2 ... vd` TSV; vectors are re-normalized on load."""
    pairs = []
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            key, sep, rest = line.partition("\t")
            if not sep or not key:
                raise TableFormatError(f"{path}:{line_no}: expected key<TAB>values")
            try:
                values = [float(v) for v in rest.split()]
            except ValueError:
                raise TableFormatError(f"{path}:{line_no}: non-numeric vector value") from None
            if not values:
                raise TableFormatError(f"{path}:{line_no}: empty vector")
            pairs.append((key, values))
    try:
        return EmbeddingTable.from_pairs(pairs)
    except TableFormatError as exc:
        raise TableFormatError(f"{path}: {exc}") from None


class ScoreTable:
    """Exact-text lookup of a real score per key (perplexity and the like)."""

    def __init__(self, entries: dict[str, float]):
        self._entries = entries
        self.misses = 0

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: str) -> bool:
        return normalize_key(key) in self._entries

    def lookup(self, key: str) -> float:
        norm = normalize_key(key)
        if norm not in self._entries:
            raise MissingKeyError(f"no score for key {key!r}")
        return self._entries[norm]

    def get(self, key: str) -> float | None:
        norm = normalize_key(key)
        score = self._entries.get(norm)
        if score is None:
            self.misses += 1
            log.warning("missing score for key %r", key)
        return score


def load_scores(path: str | Path) -> ScoreTable:
    """Load a `key<TAB>score` TSV of finite scores."""
    entries: dict[str, float] = {}
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            key, sep, rest = line.partition("\t")
            if not sep or not key:
                raise TableFormatError(f"{path}:{line_no}: expected key<TAB>score")
            try:
                score = float(rest.strip())
            except ValueError:
                raise TableFormatError(f"{path}:{line_no}: non-numeric score") from None
            if not math.isfinite(score):
                raise TableFormatError(f"{path}:{line_no}: score must be finite")
            entries[normalize_key(key)] = score
    return ScoreTable(entries)


class PolarityTable:
    """Per-sentence (p_pos, p_neu, p_neg) probability triples."""

    def __init__(self, entries: dict[str, tuple[float, float, float]]):
        self._entries = entries
        self.misses = 0

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: str) -> bool:
        return normalize_key(key) in self._entries

    def get(self, key: str) -> tuple[float, float, float] | None:
        norm = normalize_key(key)
        row = self._entries.get(norm)
        if row is None:
            self.misses += 1
            log.warning("missing polarity for key %r", key)
        return row


def load_polarities(path: str | Path) -> PolarityTable:
    """Load a `key<TAB>p_pos p_neu p_neg` TSV; each row must sum to 1."""
    entries: dict[str, tuple[float, float, float]] = {}
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            key, sep, rest = line.partition("\t")
            if not sep or not key:
                raise TableFormatError(f"{path}:{line_no}: expected key<TAB>p_pos p_neu p_neg")
            parts = rest.split()
            if len(parts) != 3:
                raise TableFormatError(f"{path}:{line_no}: expected three probabilities")
            try:
                probs = tuple(float(v) for v in parts)
            except ValueError:
                raise TableFormatError(f"{path}:{line_no}: non-numeric probability") from None
            if any(not (0.0 <= p <= 1.0) for p in probs):
                raise TableFormatError(f"{path}:{line_no}: probabilities must be in [0,1]")
            if abs(sum(probs) - 1.0) > POLARITY_SUM_TOL:
                raise TableFormatError(f"{path}:{line_no}: probabilities must sum to 1")
            entries[normalize_key(key)] = probs  # type: ignore[assignment]
    return PolarityTable(entries)
