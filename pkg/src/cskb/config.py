"""Pipeline configuration: TOML file, CSKB_* environment variables, CLI flags."""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .cleaning import CleaningConfig
from .clustering import ClusterParams, Linkage
from .filtering import FilterConfig
from .ranking import TypicalityWeights


@dataclass(frozen=True)
class PipelineConfig:
    corpus: Path
    subjects: Path
    out_dir: Path
    triple_embeddings: Path
    word_embeddings: Path | None = None
    doc_embeddings: Path | None = None
    perplexity_scores: Path | None = None
    polarity_scores: Path | None = None
    reference_isa: Path | None = None
    lexicon: Path | None = None
    unwanted: Path | None = None
    antonyms: Path | None = None
    facet_rules: Path | None = None
    modifier_table: Path | None = None
    workers: int = 1
    filter: FilterConfig = field(default_factory=FilterConfig)
    triple_cluster: ClusterParams = field(
        default_factory=lambda: ClusterParams(Linkage.WARD, 0.5)
    )
    facet_cluster: ClusterParams = field(
        default_factory=lambda: ClusterParams(Linkage.AVERAGE, 1.0)
    )
    subgroup_cluster: ClusterParams = field(
        default_factory=lambda: ClusterParams(Linkage.AVERAGE, 1.0)
    )
    cleaning: CleaningConfig = field(default_factory=CleaningConfig)
    weights: TypicalityWeights = field(default_factory=TypicalityWeights)
    subgroup_top: int = 10
    aspect_top: int = 10

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("worker count must be >= 1")
        for name in (
            "corpus",
            "subjects",
            "triple_embeddings",
            "word_embeddings",
            "doc_embeddings",
            "perplexity_scores",
            "polarity_scores",
            "reference_isa",
            "lexicon",
            "unwanted",
            "antonyms",
            "facet_rules",
            "modifier_table",
        ):
            path = getattr(self, name)
            if path is not None and not Path(path).exists():
                raise FileNotFoundError(f"{name} path does not exist: {path}")

    def snapshot(self) -> dict:
        """Config values for KB metadata. Excludes the worker count, which
        must not affect outputs."""
        return {
            "corpus": str(self.corpus),
            "subjects": str(self.subjects),
            "filter": {
                "min_doc_assertions": self.filter.min_doc_assertions,
                "max_doc_assertions": self.filter.max_doc_assertions,
                "doc_similarity_threshold": self.filter.doc_similarity_threshold,
                "min_triple_frequency": self.filter.min_triple_frequency,
            },
            "clustering": {
                "triple_linkage": self.triple_cluster.linkage.value,
                "triple_threshold": self.triple_cluster.distance_threshold,
                "facet_threshold": self.facet_cluster.distance_threshold,
                "subgroup_threshold": self.subgroup_cluster.distance_threshold,
            },
            "cleaning": {
                "max_perplexity": self.cleaning.max_perplexity,
                "max_assertions_per_subject": self.cleaning.max_assertions_per_subject,
                "max_facets_per_assertion": self.cleaning.max_facets_per_assertion,
            },
            "weights": {
                "modifier": self.weights.modifier,
                "frequency": self.weights.frequency,
                "neutrality": self.weights.neutrality,
            },
            "subgroup_top": self.subgroup_top,
            "aspect_top": self.aspect_top,
        }


# environment overrides; values parse like their TOML counterparts
ENV_VARS = {
    "CSKB_MIN_DOC_ASSERTIONS": ("filter", "min_doc_assertions", int),
    "CSKB_MAX_DOC_ASSERTIONS": ("filter", "max_doc_assertions", int),
    "CSKB_DOC_SIM": ("filter", "doc_similarity", float),
    "CSKB_MIN_FREQ": ("filter", "min_triple_frequency", int),
    "CSKB_TRIPLE_THRESHOLD": ("clustering", "triple_threshold", float),
    "CSKB_FACET_THRESHOLD": ("clustering", "facet_threshold", float),
    "CSKB_LINKAGE": ("clustering", "linkage", str),
    "CSKB_MAX_PPL": ("cleaning", "max_perplexity", float),
    "CSKB_TOP_K": ("cleaning", "max_assertions_per_subject", int),
    "CSKB_TOP_FACETS": ("cleaning", "max_facets_per_assertion", int),
    "CSKB_WORKERS": (None, "workers", int),
    "CSKB_OUT_DIR": (None, "out_dir", str),
}


def _resolve(base: Path, value: Any) -> Path | None:
    if value is None:
        return None
    path = Path(value)
    return path if path.is_absolute() else base / path


def load_config(
    toml_path: str | Path | None = None,
    env: Mapping[str, str] | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> PipelineConfig:
    """Merge a TOML file, CSKB_* environment variables, and explicit overrides
    (strongest last). Relative paths resolve against the TOML file location."""
    env = os.environ if env is None else env
    raw: dict[str, Any] = {}
    base = Path.cwd()
    if toml_path is not None:
        toml_path = Path(toml_path)
        base = toml_path.parent
        with open(toml_path, "rb") as f:
            raw = tomllib.load(f)

    for var, (section, key, cast) in ENV_VARS.items():
        if var in env:
            value = cast(env[var])
            if section is None:
                raw[key] = value
            else:
                raw.setdefault(section, {})[key] = value

    if overrides:
        for dotted, value in overrides.items():
            if value is None:
                continue
            if "." in dotted:
                section, key = dotted.split(".", 1)
                raw.setdefault(section, {})[key] = value
            else:
                raw[dotted] = value

    def section(name: str) -> dict:
        return dict(raw.get(name, {}))

    embeddings = section("embeddings")
    scores = section("scores")
    filt = section("filter")
    clustering = section("clustering")
    mapping_cfg = section("mapping")
    cleaning = section("cleaning")
    ranking_cfg = section("ranking")
    extraction_cfg = section("extraction")

    for required in ("corpus", "subjects", "out_dir"):
        if required not in raw:
            raise ValueError(f"config is missing required key {required!r}")
    if "triples" not in embeddings:
        raise ValueError("config is missing embeddings.triples")

    linkage = Linkage(str(clustering.get("linkage", "ward")).lower())
    weights = ranking_cfg.get("weights")
    if weights is not None:
        if len(weights) != 3:
            raise ValueError("ranking.weights must hold three numbers (m, f, n)")
        weights = TypicalityWeights(*[float(w) for w in weights])
    else:
        weights = TypicalityWeights()

    return PipelineConfig(
        corpus=_resolve(base, raw["corpus"]),
        subjects=_resolve(base, raw["subjects"]),
        out_dir=_resolve(base, raw["out_dir"]),
        triple_embeddings=_resolve(base, embeddings["triples"]),
        word_embeddings=_resolve(base, embeddings.get("words")),
        doc_embeddings=_resolve(base, embeddings.get("docs")),
        perplexity_scores=_resolve(base, scores.get("perplexity")),
        polarity_scores=_resolve(base, scores.get("polarity")),
        reference_isa=_resolve(base, cleaning.get("reference_isa")),
        lexicon=_resolve(base, mapping_cfg.get("lexicon")),
        unwanted=_resolve(base, cleaning.get("dictionary")),
        antonyms=_resolve(base, extraction_cfg.get("antonyms")),
        facet_rules=_resolve(base, extraction_cfg.get("facet_rules")),
        modifier_table=_resolve(base, ranking_cfg.get("modifier_table")),
        workers=int(raw.get("workers", 1)),
        filter=FilterConfig(
            min_doc_assertions=int(filt.get("min_doc_assertions", 3)),
            max_doc_assertions=int(filt.get("max_doc_assertions", 40)),
            doc_similarity_threshold=float(filt.get("doc_similarity", 0.6)),
            min_triple_frequency=int(filt.get("min_triple_frequency", 3)),
        ),
        triple_cluster=ClusterParams(
            linkage, float(clustering.get("triple_threshold", 0.5))
        ),
        facet_cluster=ClusterParams(
            Linkage.AVERAGE, float(clustering.get("facet_threshold", 1.0))
        ),
        subgroup_cluster=ClusterParams(
            Linkage.AVERAGE, float(clustering.get("subgroup_threshold", 1.0))
        ),
        cleaning=CleaningConfig(
            max_perplexity=float(cleaning.get("max_perplexity", 500.0)),
            max_assertions_per_subject=int(cleaning.get("max_assertions_per_subject", 1000)),
            max_facets_per_assertion=int(cleaning.get("max_facets_per_assertion", 3)),
        ),
        weights=weights,
        subgroup_top=int(extraction_cfg.get("subgroup_top", 10)),
        aspect_top=int(extraction_cfg.get("aspect_top", 10)),
    )
