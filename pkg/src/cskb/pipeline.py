"""End-to-end orchestration with per-stage artifacts on disk.

Stages are barriers; work inside a stage is partitioned per document
(extraction) or per subject (consolidation) and merged with fixed sort
orders, so outputs are byte-identical for any worker count.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .cleaning import (
    CleaningConfig,
    IsaReference,
    UnwantedDictionary,
    clean_subject,
    default_unwanted,
    lexicalize,
    load_isa_reference,
    load_unwanted,
)
from .clustering import (
    ClusterParams,
    FacetGroup,
    Linkage,
    TripleCluster,
    cluster_facets,
    cluster_triples,
)
from .config import PipelineConfig
from .conllu import Document, noun_chunks, parse_conllu
from .extraction import (
    DEFAULT_ROLE_RULES,
    Facet,
    FacetRole,
    OpenAssertion,
    RoleRules,
    chunk_phrase,
    extract_sentence,
    load_role_rules,
)
from .filtering import (
    AggregateEntry,
    FilterConfig,
    TripleKey,
    admit_document,
    aggregate,
    canonicalize_subject,
    threshold_triples,
)
from .kbstore import KnowledgeBase, write_kb
from .mapping import CNRelation, MappedAssertion, RelationLexicon, default_lexicon, load_lexicon, map_cluster
from .ranking import CanonicalAssertion, TypicalityWeights, load_modifier_table, rank_subject
from .subjects import (
    SubjectRegistry,
    focus_subject,
    load_antonyms,
    load_registry,
    mine_aspects,
    mine_subgroups,
    save_registry,
)
from .tables import (
    EmbeddingTable,
    PolarityTable,
    ScoreTable,
    load_embeddings,
    load_polarities,
    load_scores,
)

log = logging.getLogger(__name__)

DOC_EMBED_TOKENS = 512


@dataclass
class StageReport:
    stage: str
    n_in: int
    n_out: int
    counters: dict[str, int] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "stage": self.stage,
            "in": self.n_in,
            "out": self.n_out,
            "counters": dict(sorted(self.counters.items())),
        }

    def format(self) -> str:
        extras = ", ".join(f"{k}={v}" for k, v in sorted(self.counters.items()))
        line = f"{self.stage:<8} {self.n_in:>8} -> {self.n_out:<8}"
        return f"{line} {extras}" if extras else line


def _map_ordered(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def doc_embedding_text(doc: Document) -> str:
    """Key for document-level embedding lookups: the first 512 whitespace tokens."""
    return " ".join(doc.text().split()[:DOC_EMBED_TOKENS])


# ---------------------------------------------------------------------------
# stage: extract


def stage_extract(
    docs: list[Document],
    registry: SubjectRegistry,
    *,
    phrase_embeddings: EmbeddingTable,
    rules: RoleRules = DEFAULT_ROLE_RULES,
    antonyms: frozenset[frozenset[str]] = frozenset(),
    subgroup_params: ClusterParams | None = None,
    subgroup_top: int = 10,
    aspect_top: int = 10,
    workers: int = 1,
) -> tuple[list[OpenAssertion], Counter]:
    """Faceted OpenIE over all documents plus subgroup/aspect mining.

    Pronoun subjects resolve to the document focus subject or the assertion
    is dropped. The registry is extended in place with mined subgroups and
    aspects.
    """
    counters: Counter = Counter()

    def work(doc: Document):
        focus = focus_subject(doc, registry)
        assertions: list[OpenAssertion] = []
        dropped = 0
        for idx, sentence in enumerate(doc.sentences):
            for a in extract_sentence(sentence, doc.id, idx, rules):
                if a.subject_is_pronoun:
                    if focus is None:
                        dropped += 1
                        continue
                    a = replace(a, subject=focus, subject_is_pronoun=False)
                assertions.append(a)
        chunks: Counter = Counter()
        for sentence in doc.sentences:
            for span in noun_chunks(sentence):
                text = chunk_phrase(sentence, span)
                if text:
                    chunks[text] += 1
        aspects = {
            primary: mine_aspects(doc, primary, registry, assertions)
            for primary in sorted(registry.primaries)
        }
        return assertions, chunks, aspects, dropped

    results = _map_ordered(work, docs, workers)
    assertions: list[OpenAssertion] = []
    chunk_counts: Counter = Counter()
    aspect_counts: dict[str, Counter] = {p: Counter() for p in registry.primaries}
    for doc_assertions, chunks, aspects, dropped in results:
        assertions.extend(doc_assertions)
        chunk_counts.update(chunks)
        counters["pronoun_subjects_dropped"] += dropped
        for primary, phrases in aspects.items():
            for phrase in phrases:
                aspect_counts[primary][phrase.lower()] += 1

    if subgroup_params is None:
        subgroup_params = ClusterParams(Linkage.AVERAGE, 1.0)
    for primary in sorted(registry.primaries):
        clusters = mine_subgroups(
            chunk_counts,
            primary,
            registry,
            phrase_embeddings,
            params=subgroup_params,
            antonyms=antonyms,
        )
        for cluster in clusters[:subgroup_top]:
            registry.add_subgroup(primary, cluster.representative, cluster.members)
            counters["subgroups_registered"] += 1
        top_aspects = sorted(
            aspect_counts[primary].items(), key=lambda item: (-item[1], item[0])
        )
        for phrase, _ in top_aspects[:aspect_top]:
            registry.add_aspect(primary, phrase)
            counters["aspects_registered"] += 1

    counters["documents"] = len(docs)
    counters["noun_chunks"] = sum(chunk_counts.values())
    return assertions, counters


# ---------------------------------------------------------------------------
# stage: filter


def stage_filter(
    docs: list[Document],
    assertions: list[OpenAssertion],
    registry: SubjectRegistry,
    doc_embeddings: EmbeddingTable | None,
    cfg: FilterConfig,
    *,
    object_pos: dict[int, str] | None = None,
    workers: int = 1,
) -> tuple[dict[TripleKey, AggregateEntry], Counter]:
    """Document admission per primary subject, subject canonicalization,
    aggregation and frequency thresholding."""
    counters: Counter = Counter()
    if object_pos:
        assertions = [
            replace(a, object_pos=object_pos.get(i, a.object_pos))
            for i, a in enumerate(assertions)
        ]

    canonical: list[tuple[OpenAssertion, OpenAssertion | None]] = []
    for a in assertions:
        canonical.append((a, canonicalize_subject(a, registry)))
    counters["assertions_unassigned"] = sum(1 for _, c in canonical if c is None)

    per_doc: dict[str, list[OpenAssertion]] = {}
    for _, c in canonical:
        if c is not None:
            per_doc.setdefault(c.doc_id, []).append(c)

    doc_by_id = {doc.id: doc for doc in docs}
    primaries = sorted(registry.primaries)

    def admit(primary: str) -> set[str]:
        admitted: set[str] = set()
        ref_vec = doc_embeddings.get(primary) if doc_embeddings is not None else None
        for doc_id in sorted(per_doc):
            n = sum(1 for c in per_doc[doc_id] if c.subject == primary)
            if n == 0:
                continue
            doc = doc_by_id.get(doc_id)
            doc_vec = (
                doc_embeddings.get(doc_embedding_text(doc))
                if doc_embeddings is not None and doc is not None
                else None
            )
            if ref_vec is None or doc_vec is None:
                # similarity gate fails open when vectors are unavailable
                ok = cfg.min_doc_assertions <= n <= cfg.max_doc_assertions
                if ok and (doc_embeddings is not None):
                    log.warning(
                        "no document/reference vector for (%s, %s); similarity gate skipped",
                        doc_id,
                        primary,
                    )
            else:
                ok = admit_document(n, doc_vec, ref_vec, cfg)
            if ok:
                admitted.add(doc_id)
        return admitted

    admitted_by_primary = dict(zip(primaries, _map_ordered(admit, primaries, workers)))
    counters["documents_admitted"] = sum(len(v) for v in admitted_by_primary.values())
    counters["documents_rejected"] = sum(
        1
        for primary in primaries
        for doc_id in sorted(per_doc)
        if any(c.subject == primary for c in per_doc[doc_id])
        and doc_id not in admitted_by_primary[primary]
    )

    kept: list[OpenAssertion] = []
    for doc_id in sorted(per_doc):
        for c in per_doc[doc_id]:
            owner = registry.owner_of(c.subject)
            if owner is not None and doc_id in admitted_by_primary.get(owner, set()):
                kept.append(c)
            else:
                counters["assertions_from_rejected_docs"] += 1

    agg = aggregate(kept)
    counters["unique_triples"] = len(agg)
    out = threshold_triples(agg, cfg)
    counters["triples_below_frequency"] = len(agg) - len(out)
    return out, counters


# ---------------------------------------------------------------------------
# stage: cluster


def stage_cluster(
    agg: dict[TripleKey, AggregateEntry],
    triple_embeddings: EmbeddingTable,
    word_embeddings: EmbeddingTable | None,
    triple_params: ClusterParams,
    facet_params: ClusterParams,
    *,
    workers: int = 1,
) -> tuple[list[TripleCluster], Counter]:
    """Per-subject paraphrase clustering, then facet grouping inside clusters."""
    counters: Counter = Counter()
    by_subject: dict[str, dict[TripleKey, AggregateEntry]] = {}
    for key, entry in agg.items():
        by_subject.setdefault(key.subject, {})[key] = entry
    subjects = sorted(by_subject)
    words = word_embeddings or EmbeddingTable({}, 0)

    def work(subject: str) -> list[TripleCluster]:
        clusters = cluster_triples(by_subject[subject], triple_embeddings, triple_params)
        return [
            replace(c, facet_groups=tuple(cluster_facets(c.facets, words, facet_params)))
            for c in clusters
        ]

    out: list[TripleCluster] = []
    for chunk in _map_ordered(work, subjects, workers):
        out.extend(chunk)
    counters["subjects"] = len(subjects)
    counters["clusters"] = len(out)
    if out:
        # reported as a statistic, not an invariant: desk-scale corpora sit
        # nowhere near the two-triples-per-cluster ratio of web-scale runs
        counters["triples_per_cluster_x1000"] = round(1000 * len(agg) / len(out))
    return out, counters


# ---------------------------------------------------------------------------
# stage: map


def stage_map(
    clusters: list[TripleCluster],
    lexicon: RelationLexicon | None = None,
) -> tuple[list[MappedAssertion], Counter]:
    """Schema mapping; clusters that collide on (s, rel, o) merge."""
    counters: Counter = Counter()
    merged: dict[tuple[str, str, str], MappedAssertion] = {}
    for cluster in clusters:
        mapped = map_cluster(cluster, lexicon=lexicon)
        if mapped is None:
            counters["dropped_empty_object"] += 1
            continue
        prior = merged.get(mapped.key)
        if prior is None:
            merged[mapped.key] = mapped
        else:
            counters["merged_on_collision"] += 1
            facets: Counter = Counter()
            for g in prior.facets + mapped.facets:
                facets[(g.role, g.value)] += g.count
            quantifiers: Counter = Counter(dict(prior.quantifiers))
            quantifiers.update(dict(mapped.quantifiers))
            merged[mapped.key] = replace(
                prior,
                frequency=prior.frequency + mapped.frequency,
                facets=tuple(
                    FacetGroup(role, value, count)
                    for (role, value), count in sorted(
                        facets.items(), key=lambda kv: (-kv[1], kv[0][0].value, kv[0][1])
                    )
                ),
                quantifiers=tuple(
                    sorted(quantifiers.items(), key=lambda kv: (-kv[1], kv[0]))
                ),
                sources=tuple(sorted(prior.sources + mapped.sources)),
            )
    out = sorted(merged.values(), key=lambda m: m.key)
    return out, counters


# ---------------------------------------------------------------------------
# stage: clean


def stage_clean(
    mapped: list[MappedAssertion],
    *,
    ppl_scores: ScoreTable,
    isa_reference: IsaReference,
    dictionary: UnwantedDictionary,
    cfg: CleaningConfig,
    workers: int = 1,
) -> tuple[list[MappedAssertion], Counter]:
    by_subject: dict[str, list[MappedAssertion]] = {}
    for a in mapped:
        by_subject.setdefault(a.subject, []).append(a)
    subjects = sorted(by_subject)

    def work(subject: str):
        return clean_subject(
            by_subject[subject],
            ppl_scores=ppl_scores,
            isa_reference=isa_reference,
            dictionary=dictionary,
            cfg=cfg,
        )

    out: list[MappedAssertion] = []
    counters: Counter = Counter()
    for kept, subject_counters in _map_ordered(work, subjects, workers):
        out.extend(kept)
        counters.update(subject_counters)
    return out, counters


# ---------------------------------------------------------------------------
# stage: rank


def stage_rank(
    cleaned: list[MappedAssertion],
    registry: SubjectRegistry,
    *,
    polarities: PolarityTable | None = None,
    weights: TypicalityWeights = TypicalityWeights(),
    modifier_table: dict[str, float] | None = None,
    workers: int = 1,
) -> tuple[list[CanonicalAssertion], Counter]:
    by_subject: dict[str, list[CanonicalAssertion]] = {}
    for a in cleaned:
        stype = registry.stype_of(a.subject) or "primary"
        by_subject.setdefault(a.subject, []).append(
            CanonicalAssertion(
                subject=a.subject,
                relation=a.relation,
                object=a.object,
                facets=a.facets,
                frequency=a.frequency,
                stype=stype,
                quantifiers=a.quantifiers,
                sources=a.sources,
            )
        )
    subjects = sorted(by_subject)
    lookup = polarities.get if polarities is not None else None

    def work(subject: str):
        return rank_subject(
            by_subject[subject],
            polarity_lookup=lookup,
            weights=weights,
            table=modifier_table,
        )

    out: list[CanonicalAssertion] = []
    for ranked in _map_ordered(work, subjects, workers):
        # quantifiers and sources are ranking inputs, not KB content
        out.extend(replace(a, quantifiers=(), sources=()) for a in ranked)
    counters = Counter({"subjects": len(subjects), "assertions": len(out)})
    return out, counters


# ---------------------------------------------------------------------------
# artifact io


def write_assertions(assertions: list[OpenAssertion], path: Path):
    with open(path, "w", encoding="utf-8") as f:
        for a in assertions:
            f.write(a.to_json())
            f.write("\n")
    pos_rows = [(i, a.object_pos) for i, a in enumerate(assertions) if a.object_pos]
    with open(path.with_suffix(".pos.tsv"), "w", encoding="utf-8") as f:
        for i, pos in pos_rows:
            f.write(f"{i}\t{pos}\n")


def read_assertions(path: Path) -> tuple[list[OpenAssertion], dict[int, str]]:
    assertions = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                assertions.append(OpenAssertion.from_json(line))
    object_pos: dict[int, str] = {}
    pos_path = path.with_suffix(".pos.tsv")
    if pos_path.exists():
        with open(pos_path, encoding="utf-8") as f:
            for line in f:
                idx, sep, pos = line.rstrip("\n").partition("\t")
                if sep:
                    object_pos[int(idx)] = pos
    return assertions, object_pos


def _facet_to_dict(facet: Facet, count: int) -> dict:
    return {
        "connector": facet.connector,
        "value": facet.value,
        "role": facet.role.value,
        "count": count,
    }


def write_triples(agg: dict[TripleKey, AggregateEntry], path: Path):
    with open(path, "w", encoding="utf-8") as f:
        for key, entry in agg.items():
            f.write(
                json.dumps(
                    {
                        "s": key.subject,
                        "p": key.predicate,
                        "o": key.object,
                        "count": entry.count,
                        "facets": [
                            _facet_to_dict(facet, count)
                            for facet, count in sorted(
                                entry.facets.items(),
                                key=lambda fc: (-fc[1], fc[0].role.value, fc[0].value),
                            )
                        ],
                        "quantifiers": dict(sorted(entry.quantifiers.items())),
                        "sources": entry.sources,
                        "object_pos": entry.object_pos,
                    },
                    ensure_ascii=False,
                )
            )
            f.write("\n")


def read_triples(path: Path) -> dict[TripleKey, AggregateEntry]:
    out: dict[TripleKey, AggregateEntry] = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            raw = json.loads(line)
            entry = AggregateEntry(
                count=raw["count"],
                facets=Counter(
                    {
                        Facet(g["connector"], g["value"], FacetRole(g["role"])): g["count"]
                        for g in raw["facets"]
                    }
                ),
                sources=list(raw["sources"]),
                quantifiers=Counter(raw["quantifiers"]),
                object_pos=raw.get("object_pos"),
            )
            out[TripleKey(raw["s"], raw["p"], raw["o"])] = entry
    return dict(sorted(out.items()))


def write_clusters(clusters: list[TripleCluster], path: Path):
    with open(path, "w", encoding="utf-8") as f:
        for c in clusters:
            f.write(
                json.dumps(
                    {
                        "rep": list(c.representative),
                        "members": [[k.subject, k.predicate, k.object, n] for k, n in c.members],
                        "count": c.total_count,
                        "facet_groups": [
                            {"role": g.role.value, "value": g.value, "count": g.count}
                            for g in c.facet_groups
                        ],
                        "quantifiers": dict(sorted(dict(c.quantifiers).items())),
                        "sources": list(c.sources),
                        "object_pos": c.object_pos,
                    },
                    ensure_ascii=False,
                )
            )
            f.write("\n")


def read_clusters(path: Path) -> list[TripleCluster]:
    out = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            raw = json.loads(line)
            out.append(
                TripleCluster(
                    representative=TripleKey(*raw["rep"]),
                    members=tuple((TripleKey(s, p, o), n) for s, p, o, n in raw["members"]),
                    total_count=raw["count"],
                    facets=(),
                    quantifiers=tuple(sorted(raw["quantifiers"].items())),
                    sources=tuple(raw["sources"]),
                    object_pos=raw.get("object_pos"),
                    facet_groups=tuple(
                        FacetGroup(FacetRole(g["role"]), g["value"], g["count"])
                        for g in raw["facet_groups"]
                    ),
                )
            )
    return out


def write_mapped(mapped: list[MappedAssertion], path: Path):
    with open(path, "w", encoding="utf-8") as f:
        for m in mapped:
            f.write(
                json.dumps(
                    {
                        "s": m.subject,
                        "rel": m.relation.value,
                        "o": m.object,
                        "freq": m.frequency,
                        "facets": [
                            {"role": g.role.value, "value": g.value, "count": g.count}
                            for g in m.facets
                        ],
                        "quantifiers": dict(sorted(dict(m.quantifiers).items())),
                        "sources": list(m.sources),
                    },
                    ensure_ascii=False,
                )
            )
            f.write("\n")


def read_mapped(path: Path) -> list[MappedAssertion]:
    out = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            raw = json.loads(line)
            out.append(
                MappedAssertion(
                    subject=raw["s"],
                    relation=CNRelation(raw["rel"]),
                    object=raw["o"],
                    facets=tuple(
                        FacetGroup(FacetRole(g["role"]), g["value"], g["count"])
                        for g in raw["facets"]
                    ),
                    frequency=raw["freq"],
                    quantifiers=tuple(sorted(raw["quantifiers"].items())),
                    sources=tuple(raw["sources"]),
                )
            )
    return out


# ---------------------------------------------------------------------------
# full run


@dataclass
class PipelineResources:
    registry: SubjectRegistry
    triple_embeddings: EmbeddingTable
    word_embeddings: EmbeddingTable | None
    doc_embeddings: EmbeddingTable | None
    ppl_scores: ScoreTable
    polarities: PolarityTable | None
    isa_reference: IsaReference
    dictionary: UnwantedDictionary
    lexicon: RelationLexicon
    rules: RoleRules
    antonyms: frozenset[frozenset[str]]
    modifier_table: dict[str, float] | None


def load_resources(config: PipelineConfig) -> PipelineResources:
    return PipelineResources(
        registry=load_registry(config.subjects),
        triple_embeddings=load_embeddings(config.triple_embeddings),
        word_embeddings=(
            load_embeddings(config.word_embeddings) if config.word_embeddings else None
        ),
        doc_embeddings=(
            load_embeddings(config.doc_embeddings) if config.doc_embeddings else None
        ),
        ppl_scores=(
            load_scores(config.perplexity_scores)
            if config.perplexity_scores
            else ScoreTable({})
        ),
        polarities=(
            load_polarities(config.polarity_scores) if config.polarity_scores else None
        ),
        isa_reference=(
            load_isa_reference(config.reference_isa)
            if config.reference_isa
            else IsaReference({})
        ),
        dictionary=(load_unwanted(config.unwanted) if config.unwanted else default_unwanted()),
        lexicon=(load_lexicon(config.lexicon) if config.lexicon else default_lexicon()),
        rules=(load_role_rules(config.facet_rules) if config.facet_rules else DEFAULT_ROLE_RULES),
        antonyms=(load_antonyms(config.antonyms) if config.antonyms else frozenset()),
        modifier_table=(
            load_modifier_table(config.modifier_table) if config.modifier_table else None
        ),
    )


def run(config: PipelineConfig) -> tuple[KnowledgeBase, list[StageReport]]:
    """Execute extract -> filter -> cluster -> map -> clean -> rank -> store,
    writing each stage's JSON-lines artifact under the output directory."""
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    res = load_resources(config)
    with open(config.corpus, encoding="utf-8") as f:
        docs = parse_conllu(f)
    reports: list[StageReport] = []

    assertions, counters = stage_extract(
        docs,
        res.registry,
        phrase_embeddings=res.triple_embeddings,
        rules=res.rules,
        antonyms=res.antonyms,
        subgroup_params=config.subgroup_cluster,
        subgroup_top=config.subgroup_top,
        aspect_top=config.aspect_top,
        workers=config.workers,
    )
    write_assertions(assertions, out_dir / "assertions.jsonl")
    save_registry(res.registry, out_dir / "registry.json")
    reports.append(StageReport("extract", len(docs), len(assertions), dict(counters)))

    agg, counters = stage_filter(
        docs,
        assertions,
        res.registry,
        res.doc_embeddings,
        config.filter,
        workers=config.workers,
    )
    write_triples(agg, out_dir / "triples.jsonl")
    reports.append(StageReport("filter", len(assertions), len(agg), dict(counters)))

    clusters, counters = stage_cluster(
        agg,
        res.triple_embeddings,
        res.word_embeddings,
        config.triple_cluster,
        config.facet_cluster,
        workers=config.workers,
    )
    write_clusters(clusters, out_dir / "clusters.jsonl")
    reports.append(StageReport("cluster", len(agg), len(clusters), dict(counters)))

    mapped, counters = stage_map(clusters, res.lexicon)
    write_mapped(mapped, out_dir / "mapped.jsonl")
    reports.append(StageReport("map", len(clusters), len(mapped), dict(counters)))

    cleaned, counters = stage_clean(
        mapped,
        ppl_scores=res.ppl_scores,
        isa_reference=res.isa_reference,
        dictionary=res.dictionary,
        cfg=config.cleaning,
        workers=config.workers,
    )
    write_mapped(cleaned, out_dir / "cleaned.jsonl")
    reports.append(StageReport("clean", len(mapped), len(cleaned), dict(counters)))

    ranked, counters = stage_rank(
        cleaned,
        res.registry,
        polarities=res.polarities,
        weights=config.weights,
        modifier_table=res.modifier_table,
        workers=config.workers,
    )
    reports.append(StageReport("rank", len(cleaned), len(ranked), dict(counters)))

    kb = KnowledgeBase(
        assertions=ranked,
        registry=res.registry,
        metadata={
            "config": config.snapshot(),
            "stage_counters": {r.stage: r.to_json_dict()["counters"] for r in reports},
        },
    )
    write_kb(kb, out_dir / "kb.jsonl")
    with open(out_dir / "report.json", "w", encoding="utf-8") as f:
        json.dump([r.to_json_dict() for r in reports], f, indent=1, sort_keys=True)
        f.write("\n")
    return kb, reports


# ---------------------------------------------------------------------------
# relative-recall evaluation


@dataclass(frozen=True)
class RecallConfig:
    tau: float = 0.96
    top_k: int | None = None

    def __post_init__(self):
        if not (0.0 <= self.tau <= 1.0):
            raise ValueError("tau must be in [0, 1]")
        if self.top_k is not None and self.top_k < 1:
            raise ValueError("top_k must be >= 1")


@dataclass(frozen=True)
class RecallMatch:
    sentence: str
    best_assertion: str | None
    similarity: float
    matched: bool


# unit-norm float error budget when comparing similarities against tau
SIM_EPS = 1e-9


def eval_recall(
    kb: KnowledgeBase,
    ground_truth: Iterable[str],
    embeddings: EmbeddingTable,
    rc: RecallConfig,
) -> tuple[float, list[RecallMatch]]:
    """Fraction of ground-truth sentences whose most similar lexicalized
    assertion reaches cosine similarity tau (under optional per-subject top-k)."""
    sentences = [s.strip() for s in ground_truth if s.strip()]
    assertions = kb.assertions
    if rc.top_k is not None:
        by_subject: dict[str, list[CanonicalAssertion]] = {}
        for a in assertions:
            by_subject.setdefault(a.subject, []).append(a)
        assertions = []
        for subject in sorted(by_subject):
            rows = sorted(
                by_subject[subject],
                key=lambda a: (-(a.saliency or 0.0), -(a.typicality or 0.0), a.key),
            )
            assertions.extend(rows[: rc.top_k])

    texts = [lexicalize(a) for a in assertions]
    vectors = [embeddings.lookup(t) for t in texts]
    matrix = np.vstack(vectors) if vectors else np.zeros((0, embeddings.dim or 1))

    matches: list[RecallMatch] = []
    matched = 0
    for sentence in sentences:
        vec = embeddings.lookup(sentence)
        if matrix.shape[0] == 0:
            matches.append(RecallMatch(sentence, None, float("-inf"), False))
            continue
        sims = matrix @ vec
        best = int(np.argmax(sims))
        sim = float(sims[best])
        ok = sim >= rc.tau - SIM_EPS
        matched += int(ok)
        matches.append(RecallMatch(sentence, texts[best], sim, ok))
    recall = matched / len(sentences) if sentences else 0.0
    return recall, matches
