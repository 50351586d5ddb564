"""Command-line entry points for the pipeline stages and evaluation harness."""

from __future__ import annotations

import logging
from pathlib import Path

import click

from . import pipeline as pl
from .config import PipelineConfig, load_config
from .kbstore import query as kb_query
from .kbstore import read_kb, stats as kb_stats, write_kb, KnowledgeBase
from .pipeline import RecallConfig, eval_recall
from .tables import load_embeddings


def _common_overrides(kwargs: dict) -> dict:
    """Map CLI flag names onto dotted config keys, dropping unset flags."""
    mapping = {
        "min_doc_assertions": "filter.min_doc_assertions",
        "max_doc_assertions": "filter.max_doc_assertions",
        "doc_sim": "filter.doc_similarity",
        "min_freq": "filter.min_triple_frequency",
        "triple_threshold": "clustering.triple_threshold",
        "facet_threshold": "clustering.facet_threshold",
        "linkage": "clustering.linkage",
        "lexicon": "mapping.lexicon",
        "max_ppl": "cleaning.max_perplexity",
        "top_k": "cleaning.max_assertions_per_subject",
        "top_facets": "cleaning.max_facets_per_assertion",
        "workers": "workers",
        "out_dir": "out_dir",
    }
    out = {}
    for flag, dotted in mapping.items():
        value = kwargs.get(flag)
        if value is not None:
            out[dotted] = value
    weights = kwargs.get("weights")
    if weights:
        out["ranking.weights"] = [float(w) for w in weights.split(",")]
    return out


def _load(config_path: str | None, kwargs: dict) -> PipelineConfig:
    try:
        return load_config(config_path, overrides=_common_overrides(kwargs))
    except (ValueError, FileNotFoundError) as exc:
        raise click.ClickException(str(exc)) from None


stage_options = [
    click.option("--config", "config_path", type=click.Path(exists=True), help="TOML config file."),
    click.option("--out-dir", type=click.Path(), help="Artifact directory."),
    click.option("--workers", type=int, help="Worker count (default 1)."),
    click.option("--min-doc-assertions", type=int, help="Document admission lower bound."),
    click.option("--max-doc-assertions", type=int, help="Document admission upper bound."),
    click.option("--doc-sim", type=float, help="Document similarity threshold (strict)."),
    click.option("--min-freq", type=int, help="Minimum triple frequency."),
    click.option("--triple-threshold", type=float, help="Triple clustering distance threshold."),
    click.option("--facet-threshold", type=float, help="Facet clustering distance threshold."),
    click.option("--linkage", type=click.Choice(["ward", "average"]), help="Triple linkage."),
    click.option("--lexicon", type=click.Path(exists=True), help="Relation lexicon file."),
    click.option("--max-ppl", type=float, help="Perplexity cutoff (strict)."),
    click.option("--top-k", type=int, help="Assertions kept per subject."),
    click.option("--top-facets", type=int, help="Facet groups kept per assertion."),
    click.option("--weights", type=str, help="Typicality weights as m,f,n."),
]


def with_stage_options(fn):
    for option in reversed(stage_options):
        fn = option(fn)
    return fn


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log at INFO level.")
def main(verbose: bool):
    """Build and query a commonsense knowledge base from parsed corpora."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _echo_report(reports):
    for report in reports:
        click.echo(report.format())


@main.command()
@with_stage_options
def run(config_path, **kwargs):
    """Run the full pipeline and write the KB."""
    config = _load(config_path, kwargs)
    kb, reports = pl.run(config)
    _echo_report(reports)
    click.echo(f"wrote {len(kb.assertions)} assertions to {Path(config.out_dir) / 'kb.jsonl'}")


@main.command()
@with_stage_options
def extract(config_path, **kwargs):
    """Faceted OpenIE plus subgroup/aspect mining."""
    config = _load(config_path, kwargs)
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    res = pl.load_resources(config)
    with open(config.corpus, encoding="utf-8") as f:
        docs = pl.parse_conllu(f)
    assertions, counters = pl.stage_extract(
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
    pl.write_assertions(assertions, out_dir / "assertions.jsonl")
    pl.save_registry(res.registry, out_dir / "registry.json")
    _echo_report([pl.StageReport("extract", len(docs), len(assertions), dict(counters))])


@main.command("filter")
@with_stage_options
def filter_cmd(config_path, **kwargs):
    """Document admission, aggregation, frequency thresholding."""
    config = _load(config_path, kwargs)
    out_dir = Path(config.out_dir)
    res = pl.load_resources(config)
    registry = pl.load_registry(out_dir / "registry.json")
    with open(config.corpus, encoding="utf-8") as f:
        docs = pl.parse_conllu(f)
    assertions, object_pos = pl.read_assertions(out_dir / "assertions.jsonl")
    agg, counters = pl.stage_filter(
        docs,
        assertions,
        registry,
        res.doc_embeddings,
        config.filter,
        object_pos=object_pos,
        workers=config.workers,
    )
    pl.write_triples(agg, out_dir / "triples.jsonl")
    _echo_report([pl.StageReport("filter", len(assertions), len(agg), dict(counters))])


@main.command()
@with_stage_options
def cluster(config_path, **kwargs):
    """Paraphrase clustering of retained triples and their facets."""
    config = _load(config_path, kwargs)
    out_dir = Path(config.out_dir)
    res = pl.load_resources(config)
    agg = pl.read_triples(out_dir / "triples.jsonl")
    clusters, counters = pl.stage_cluster(
        agg,
        res.triple_embeddings,
        res.word_embeddings,
        config.triple_cluster,
        config.facet_cluster,
        workers=config.workers,
    )
    pl.write_clusters(clusters, out_dir / "clusters.jsonl")
    _echo_report([pl.StageReport("cluster", len(agg), len(clusters), dict(counters))])


@main.command("map")
@with_stage_options
def map_cmd(config_path, **kwargs):
    """Canonicalize clusters into the fixed relation schema."""
    config = _load(config_path, kwargs)
    out_dir = Path(config.out_dir)
    res = pl.load_resources(config)
    clusters = pl.read_clusters(out_dir / "clusters.jsonl")
    mapped, counters = pl.stage_map(clusters, res.lexicon)
    pl.write_mapped(mapped, out_dir / "mapped.jsonl")
    _echo_report([pl.StageReport("map", len(clusters), len(mapped), dict(counters))])


@main.command()
@with_stage_options
def clean(config_path, **kwargs):
    """Perplexity gate, IsA filter, dictionary filter, truncation."""
    config = _load(config_path, kwargs)
    out_dir = Path(config.out_dir)
    res = pl.load_resources(config)
    mapped = pl.read_mapped(out_dir / "mapped.jsonl")
    cleaned, counters = pl.stage_clean(
        mapped,
        ppl_scores=res.ppl_scores,
        isa_reference=res.isa_reference,
        dictionary=res.dictionary,
        cfg=config.cleaning,
        workers=config.workers,
    )
    pl.write_mapped(cleaned, out_dir / "cleaned.jsonl")
    _echo_report([pl.StageReport("clean", len(mapped), len(cleaned), dict(counters))])


@main.command()
@with_stage_options
def rank(config_path, **kwargs):
    """Attach saliency and typicality; write the final KB."""
    config = _load(config_path, kwargs)
    out_dir = Path(config.out_dir)
    res = pl.load_resources(config)
    registry = pl.load_registry(out_dir / "registry.json")
    cleaned = pl.read_mapped(out_dir / "cleaned.jsonl")
    ranked, counters = pl.stage_rank(
        cleaned,
        registry,
        polarities=res.polarities,
        weights=config.weights,
        modifier_table=res.modifier_table,
        workers=config.workers,
    )
    kb = KnowledgeBase(assertions=ranked, registry=registry, metadata={"config": config.snapshot()})
    write_kb(kb, out_dir / "kb.jsonl")
    _echo_report([pl.StageReport("rank", len(cleaned), len(ranked), dict(counters))])


@main.command()
@click.option("--kb", "kb_path", type=click.Path(exists=True), required=True)
def stats(kb_path):
    """Subject/assertion/facet counts by subject type."""
    kb = read_kb(kb_path)
    click.echo(kb_stats(kb).format())


@main.command()
@click.option("--kb", "kb_path", type=click.Path(exists=True), required=True)
@click.option("--subject", required=True)
@click.option("--relation", default=None, help="Optional relation filter, e.g. CapableOf.")
@click.option("--top-k", default=10, show_default=True)
@click.option(
    "--order",
    type=click.Choice(["saliency", "typicality"]),
    default="saliency",
    show_default=True,
)
def query(kb_path, subject, relation, top_k, order):
    """Top-k assertions for a subject."""
    kb = read_kb(kb_path)
    try:
        rows = kb_query(kb, subject, relation, top_k, order)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None
    for a in rows:
        facets = "; ".join(f"{g.role.value}: {g.value} ({g.count})" for g in a.facets)
        click.echo(
            f"{a.subject}\t{a.relation.value}\t{a.object}\t"
            f"freq={a.frequency}\tsaliency={a.saliency:.4f}\ttypicality={a.typicality:.4f}"
            + (f"\t[{facets}]" if facets else "")
        )


@main.command("eval-recall")
@click.option("--kb", "kb_path", type=click.Path(exists=True), required=True)
@click.option("--gt", "gt_path", type=click.Path(exists=True), required=True,
              help="Ground-truth sentences, one per line.")
@click.option("--embeddings", "emb_path", type=click.Path(exists=True), required=True)
@click.option("--tau", default=0.96, show_default=True)
@click.option("--top-k", type=int, default=None, help="Per-subject assertion cap.")
@click.option("--show-matches", is_flag=True)
def eval_recall_cmd(kb_path, gt_path, emb_path, tau, top_k, show_matches):
    """Relative recall of the KB against a ground-truth sentence file."""
    kb = read_kb(kb_path)
    embeddings = load_embeddings(emb_path)
    with open(gt_path, encoding="utf-8") as f:
        sentences = [line.strip() for line in f if line.strip()]
    try:
        recall, matches = eval_recall(kb, sentences, embeddings, RecallConfig(tau, top_k))
    except KeyError as exc:
        raise click.ClickException(str(exc)) from None
    click.echo(f"recall@tau={tau}: {recall:.4f} ({sum(m.matched for m in matches)}/{len(matches)})")
    if show_matches:
        for m in matches:
            mark = "+" if m.matched else "-"
            click.echo(f"{mark} {m.similarity:.4f} {m.sentence!r} -> {m.best_assertion!r}")


if __name__ == "__main__":
    main()
