"""Acceptance gate: one test per criterion, each printing a pass line.

Run with `pytest tests/test_acceptance.py -v -s` to see the line per
criterion. Tolerances are pinned in the assertions below.
"""

import dataclasses
import filecmp
import math
import time

import numpy as np
import pytest

from cskb.cleaning import CleaningConfig, IsaReference, clean_subject, default_unwanted
from cskb.clustering import ClusterParams, Linkage, hac
from cskb.config import load_config
from cskb.conllu import parse_conllu
from cskb.extraction import FacetRole, extract_sentence
from cskb.filtering import FilterConfig, TripleKey, admit_document, aggregate, threshold_triples
from cskb.kbstore import query, read_kb
from cskb.mapping import CNRelation, MappedAssertion, default_lexicon, predict_relation, rewrite_object
from cskb.pipeline import RecallConfig, eval_recall, run
from cskb.ranking import MODIFIER_SCORES, saliency, typicality
from cskb.tables import ScoreTable, load_embeddings
from reference import reference_hac


def ok(name):
    print(f"\nACCEPTANCE {name}: PASS")


class TestAcceptance:
    def test_openie_paper_example(self, data_dir):
        started = time.monotonic()
        with open(data_dir / "openie_example.conllu", encoding="utf-8") as f:
            sentence = parse_conllu(f)[0].sentences[0]
        out = extract_sentence(sentence)
        assert len(out) == 2
        for a, purpose in zip(out, ("pick up objects", "drink water")):
            assert a.subject == "elephants"
            assert a.predicate == "use"
            assert a.object == "their trunks"
            assert [(f.connector, f.value, f.role) for f in a.facets] == [
                ("to", purpose, FacetRole.PURPOSE)
            ]
        assert time.monotonic() - started < 1.0
        ok("openie-paper-example")

    def test_mapping_golden_set(self):
        golden = [
            (TripleKey("elephant", "lives in", "the wild"), "NounPhrase",
             CNRelation.AT_LOCATION, "the wild"),
            (TripleKey("elephant", "is", "part of a herd"), "NounPhrase",
             CNRelation.PART_OF, "herd"),
            (TripleKey("elephant", "is", "symbol of strength"), "NounPhrase",
             CNRelation.SYMBOL_OF, "strength"),
            (TripleKey("circus elephant", "catches", "balls"), "NounPhrase",
             CNRelation.CAPABLE_OF, "catch balls"),
        ]
        for key, pos, relation, obj in golden:
            assert predict_relation(key, pos) is relation, key
            assert rewrite_object(key, relation) == obj, key
        # full lexicon round-trip: every shipped pattern maps to its relation
        lexicon = default_lexicon()
        checked = 0
        for relation, pattern in lexicon.patterns():
            if not pattern:
                continue
            key = TripleKey("widget", " ".join(pattern), "sturdy gears")
            assert predict_relation(key, "NounPhrase") is relation, pattern
            assert rewrite_object(key, relation) == "sturdy gears", pattern
            checked += 1
        assert checked >= len(list(CNRelation))
        ok("mapping-golden-set")

    def test_saliency_closed_form(self):
        assert saliency(2, 2, 16) == 0.0
        assert saliency(16, 2, 16) == 1.0
        assert abs(saliency(4, 2, 16) - 1.0 / 3.0) < 1e-12
        for count, lo, hi in ((2, 2, 16), (4, 2, 16), (16, 2, 16)):
            assert abs(saliency(count, lo, hi) - saliency(2 * count, 2 * lo, 2 * hi)) < 1e-12
        ok("saliency-closed-form")

    def test_typicality_weights_and_modifier_table(self):
        assert abs(typicality(1.0, 1.0, 1.0) - 0.840) < 1e-12
        assert abs(typicality(0.5, 0.0, 1.0) - 0.250) < 1e-12
        published = {
            "always": 1.0, "all": 1.0, "every": 1.0,
            "typically": 0.9, "mostly": 0.9, "mainly": 0.9, "most": 0.9,
            "usually": 0.8, "normally": 0.8, "regularly": 0.8,
            "frequently": 0.8, "commonly": 0.8,
            "many": 0.7, "often": 0.6, "some": 0.5, "sometimes": 0.4,
            "occasionally": 0.3, "few": 0.3, "hardly": 0.1, "rarely": 0.1,
            "no": 0.0, "none": 0.0,
        }
        assert len(published) == 22
        for word, score in published.items():
            assert MODIFIER_SCORES[word] == score, word
        assert len(MODIFIER_SCORES) == 22
        ok("typicality-and-modifier-table")

    def test_hac_matches_bruteforce_on_200_instances(self):
        started = time.monotonic()
        rng = np.random.default_rng(20240817)
        params = ClusterParams(Linkage.WARD, 0.5)
        agreements = 0
        for _ in range(200):
            n = int(rng.integers(1, 9))
            vectors = []
            for _ in range(n):
                vec = rng.standard_normal(5)
                vectors.append(vec / np.linalg.norm(vec))
            got = {frozenset(b) for b in hac(vectors, params=params)}
            want = reference_hac(vectors, linkage="ward", threshold=0.5)
            assert got == want
            agreements += 1
        elapsed = time.monotonic() - started
        assert agreements == 200
        assert elapsed < 10.0
        ok(f"hac-oracle-200-instances ({elapsed:.2f}s)")

    def test_filter_boundaries(self):
        cfg = FilterConfig()
        same = np.array([1.0, 0.0])
        assert admit_document(2, same, same, cfg) is False
        assert admit_document(41, same, same, cfg) is False
        assert admit_document(3, same, same, cfg) is True
        assert admit_document(40, same, same, cfg) is True
        at_limit = np.array([0.6, 0.8])
        assert admit_document(10, at_limit, same, cfg) is False  # 0.6 is strict
        above = np.array([0.61, math.sqrt(1.0 - 0.61**2)])
        assert admit_document(10, above, same, cfg) is True
        from cskb.extraction import OpenAssertion

        def assertion(i):
            return OpenAssertion(
                subject="s", predicate="p", object="kept" if i else "dropped",
                facets=(), doc_id="d", sent_idx=0, source="src",
            )

        agg = aggregate([assertion(1)] * 3 + [assertion(0)] * 2)
        out = threshold_triples(agg, cfg)
        assert [key.object for key in out] == ["kept"]
        ok("filter-boundaries")

    def test_cleaning_boundaries(self):
        cfg = CleaningConfig()

        def mapped(obj, relation=CNRelation.CAPABLE_OF, subject="elephant", freq=3,
                   facets=()):
            return MappedAssertion(
                subject=subject, relation=relation, object=obj,
                facets=tuple(facets), frequency=freq,
            )

        from cskb.cleaning import filter_perplexity, filter_isa, truncate
        from cskb.clustering import FacetGroup

        a = mapped("eat grass")
        assert filter_perplexity(a, ScoreTable({"elephant can eat grass.": 499.9}), cfg)[0]
        assert not filter_perplexity(a, ScoreTable({"elephant can eat grass.": 500.0}), cfg)[0]

        rows = [mapped(f"o{i:04d}", freq=i + 1) for i in range(1001)]
        kept = truncate(rows, cfg)
        assert len(kept) == 1000
        assert {x.object for x in rows} - {x.object for x in kept} == {"o0000"}

        groups = [FacetGroup(FacetRole.DEGREE, f"f{i}", 9 - i) for i in range(4)]
        (truncated,) = truncate([mapped("x", facets=groups)], cfg)
        assert len(truncated.facets) == 3
        assert all(g.value != "f3" for g in truncated.facets)

        trusted = frozenset({"mammal", "animal"})
        assert filter_isa(mapped("large mammal", CNRelation.IS_A), trusted)
        assert not filter_isa(mapped("good pet", CNRelation.IS_A), trusted)

        rows = [mapped("large mammal", CNRelation.IS_A), mapped("fine animal", CNRelation.IS_A)]
        kept, counters = clean_subject(
            rows, ppl_scores=ScoreTable({}), isa_reference=IsaReference({}),
            dictionary=default_unwanted(), cfg=cfg,
        )
        assert kept == []  # subject absent from the reference: all IsA rows fall
        assert counters["dropped_isa"] == 2
        ok("cleaning-boundaries")

    def test_end_to_end_determinism(self, data_dir, tmp_path):
        started = time.monotonic()
        outputs = []
        for workers in (1, 4):
            out_dir = tmp_path / f"w{workers}"
            cfg = load_config(data_dir / "config.toml", env={})
            cfg = dataclasses.replace(cfg, out_dir=out_dir, workers=workers)
            kb, _ = run(cfg)
            assert kb.assertions, "fixture corpus must produce a KB"
            outputs.append(out_dir)
        assert filecmp.cmp(outputs[0] / "kb.jsonl", outputs[1] / "kb.jsonl", shallow=False)
        assert (outputs[0] / "kb.jsonl.meta.json").read_bytes() == (
            outputs[1] / "kb.jsonl.meta.json"
        ).read_bytes()
        kb = read_kb(outputs[0] / "kb.jsonl")
        top = query(kb, "elephant", top_k=1)[0]
        assert (top.relation, top.object) == (CNRelation.CAPABLE_OF, "eat grass")
        elapsed = time.monotonic() - started
        assert elapsed < 30.0
        ok(f"end-to-end-determinism ({elapsed:.2f}s)")

    def test_eval_recall_monotonicity(self, data_dir):
        kb = read_kb(data_dir / "recall_kb.jsonl")
        emb = load_embeddings(data_dir / "recall_embeddings.tsv")
        with open(data_dir / "gt_sentences.txt", encoding="utf-8") as f:
            sentences = [line.strip() for line in f if line.strip()]
        r96, _ = eval_recall(kb, sentences, emb, RecallConfig(0.96))
        r98, _ = eval_recall(kb, sentences, emb, RecallConfig(0.98))
        r100, matches = eval_recall(kb, sentences, emb, RecallConfig(1.0))
        assert r96 >= r98 >= r100
        matched = [m for m in matches if m.matched]
        assert [m.sentence for m in matched] == ["Elephant can eat grass."]
        assert matched[0].best_assertion == "Elephant can eat grass."
        ok("eval-recall-monotonicity")
