import math

import pytest

from cskb.clustering import ClusterParams, Linkage
from cskb.conllu import Document
from cskb.subjects import (
    SubjectRegistry,
    focus_subject,
    load_antonyms,
    load_registry,
    mine_aspects,
    mine_subgroups,
    save_registry,
)
from cskb.tables import EmbeddingTable
from conftest import make_sentence
from reference import reference_hac

AVG = ClusterParams(Linkage.AVERAGE, 1.0)


def registry():
    reg = SubjectRegistry()
    reg.add_primary("elephant", ["elephants"])
    return reg


def rotated(dim, i, j, angle):
    vec = [0.0] * dim
    vec[i], vec[j] = math.cos(angle), math.sin(angle)
    return vec


class TestRegistry:
    def test_subgroup_must_end_with_primary(self):
        reg = registry()
        reg.add_subgroup("elephant", "african elephants")
        with pytest.raises(ValueError):
            reg.add_subgroup("elephant", "african lion")

    def test_aspect_gets_primary_prefix(self):
        reg = registry()
        reg.add_aspect("elephant", "diet")
        assert reg.aspects["elephant"] == ["elephant diet"]
        assert reg.match_subject("elephant's diet") == ("elephant diet", "aspect")

    def test_dedup_case_insensitive(self):
        reg = registry()
        reg.add_subgroup("elephant", "baby elephant")
        reg.add_subgroup("elephant", "Baby Elephant")
        assert reg.subgroups["elephant"] == ["baby elephant"]
        reg.add_aspect("elephant", "Diet")
        reg.add_aspect("elephant", "diet")
        assert reg.aspects["elephant"] == ["elephant diet"]

    def test_match_subject_via_lemma_and_alias(self):
        reg = registry()
        reg.add_subgroup("elephant", "african elephant", variants=["african elephants"])
        assert reg.match_subject("elephants") == ("elephant", "primary")
        assert reg.match_subject("african elephants") == ("african elephant", "subgroup")
        assert reg.match_subject("zebra") is None

    def test_owner_and_stype(self):
        reg = registry()
        reg.add_subgroup("elephant", "baby elephant")
        reg.add_aspect("elephant", "diet")
        assert reg.owner_of("baby elephant") == "elephant"
        assert reg.owner_of("elephant diet") == "elephant"
        assert reg.stype_of("elephant") == "primary"
        assert reg.stype_of("baby elephant") == "subgroup"

    def test_json_round_trip(self, tmp_path):
        reg = registry()
        reg.add_subgroup("elephant", "baby elephant", variants=["baby elephants"])
        reg.add_aspect("elephant", "diet")
        path = tmp_path / "registry.json"
        save_registry(reg, path)
        loaded = load_registry(path)
        assert loaded.primaries == reg.primaries
        assert loaded.subgroups == reg.subgroups
        assert loaded.aspects == reg.aspects
        assert loaded.match_subject("baby elephants") == ("baby elephant", "subgroup")

    def test_seed_format(self, tmp_path):
        path = tmp_path / "subjects.json"
        path.write_text('{"bus": {"lemmas": ["buses", "busses"]}}', encoding="utf-8")
        reg = load_registry(path)
        assert reg.primaries == {"bus"}
        assert reg.match_subject("busses") == ("bus", "primary")


class TestMineSubgroups:
    def test_three_chunk_fixture(self):
        # hand-run of the exhaustive reference over these three vectors:
        # the two "african" variants are 0.05 rad apart (distance ~0.05),
        # "baby elephant" is orthogonal (distance sqrt(2) > 1.0)
        emb = EmbeddingTable.from_pairs([
            ("african elephant", rotated(4, 0, 3, 0.0)),
            ("african elephants", rotated(4, 0, 3, 0.05)),
            ("baby elephant", rotated(4, 1, 3, 0.0)),
        ])
        chunks = {"African elephant": 1, "African elephants": 1, "baby elephant": 1}
        clusters = mine_subgroups(chunks, "elephant", registry(), emb, params=AVG)
        blocks = {frozenset(c.members) for c in clusters}
        assert blocks == {
            frozenset({"african elephant", "african elephants"}),
            frozenset({"baby elephant"}),
        }
        oracle = reference_hac(
            [emb.lookup("african elephant"), emb.lookup("african elephants"),
             emb.lookup("baby elephant")],
            linkage="average",
            threshold=1.0,
        )
        assert oracle == {frozenset({0, 1}), frozenset({2})}

    def test_no_candidates(self):
        emb = EmbeddingTable.from_pairs([("x", [1.0, 0.0])])
        assert mine_subgroups({"green grass": 3}, "elephant", registry(), emb, params=AVG) == []

    def test_bare_primary_not_a_candidate(self):
        emb = EmbeddingTable.from_pairs([("elephants", [1.0, 0.0])])
        chunks = {"elephants": 9, "all elephants": 3}
        assert mine_subgroups(chunks, "elephant", registry(), emb, params=AVG) == []

    def test_antonyms_never_co_clustered(self):
        emb = EmbeddingTable.from_pairs([
            ("male elephant", rotated(4, 0, 3, 0.0)),
            ("female elephant", rotated(4, 0, 3, 0.05)),
        ])
        chunks = {"male elephant": 2, "female elephant": 2}
        merged = mine_subgroups(chunks, "elephant", registry(), emb, params=AVG)
        assert len(merged) == 1  # vectors nearly identical
        separated = mine_subgroups(
            chunks, "elephant", registry(), emb, params=AVG,
            antonyms=frozenset({frozenset({"male", "female"})}),
        )
        assert {c.representative for c in separated} == {"male elephant", "female elephant"}

    def test_missing_embedding_is_singleton(self):
        emb = EmbeddingTable.from_pairs([("baby elephant", [1.0, 0.0])])
        chunks = {"baby elephant": 2, "ghost elephant": 1}
        clusters = mine_subgroups(chunks, "elephant", registry(), emb, params=AVG)
        assert {c.representative for c in clusters} == {"baby elephant", "ghost elephant"}

    def test_representative_most_frequent(self):
        emb = EmbeddingTable.from_pairs([
            ("african elephant", rotated(4, 0, 3, 0.0)),
            ("african elephants", rotated(4, 0, 3, 0.05)),
        ])
        clusters = mine_subgroups(
            {"african elephants": 5, "african elephant": 2}, "elephant", registry(), emb,
            params=AVG,
        )
        assert clusters[0].representative == "african elephants"
        assert clusters[0].count == 7

    def test_unknown_primary_rejected(self):
        emb = EmbeddingTable.from_pairs([("x", [1.0])])
        with pytest.raises(ValueError):
            mine_subgroups({}, "zebra", registry(), emb, params=AVG)


class TestMineAspects:
    def test_possessive_chunk(self):
        sent = make_sentence([
            ("The", "the", "DET", 2, "det"),
            ("elephant", "elephant", "NOUN", 4, "nmod:poss"),
            ("'s", "'s", "PART", 2, "case"),
            ("diet", "diet", "NOUN", 5, "nsubj"),
            ("varies", "vary", "VERB", 0, "root"),
        ])
        doc = Document("d", [sent])
        assert mine_aspects(doc, "elephant", registry()) == ["diet"]

    def test_pronoun_resolves_to_focus_subject(self):
        mention = make_sentence([
            ("Elephants", "elephant", "NOUN", 2, "nsubj"),
            ("roam", "roam", "VERB", 0, "root"),
        ])
        possessive = make_sentence([
            ("Their", "they", "PRON", 2, "nmod:poss"),
            ("diet", "diet", "NOUN", 3, "nsubj"),
            ("varies", "vary", "VERB", 0, "root"),
        ])
        doc = Document("d", [mention, possessive])
        assert mine_aspects(doc, "elephant", registry()) == ["diet"]

    def test_unmentioned_subject_yields_nothing(self):
        possessive = make_sentence([
            ("Their", "they", "PRON", 2, "nmod:poss"),
            ("diet", "diet", "NOUN", 3, "nsubj"),
            ("varies", "vary", "VERB", 0, "root"),
        ])
        doc = Document("d", [possessive])
        assert mine_aspects(doc, "elephant", registry()) == []

    def test_have_object_is_an_aspect(self):
        sent = make_sentence([
            ("Elephants", "elephant", "NOUN", 2, "nsubj"),
            ("have", "have", "VERB", 0, "root"),
            ("tusks", "tusk", "NOUN", 2, "obj"),
        ])
        doc = Document("d", [sent])
        assert mine_aspects(doc, "elephant", registry()) == ["tusks"]

    def test_composed_of_object_is_an_aspect(self):
        # assertion-level form: subject matches, object is "composed of ..."
        from cskb.extraction import OpenAssertion

        doc = Document("d", [])
        aspects = mine_aspects(
            doc,
            "elephant",
            registry(),
            assertions=[
                OpenAssertion(
                    subject="elephants", predicate="be", object="composed of families",
                    facets=(), doc_id="d", sent_idx=0, source="s",
                )
            ],
        )
        assert aspects == ["families"]


class TestFocusSubject:
    def test_most_frequent_primary_wins(self):
        reg = SubjectRegistry()
        reg.add_primary("elephant", ["elephants"])
        reg.add_primary("lion", ["lions"])
        doc = Document("d", [
            make_sentence([
                ("Elephants", "elephant", "NOUN", 2, "nsubj"),
                ("chase", "chase", "VERB", 0, "root"),
                ("lions", "lion", "NOUN", 2, "obj"),
            ]),
            make_sentence([
                ("Elephants", "elephant", "NOUN", 2, "nsubj"),
                ("win", "win", "VERB", 0, "root"),
            ]),
        ])
        assert focus_subject(doc, reg) == "elephant"

    def test_no_mentions(self):
        doc = Document("d", [make_sentence([("Hi", "hi", "INTJ", 0, "root")])])
        assert focus_subject(doc, registry()) is None


def test_load_antonyms(tmp_path):
    path = tmp_path / "ant.txt"
    path.write_text("# pairs\nmale female\nhot cold\n", encoding="utf-8")
    pairs = load_antonyms(path)
    assert frozenset({"male", "female"}) in pairs
    assert frozenset({"hot", "cold"}) in pairs
    bad = tmp_path / "bad.txt"
    bad.write_text("one two three\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_antonyms(bad)
