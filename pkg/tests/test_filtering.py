import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cskb.extraction import Facet, FacetRole, OpenAssertion
from cskb.filtering import (
    FilterConfig,
    TripleKey,
    admit_document,
    aggregate,
    canonicalize_subject,
    threshold_triples,
)
from cskb.subjects import SubjectRegistry

CFG = FilterConfig()
E1 = np.array([1.0, 0.0])
E2 = np.array([0.0, 1.0])


def assertion(subject="elephant", predicate="eat", obj="grass", facets=(), source="s", quantifier=None):
    return OpenAssertion(
        subject=subject, predicate=predicate, object=obj, facets=tuple(facets),
        doc_id="d", sent_idx=0, source=source, quantifier=quantifier,
    )


class TestFilterConfig:
    def test_defaults(self):
        assert (CFG.min_doc_assertions, CFG.max_doc_assertions) == (3, 40)
        assert CFG.doc_similarity_threshold == 0.6
        assert CFG.min_triple_frequency == 3

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"min_doc_assertions": 0},
            {"min_doc_assertions": 5, "max_doc_assertions": 4},
            {"doc_similarity_threshold": 1.5},
            {"min_triple_frequency": 0},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            FilterConfig(**kwargs)


class TestAdmitDocument:
    def test_too_few_assertions(self):
        assert admit_document(2, E1, E1, CFG) is False

    def test_identical_vectors_in_range(self):
        assert admit_document(10, E1, E1, CFG) is True

    def test_orthogonal_vectors(self):
        # dot product 0.0 is not above 0.6
        assert admit_document(10, E1, E2, CFG) is False

    def test_bounds_inclusive(self):
        assert admit_document(3, E1, E1, CFG) is True
        assert admit_document(40, E1, E1, CFG) is True
        assert admit_document(41, E1, E1, CFG) is False

    def test_similarity_threshold_is_strict(self):
        at_threshold = np.array([0.6, 0.8])  # dot with E1 exactly 0.6
        assert admit_document(10, at_threshold, E1, CFG) is False
        above = np.array([0.61, math.sqrt(1 - 0.61**2)])
        assert admit_document(10, above, E1, CFG) is True

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            admit_document(10, np.array([1.0, 0.0, 0.0]), E1, CFG)

    @given(st.floats(min_value=0.0, max_value=1.0), st.floats(min_value=0.0, max_value=1.0))
    def test_monotone_in_similarity(self, a, b):
        lo, hi = sorted((a, b))
        vec_lo = np.array([lo, math.sqrt(1 - lo * lo)])
        vec_hi = np.array([hi, math.sqrt(1 - hi * hi)])
        if admit_document(10, vec_lo, E1, CFG):
            assert admit_document(10, vec_hi, E1, CFG)


class TestAggregate:
    def test_empty(self):
        assert aggregate([]) == {}

    def test_counts_copies(self):
        agg = aggregate([assertion() for _ in range(4)])
        assert list(agg) == [TripleKey("elephant", "eat", "grass")]
        assert agg[TripleKey("elephant", "eat", "grass")].count == 4

    def test_two_keys(self):
        agg = aggregate(
            [assertion(), assertion(), assertion(obj="fruit")]
        )
        counts = {key.object: entry.count for key, entry in agg.items()}
        assert counts == {"grass": 2, "fruit": 1}

    def test_facets_pooled_with_multiplicity(self):
        facet = Facet("", "often", FacetRole.DEGREE)
        agg = aggregate([assertion(facets=[facet]), assertion(facets=[facet])])
        entry = agg[TripleKey("elephant", "eat", "grass")]
        assert entry.facets[facet] == 2

    def test_quantifiers_and_sources(self):
        agg = aggregate([
            assertion(quantifier="all", source="b"),
            assertion(source="a"),
        ])
        entry = agg[TripleKey("elephant", "eat", "grass")]
        assert entry.quantifiers == {"all": 1}
        assert entry.sources == ["a", "b"]  # kept sorted

    def test_iteration_order_lexicographic(self):
        agg = aggregate([assertion(subject="zebra"), assertion(subject="ant")])
        assert [key.subject for key in agg] == ["ant", "zebra"]

    def test_object_pos_majority_vote_ignores_order(self):
        def with_pos(pos, source):
            from dataclasses import replace
            return replace(assertion(source=source), object_pos=pos)

        rows = [with_pos("NounPhrase", "a"), with_pos("AdjectivePhrase", "b"),
                with_pos("NounPhrase", "c")]
        for ordering in (rows, rows[::-1], [rows[1], rows[0], rows[2]]):
            agg = aggregate(ordering)
            (entry,) = agg.values()
            assert entry.object_pos == "NounPhrase"

    @given(st.permutations(list(range(6))))
    def test_order_independent(self, order):
        base = [
            assertion(obj="grass", source="s1"),
            assertion(obj="grass", source="s2"),
            assertion(obj="fruit", source="s3", quantifier="some"),
            assertion(subject="zebra", source="s4"),
            assertion(predicate="like", obj="water", source="s5"),
            assertion(obj="fruit", source="s6"),
        ]
        shuffled = [base[i] for i in order]
        a, b = aggregate(base), aggregate(shuffled)
        assert list(a) == list(b)
        for key in a:
            assert a[key].count == b[key].count
            assert a[key].facets == b[key].facets
            assert a[key].sources == b[key].sources
            assert a[key].quantifiers == b[key].quantifiers


class TestThreshold:
    def test_all_below(self):
        agg = aggregate([assertion(), assertion(), assertion(obj="fruit")])
        assert threshold_triples(agg, CFG) == {}

    def test_exactly_at_minimum_retained(self):
        agg = aggregate([assertion() for _ in range(3)])
        assert len(threshold_triples(agg, CFG)) == 1

    def test_min_one_is_identity(self):
        agg = aggregate([assertion(), assertion(obj="fruit")])
        cfg = FilterConfig(min_triple_frequency=1)
        assert threshold_triples(agg, cfg) == agg

    def test_mass_never_grows(self):
        agg = aggregate(
            [assertion(obj=str(i % 4)) for i in range(20)]
        )
        out = threshold_triples(agg, CFG)
        assert sum(e.count for e in out.values()) <= sum(e.count for e in agg.values())


class TestCanonicalizeSubject:
    def registry(self):
        reg = SubjectRegistry()
        reg.add_primary("elephant", ["elephants"])
        reg.add_subgroup("elephant", "baby elephant")
        return reg

    def test_lemma_maps_to_primary(self):
        out = canonicalize_subject(assertion(subject="elephants"), self.registry())
        assert out.subject == "elephant"
        assert out.quantifier is None

    def test_quantifier_stripped_and_recorded(self):
        out = canonicalize_subject(assertion(subject="all elephants"), self.registry())
        assert out.subject == "elephant"
        assert out.quantifier == "all"

    def test_unknown_subject_unassigned(self):
        assert canonicalize_subject(assertion(subject="their trunks"), self.registry()) is None

    def test_subgroup_match(self):
        out = canonicalize_subject(assertion(subject="baby elephant"), self.registry())
        assert out.subject == "baby elephant"
