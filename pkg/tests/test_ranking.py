import pytest
from hypothesis import given, strategies as st

from cskb.clustering import FacetGroup
from cskb.extraction import FacetRole
from cskb.mapping import CNRelation
from cskb.ranking import (
    DEFAULT_MODIFIER_SCORE,
    MODIFIER_SCORES,
    CanonicalAssertion,
    TypicalityWeights,
    fit_typicality_weights,
    modifier_score,
    neutrality,
    rank_subject,
    saliency,
    typicality,
)

# the published modifier table, all 22 words
EXPECTED_TABLE = {
    "always": 1.0, "all": 1.0, "every": 1.0,
    "typically": 0.9, "mostly": 0.9, "mainly": 0.9, "most": 0.9,
    "usually": 0.8, "normally": 0.8, "regularly": 0.8,
    "frequently": 0.8, "commonly": 0.8,
    "many": 0.7, "often": 0.6, "some": 0.5, "sometimes": 0.4,
    "occasionally": 0.3, "few": 0.3, "hardly": 0.1, "rarely": 0.1,
    "no": 0.0, "none": 0.0,
}


def canon(subject="elephant", obj="eat grass", freq=3, facets=(), quantifiers=(),
          sources=(), relation=CNRelation.CAPABLE_OF):
    return CanonicalAssertion(
        subject=subject, relation=relation, object=obj, facets=tuple(facets),
        frequency=freq, quantifiers=tuple(quantifiers), sources=tuple(sources),
    )


class TestSaliency:
    def test_count_equals_max(self):
        assert saliency(16, 2, 16) == 1.0

    def test_count_equals_min(self):
        assert saliency(2, 2, 16) == 0.0

    def test_hand_computed_third(self):
        # (log4 - log2) / (log16 - log2) = 1/3 with base-2 logs
        assert abs(saliency(4, 2, 16) - 1.0 / 3.0) < 1e-12

    def test_degenerate_min_equals_max(self):
        assert saliency(5, 5, 5) == 1.0

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            saliency(1, 2, 16)
        with pytest.raises(ValueError):
            saliency(17, 2, 16)
        with pytest.raises(ValueError):
            saliency(2, 0, 16)

    @given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=0, max_value=10**6),
           st.integers(min_value=0, max_value=10**6))
    def test_monotone_in_count(self, lo, d1, d2):
        a, b = lo + min(d1, d2), lo + max(d1, d2)
        hi = lo + d1 + d2 + 1
        assert saliency(a, lo, hi) <= saliency(b, lo, hi) + 1e-15

    def test_doubling_all_counts_preserves_values(self):
        for count, lo, hi in ((4, 2, 16), (3, 3, 9), (7, 2, 11)):
            assert abs(saliency(count, lo, hi) - saliency(2 * count, 2 * lo, 2 * hi)) < 1e-12


class TestModifierScore:
    def test_always_facet(self):
        a = canon(facets=[FacetGroup(FacetRole.DEGREE, "always", 1)])
        assert modifier_score(a) == 1.0

    def test_no_modifiers_default(self):
        assert modifier_score(canon()) == DEFAULT_MODIFIER_SCORE == 0.5

    def test_mean_of_hits(self):
        a = canon(facets=[
            FacetGroup(FacetRole.DEGREE, "always", 1),
            FacetGroup(FacetRole.DEGREE, "sometimes", 1),
        ])
        assert abs(modifier_score(a) - 0.7) < 1e-12

    def test_counts_weight_hits(self):
        a = canon(facets=[FacetGroup(FacetRole.DEGREE, "always", 1),
                          FacetGroup(FacetRole.DEGREE, "sometimes", 2)])
        assert abs(modifier_score(a) - (1.0 + 0.4 + 0.4) / 3) < 1e-12

    def test_quantifiers_count(self):
        a = canon(quantifiers=[("all", 2)])
        assert modifier_score(a) == 1.0

    def test_non_degree_facets_ignored(self):
        a = canon(facets=[FacetGroup(FacetRole.TEMPORAL, "always", 1)])
        assert modifier_score(a) == 0.5

    def test_table_matches_published_values(self):
        assert MODIFIER_SCORES == EXPECTED_TABLE
        assert len(MODIFIER_SCORES) == 22


class TestNeutrality:
    def test_neutral_dominant(self):
        assert neutrality([(0.1, 0.8, 0.1)]) == 1.0

    def test_positive_dominant(self):
        assert neutrality([(0.7, 0.2, 0.1)]) == 0.0

    def test_average_over_sentences(self):
        # averages to (0.3, 0.6, 0.1): neutral wins
        assert neutrality([(0.6, 0.3, 0.1), (0.0, 0.9, 0.1)]) == 1.0

    def test_no_sentences_is_neutral(self):
        assert neutrality([]) == 1.0

    def test_malformed_triple_rejected(self):
        with pytest.raises(ValueError):
            neutrality([(0.5, 0.1, 0.1)])
        with pytest.raises(ValueError):
            neutrality([(0.5, 0.6)])  # type: ignore[list-item]


class TestTypicality:
    def test_all_ones(self):
        assert abs(typicality(1.0, 1.0, 1.0) - 0.840) < 1e-12

    def test_half_zero_one(self):
        assert abs(typicality(0.5, 0.0, 1.0) - 0.250) < 1e-12

    def test_all_zero(self):
        assert typicality(0.0, 0.0, 0.0) == 0.0

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            typicality(1.5, 0.0, 0.0)

    def test_linearity_per_feature(self):
        w = TypicalityWeights()
        for alpha in (0.0, 0.25, 0.5, 1.0):
            assert abs(typicality(alpha, 0, 0) - alpha * w.modifier) < 1e-12
            assert abs(typicality(0, alpha, 0) - alpha * w.frequency) < 1e-12
            assert abs(typicality(0, 0, alpha) - alpha * w.neutrality) < 1e-12

    @given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 1))
    def test_bounded(self, m, f, n):
        assert 0.0 <= typicality(m, f, n) <= 1.0


class TestRankSubject:
    def test_single_assertion_degenerate(self):
        (out,) = rank_subject([canon()])
        assert out.saliency == 1.0

    def test_hand_computed_spread(self):
        rows = [canon(obj="a", freq=2), canon(obj="b", freq=4), canon(obj="c", freq=16)]
        ranked = rank_subject(rows)
        by_obj = {a.object: a.saliency for a in ranked}
        assert by_obj["a"] == 0.0
        assert abs(by_obj["b"] - 1.0 / 3.0) < 1e-12
        assert by_obj["c"] == 1.0
        assert [a.object for a in ranked] == ["c", "b", "a"]

    def test_doubled_counts_leave_pi_unchanged(self):
        rows = [canon(obj="a", freq=2), canon(obj="b", freq=4), canon(obj="c", freq=16)]
        doubled = [canon(obj=a.object, freq=2 * a.frequency) for a in rows]
        for before, after in zip(rank_subject(rows), rank_subject(doubled)):
            assert abs(before.saliency - after.saliency) < 1e-12

    def test_polarized_sources_zero_neutrality(self):
        rows = [
            canon(obj="a", freq=4, sources=("bad",)),
            canon(obj="b", freq=4, sources=("fine",)),
        ]
        table = {"bad": (0.7, 0.2, 0.1), "fine": (0.1, 0.8, 0.1)}
        ranked = rank_subject(rows, polarity_lookup=table.get)
        by_obj = {a.object: a.typicality for a in ranked}
        # identical pi and modifier; neutrality separates them by 0.088
        assert abs((by_obj["b"] - by_obj["a"]) - 0.088) < 1e-12

    def test_tie_break_by_key_is_deterministic(self):
        # equal saliency and typicality: the (s, rel, o) key decides
        rows = [canon(obj="zeta"), canon(obj="alpha")]
        ranked = rank_subject(rows)
        assert [a.object for a in ranked] == ["alpha", "zeta"]
        rows = [canon(obj="zeta"), canon(obj="alpha", relation=CNRelation.HAS_A)]
        ranked = rank_subject(rows)
        assert [(a.relation.value, a.object) for a in ranked] == [
            ("CapableOf", "zeta"),
            ("HasA", "alpha"),
        ]

    def test_scores_in_unit_interval(self):
        rows = [canon(obj=f"o{i}", freq=i + 1,
                      facets=[FacetGroup(FacetRole.DEGREE, "rarely", 1)] if i % 2 else ())
                for i in range(6)]
        for a in rank_subject(rows):
            assert 0.0 <= a.saliency <= 1.0
            assert 0.0 <= a.typicality <= 1.0

    def test_empty(self):
        assert rank_subject([]) == []


class TestFitWeights:
    def test_recovers_known_weights(self, tmp_path):
        # synthetic labels generated by the published weights are recovered
        import itertools

        w = TypicalityWeights()
        rows = []
        for m, f, n in itertools.product((0.0, 0.25, 0.5, 1.0), repeat=3):
            label = w.modifier * m + w.frequency * f + w.neutrality * n
            rows.append(f"{m}\t{f}\t{n}\t{label}")
        path = tmp_path / "labeled.tsv"
        path.write_text("\n".join(rows) + "\n", encoding="utf-8")
        fitted = fit_typicality_weights(path)
        assert abs(fitted.modifier - w.modifier) < 1e-9
        assert abs(fitted.frequency - w.frequency) < 1e-9
        assert abs(fitted.neutrality - w.neutrality) < 1e-9

    def test_requires_enough_rows(self, tmp_path):
        path = tmp_path / "short.tsv"
        path.write_text("0.1\t0.2\t0.3\t0.2\n", encoding="utf-8")
        with pytest.raises(ValueError):
            fit_typicality_weights(path)
