import numpy as np
import pytest

from cskb.tables import (
    MissingKeyError,
    TableFormatError,
    load_embeddings,
    load_polarities,
    load_scores,
    normalize_key,
)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestEmbeddings:
    def test_unit_vectors_loaded(self, tmp_path):
        table = load_embeddings(write(tmp_path, "e.tsv", "a\t1 0\nb\t0 1\n"))
        assert table.dim == 2
        assert np.allclose(table.lookup("a"), [1.0, 0.0])
        assert np.allclose(table.lookup("b"), [0.0, 1.0])

    def test_renormalized_on_load(self, tmp_path):
        # (3, 4) has norm 5, so the stored vector is (0.6, 0.8)
        table = load_embeddings(write(tmp_path, "e.tsv", "c\t3 4\n"))
        assert np.allclose(table.lookup("c"), [0.6, 0.8])

    def test_mixed_dimensions_rejected(self, tmp_path):
        with pytest.raises(TableFormatError, match="dimension"):
            load_embeddings(write(tmp_path, "e.tsv", "a\t1 0\nb\t0 1 0\n"))

    def test_zero_vector_rejected(self, tmp_path):
        with pytest.raises(TableFormatError, match="zero"):
            load_embeddings(write(tmp_path, "e.tsv", "a\t0 0\n"))

    def test_all_lookups_unit_norm(self, tmp_path):
        table = load_embeddings(
            write(tmp_path, "e.tsv", "a\t2 1 3\nb\t-1 4 0.5\nc\t0.001 0 0\n")
        )
        for key in ("a", "b", "c"):
            assert abs(float(np.linalg.norm(table.lookup(key))) - 1.0) < 1e-6

    def test_missing_key_raises_and_get_reports(self, tmp_path):
        table = load_embeddings(write(tmp_path, "e.tsv", "a\t1 0\n"))
        with pytest.raises(MissingKeyError, match="nope"):
            table.lookup("nope")
        assert table.get("nope") is None
        assert table.misses == 1

    def test_keys_are_nfc_lowercase(self, tmp_path):
        table = load_embeddings(write(tmp_path, "e.tsv", "In Africa\t1 0\n"))
        assert "in africa" in table
        assert np.allclose(table.lookup("in africa"), table.lookup("IN AFRICA"))

    def test_non_numeric_value(self, tmp_path):
        with pytest.raises(TableFormatError, match="e.tsv:1"):
            load_embeddings(write(tmp_path, "e.tsv", "a\tx y\n"))


class TestScores:
    def test_basic(self, tmp_path):
        table = load_scores(write(tmp_path, "s.tsv", "Hi there.\t12.5\n"))
        assert table.lookup("hi there.") == 12.5

    def test_non_finite_rejected(self, tmp_path):
        with pytest.raises(TableFormatError, match="finite"):
            load_scores(write(tmp_path, "s.tsv", "a\tinf\n"))

    def test_missing_key(self, tmp_path):
        table = load_scores(write(tmp_path, "s.tsv", "a\t1.0\n"))
        assert table.get("b") is None
        assert table.misses == 1


class TestPolarities:
    def test_rows_must_sum_to_one(self, tmp_path):
        with pytest.raises(TableFormatError, match="sum"):
            load_polarities(write(tmp_path, "p.tsv", "a\t0.5 0.1 0.1\n"))

    def test_valid_row(self, tmp_path):
        table = load_polarities(write(tmp_path, "p.tsv", "a\t0.1 0.8 0.1\n"))
        assert table.get("a") == (0.1, 0.8, 0.1)

    def test_three_columns_required(self, tmp_path):
        with pytest.raises(TableFormatError, match="three"):
            load_polarities(write(tmp_path, "p.tsv", "a\t0.5 0.5\n"))


def test_normalize_key_nfc_and_case():
    assert normalize_key("  Café ") == "café"
    # NFC composes the decomposed form
    assert normalize_key("Café") == "café"
