import numpy as np
import pytest

from acadaid.embedrank import EmbeddingTable
from acadaid.features import (
    FrequencyList,
    load_freq_list,
    vowel_count,
    word_sentence_geometry,
)


class TestVowelCount:
    @pytest.mark.parametrize(
        "word,count", [("a", 1), ("rhythm", 0), ("education", 5), ("said", 2)]
    )
    def test_counts(self, word, count):
        assert vowel_count(word) == count


class TestFrequencyList:
    def test_rate_per_million(self):
        fl = FrequencyList({"said": 50, "the": 950}, 1000)
        assert fl.rate("said") == pytest.approx(50_000.0)

    def test_absent_word(self):
        fl = FrequencyList({"a": 1}, 1)
        assert fl.rate("zzz") == 0.0

    def test_loader_sums_duplicates(self, tmp_path):
        p = tmp_path / "freq.tsv"
        p.write_text("said\t30\nsaid\t20\nthe\t50\n", encoding="utf-8")
        fl = load_freq_list(p)
        assert fl.counts["said"] == 50
        assert fl.total == 100

    def test_loader_rejects_bad_rows(self, tmp_path):
        p = tmp_path / "freq.tsv"
        p.write_text("said 30\n", encoding="utf-8")
        with pytest.raises(ValueError, match="line 1"):
            load_freq_list(p)


class TestWordSentenceGeometry:
    def table(self):
        return EmbeddingTable(
            2, {"a": np.array([1.0, 0.0]), "b": np.array([0.0, 1.0])}
        )

    def test_word_equals_sentence(self):
        cos, eucl = word_sentence_geometry("a", ("a",), self.table())
        assert cos == pytest.approx(1.0)
        assert eucl == pytest.approx(0.0)

    def test_oov_word_falls_back_to_sentence_norm(self):
        cos, eucl = word_sentence_geometry("zzz", ("a", "b"), self.table())
        assert cos == 0.0
        assert eucl == pytest.approx(np.linalg.norm([0.5, 0.5]))

    def test_fully_oov_sentence(self):
        assert word_sentence_geometry("a", ("x", "y"), self.table()) == (0.0, 0.0)
