import random

import pytest

from acadaid.corpus import ACADEMIC, Corpus, Document
from acadaid.ngrams import (
    FrequencyTable,
    count_corpus,
    extract_ngrams,
    merge,
    read_table,
    rel_freq,
    write_table,
)
from tests.test_corpus import make_corpus


def doc(tokens):
    return Document("d", tuple(tokens), ACADEMIC)


class TestExtractNgrams:
    def test_bigrams(self):
        assert extract_ngrams(doc(["we", "present", "a"]), 2) == [
            ("we", "present"),
            ("present", "a"),
        ]

    def test_too_short(self):
        assert extract_ngrams(doc(["x"]), 3) == []

    def test_sliding_window_with_repeats(self):
        assert extract_ngrams(doc(["a", "b", "a", "b"]), 2) == [
            ("a", "b"),
            ("b", "a"),
            ("a", "b"),
        ]

    def test_count_formula(self):
        rng = random.Random(0)
        for _ in range(50):
            tokens = ["t%d" % rng.randrange(5) for _ in range(rng.randrange(0, 12))]
            for n in range(1, 5):
                assert len(extract_ngrams(doc(tokens), n)) == max(0, len(tokens) - n + 1)

    @pytest.mark.parametrize("n", [0, 5, -1])
    def test_order_out_of_range(self, n):
        with pytest.raises(ValueError):
            extract_ngrams(doc(["a"]), n)


class TestCountCorpus:
    def test_empty_corpus(self):
        table = count_corpus(Corpus((), ACADEMIC), 4)
        assert table.counts == {}
        assert all(t == 0 for t in table.totals.values())

    def test_hand_count(self):
        corpus = make_corpus([["a", "b"], ["a", "b"]])
        table = count_corpus(corpus, 2)
        assert table.counts == {("a",): 2, ("b",): 2, ("a", "b"): 2}
        assert table.totals == {1: 4, 2: 2}

    def test_unigram_total_is_token_count(self):
        corpus = make_corpus([["x"] * 17])
        table = count_corpus(corpus, 1)
        assert table.totals[1] == 17 == table.corpus_tokens

    def test_totals_conservation(self):
        rng = random.Random(3)
        corpus = make_corpus(
            [["w%d" % rng.randrange(8) for _ in range(rng.randrange(0, 10))] for _ in range(12)]
        )
        table = count_corpus(corpus, 4)
        for n in range(1, 5):
            assert table.totals[n] == sum(c for p, c in table.counts.items() if len(p) == n)
            assert table.totals[n] == sum(
                max(0, len(d.tokens) - n + 1) for d in corpus.documents
            )

    def test_disjoint_union_equals_merge(self):
        rng = random.Random(5)
        docs_a = [["w%d" % rng.randrange(6) for _ in range(rng.randrange(1, 9))] for _ in range(5)]
        docs_b = [["w%d" % rng.randrange(6) for _ in range(rng.randrange(1, 9))] for _ in range(5)]
        whole = count_corpus(make_corpus(docs_a + docs_b), 3)
        parts = merge(count_corpus(make_corpus(docs_a), 3), count_corpus(make_corpus(docs_b), 3))
        assert whole == parts


class TestMerge:
    def test_identity_element(self):
        corpus = make_corpus([["a", "b", "c"]])
        table = count_corpus(corpus, 2)
        assert merge(table, FrequencyTable()) == table

    def test_commutative(self):
        rng = random.Random(11)
        for _ in range(20):
            a = _random_table(rng)
            b = _random_table(rng)
            assert merge(a, b) == merge(b, a)

    def test_pointwise_sum(self):
        a = FrequencyTable({("p",): 2}, {1: 2}, 2)
        b = FrequencyTable({("p",): 3}, {1: 3}, 3)
        assert merge(a, b).counts[("p",)] == 5


def _random_table(rng):
    counts = {}
    totals = {}
    for _ in range(rng.randrange(0, 8)):
        n = rng.randrange(1, 5)
        phrase = tuple("w%d" % rng.randrange(4) for _ in range(n))
        counts[phrase] = counts.get(phrase, 0) + rng.randrange(1, 9)
    for n in range(1, 5):
        totals[n] = sum(c for p, c in counts.items() if len(p) == n) + rng.randrange(0, 3)
    return FrequencyTable(counts, totals, sum(totals.values()))


class TestRelFreq:
    def test_per_million(self):
        table = FrequencyTable({("x", "y"): 5}, {1: 0, 2: 1_000_000}, 1_000_001)
        assert rel_freq(table, ("x", "y")) == 5.0

    def test_absent_phrase(self):
        table = FrequencyTable({("x",): 1}, {1: 10}, 10)
        assert rel_freq(table, ("zzz",)) == 0.0

    def test_arithmetic(self):
        table = FrequencyTable({("a", "b"): 3}, {2: 600}, 601)
        assert rel_freq(table, ("a", "b")) == pytest.approx(5000.0)


class TestRoundTrip:
    def test_exact(self, tmp_path):
        rng = random.Random(2)
        for i in range(25):
            table = _random_table(rng)
            path = tmp_path / f"t{i}.tsv"
            write_table(table, path)
            assert read_table(path) == table

    def test_empty_table(self, tmp_path):
        table = FrequencyTable({}, {1: 0, 2: 0, 3: 0, 4: 0}, 0)
        write_table(table, tmp_path / "e.tsv")
        assert read_table(tmp_path / "e.tsv") == table
