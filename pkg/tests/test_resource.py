import math
import random

import numpy as np
import pytest

from acadaid.corpus import ACADEMIC, NONACADEMIC, Corpus, Document
from acadaid.embedrank import EmbeddingTable
from acadaid.ngrams import count_corpus
from acadaid.resource import (
    BuildConfig,
    Resource,
    ResourceEntry,
    add_external_entries,
    build_nonacademic,
    build_resource,
    coverage,
    import_external,
    ratio_filter,
    read_resource,
    write_resource,
)


def corpus_from(token_lists, domain):
    return Corpus(
        tuple(Document(str(i), tuple(t), domain) for i, t in enumerate(token_lists)), domain
    )


def brute_force_kept(candidates, acad, nonacad, threshold, min_count):
    """Oracle: direct per-phrase arithmetic over raw counts and totals."""
    kept = set()
    for phrase in candidates:
        n = len(phrase)
        ac = acad.counts.get(phrase, 0)
        if ac < min_count:
            continue
        a_rate = ac / acad.totals[n] * 1e6 if ac else 0.0
        nc = nonacad.counts.get(phrase, 0)
        n_rate = nc / nonacad.totals[n] * 1e6 if nc else 0.0
        if n_rate == 0.0 or a_rate / n_rate >= threshold:
            kept.add(phrase)
    return kept


def all_phrases(table):
    return set(table.counts)


class TestRatioFilter:
    def test_boundary_ratio_kept(self):
        # acad rate 1500/M vs nonacad rate 1000/M: exactly 1.5, kept (inclusive)
        acad = corpus_from([["hit"] * 15 + ["pad"] * 9_985], ACADEMIC)
        nonacad = corpus_from([["hit"] * 10 + ["pad"] * 9_990], NONACADEMIC)
        at = count_corpus(acad, 1)
        nt = count_corpus(nonacad, 1)
        kept = ratio_filter({("hit",)}, at, nt, threshold=1.5, min_acad_count=5)
        assert {e.phrase for e in kept} == {("hit",)}
        (entry,) = kept
        assert entry.ratio == pytest.approx(1.5)

    def test_below_threshold_dropped(self):
        acad = corpus_from([["hit"] * 14 + ["pad"] * 9_986], ACADEMIC)
        nonacad = corpus_from([["hit"] * 10 + ["pad"] * 9_990], NONACADEMIC)
        kept = ratio_filter(
            {("hit",)}, count_corpus(acad, 1), count_corpus(nonacad, 1), 1.5, 5
        )
        assert kept == set()

    def test_absent_from_nonacademic_gives_infinite_ratio(self):
        acad = corpus_from([["only"] * 6], ACADEMIC)
        nonacad = corpus_from([["other"] * 6], NONACADEMIC)
        kept = ratio_filter({("only",)}, count_corpus(acad, 1), count_corpus(nonacad, 1), 1.5, 5)
        (entry,) = kept
        assert math.isinf(entry.ratio)

    def test_min_count_guard(self):
        acad = corpus_from([["rare"] * 4 + ["pad"] * 100], ACADEMIC)
        nonacad = corpus_from([["pad"] * 100], NONACADEMIC)
        kept = ratio_filter({("rare",)}, count_corpus(acad, 1), count_corpus(nonacad, 1), 1.5, 5)
        assert kept == set()

    def test_matches_brute_force_oracle(self):
        rng = random.Random(13)
        vocab = ["w%d" % i for i in range(8)]
        for trial in range(30):
            acad_docs = [
                [rng.choice(vocab) for _ in range(rng.randrange(5, 40))] for _ in range(3)
            ]
            nonacad_docs = [
                [rng.choice(vocab) for _ in range(rng.randrange(5, 40))] for _ in range(3)
            ]
            at = count_corpus(corpus_from(acad_docs, ACADEMIC), 2)
            nt = count_corpus(nonacad_docs and corpus_from(nonacad_docs, NONACADEMIC), 2)
            candidates = all_phrases(at)
            assert len(candidates) <= 100
            min_count = rng.choice([1, 2, 5])
            kept = ratio_filter(candidates, at, nt, 1.5, min_count)
            assert {e.phrase for e in kept} == brute_force_kept(
                candidates, at, nt, 1.5, min_count
            )

    def test_scaling_invariance(self):
        rng = random.Random(29)
        vocab = ["w%d" % i for i in range(6)]
        acad_docs = [[rng.choice(vocab) for _ in range(30)] for _ in range(3)]
        nonacad_docs = [[rng.choice(vocab) for _ in range(30)] for _ in range(3)]
        acad = corpus_from(acad_docs, ACADEMIC)
        nonacad = corpus_from(nonacad_docs, NONACADEMIC)
        acad10 = corpus_from(acad_docs * 10, ACADEMIC)
        nonacad10 = corpus_from(nonacad_docs * 10, NONACADEMIC)
        candidates = all_phrases(count_corpus(acad, 2))
        base = ratio_filter(candidates, count_corpus(acad, 2), count_corpus(nonacad, 2), 1.5, 2)
        scaled = ratio_filter(
            candidates, count_corpus(acad10, 2), count_corpus(nonacad10, 2), 1.5, 20
        )
        assert {e.phrase for e in base} == {e.phrase for e in scaled}

    def test_entries_respect_threshold_invariant(self):
        rng = random.Random(31)
        vocab = ["w%d" % i for i in range(5)]
        acad = corpus_from([[rng.choice(vocab) for _ in range(50)]], ACADEMIC)
        nonacad = corpus_from([[rng.choice(vocab) for _ in range(50)]], NONACADEMIC)
        at, nt = count_corpus(acad, 2), count_corpus(nonacad, 2)
        for entry in ratio_filter(all_phrases(at), at, nt, 1.5, 1):
            assert entry.ratio >= 1.5


def toy_embeddings(words, seed=0):
    rng = np.random.default_rng(seed)
    return EmbeddingTable(4, {w: rng.normal(size=4) for w in words})


class TestBuildResource:
    def make_corpora(self):
        acad_docs = [
            ["we", "measure", "the", "error", "rate", "of", "the", "model", "error", "rate"],
            ["the", "error", "rate", "is", "low", "for", "this", "model", "error", "rate"],
            ["model", "error", "rate", "and", "model", "quality", "error", "rate", "here"],
        ]
        nonacad_docs = [
            ["i", "love", "this", "movie", "and", "the", "soundtrack", "is", "nice"],
            ["nice", "movie", "but", "the", "plot", "is", "thin", "i", "think"],
            ["the", "product", "broke", "fast", "and", "i", "want", "a", "refund"],
        ]
        return corpus_from(acad_docs, ACADEMIC), corpus_from(nonacad_docs, NONACADEMIC)

    def config(self, acad, nonacad):
        words = {t for d in acad.documents for t in d.tokens} | {
            t for d in nonacad.documents for t in d.tokens
        }
        return BuildConfig(min_count=5, k_per_doc=10, embeddings=toy_embeddings(words))

    def test_planted_phrase_recovered(self):
        acad, nonacad = self.make_corpora()
        result = build_resource(acad, nonacad, self.config(acad, nonacad))
        assert ("error", "rate") in result.resource
        entry = result.resource.entries[("error", "rate")]
        assert entry.label == ACADEMIC
        assert entry.ratio >= 1.5

    def test_identical_corpora_empty(self):
        docs = [["same", "words", "all", "over", "same", "words"] * 3] * 3
        acad = corpus_from(docs, ACADEMIC)
        nonacad = corpus_from(docs, NONACADEMIC)
        result = build_resource(acad, nonacad, self.config(acad, nonacad))
        assert len(result.resource) == 0

    def test_report_shape(self):
        acad, nonacad = self.make_corpora()
        result = build_resource(acad, nonacad, self.config(acad, nonacad))
        for (source, n), counts in result.report.items():
            assert source in ("tfidf", "embedrank")
            assert 1 <= n <= 4
            assert 0 <= counts["kept"] <= counts["candidates"]

    def test_nonacademic_is_swapped_build(self):
        acad, nonacad = self.make_corpora()
        cfg = self.config(acad, nonacad)
        swapped = build_resource(nonacad, acad, cfg).resource
        nonacad_res = build_nonacademic(acad, nonacad, cfg).resource
        assert set(nonacad_res.entries) == set(swapped.entries)
        for phrase, entry in nonacad_res.entries.items():
            other = swapped.entries[phrase]
            assert entry.label == NONACADEMIC
            assert entry.acad_rate == other.acad_rate
            assert entry.ratio == other.ratio

    def test_planted_informal_phrase_in_nonacademic_resource(self):
        acad, nonacad = self.make_corpora()
        cfg = self.config(acad, nonacad)
        cfg.min_count = 2
        result = build_nonacademic(acad, nonacad, cfg)
        assert ("nice",) in result.resource or ("movie",) in result.resource

    def test_empty_corpus_rejected(self):
        acad, nonacad = self.make_corpora()
        with pytest.raises(ValueError):
            build_resource(Corpus((), ACADEMIC), nonacad, self.config(acad, nonacad))


class TestCoverage:
    def test_full_coverage(self):
        table = count_corpus(corpus_from([["a", "b", "c"]], ACADEMIC), 2)
        assert coverage({("a",), ("b",), ("a", "b")}, table) == 100.0

    def test_half_coverage(self):
        table = count_corpus(corpus_from([["a"]], ACADEMIC), 1)
        assert coverage({("a",), ("b",)}, table) == 50.0

    def test_empty_list_rejected(self):
        table = count_corpus(corpus_from([["a"]], ACADEMIC), 1)
        with pytest.raises(ValueError):
            coverage(set(), table)


def random_resource(rng):
    entries = {}
    for _ in range(rng.randrange(0, 12)):
        n = rng.randrange(1, 5)
        phrase = tuple("w%d" % rng.randrange(9) for _ in range(n))
        nonacad_rate = rng.choice([0.0, rng.random() * 100])
        acad_rate = rng.random() * 500
        ratio = math.inf if nonacad_rate == 0 else acad_rate / nonacad_rate
        label = ACADEMIC if ratio >= 1.5 else NONACADEMIC
        entries[phrase] = ResourceEntry(
            phrase,
            n,
            acad_rate,
            nonacad_rate,
            ratio,
            frozenset(rng.sample(["tfidf", "embedrank", "external"], rng.randrange(0, 4))),
            label,
        )
    return Resource(entries, threshold=1.5, metadata={"max_n": "4"})


class TestResourceRoundTrip:
    def test_random_resources(self, tmp_path):
        rng = random.Random(17)
        for i in range(50):
            resource = random_resource(rng)
            path = tmp_path / f"r{i}.tsv"
            write_resource(resource, path)
            back = read_resource(path)
            assert back.entries == resource.entries
            assert back.threshold == resource.threshold
            assert back.metadata == resource.metadata

    def test_empty_resource(self, tmp_path):
        resource = Resource({}, 1.5, {})
        write_resource(resource, tmp_path / "e.tsv")
        back = read_resource(tmp_path / "e.tsv")
        assert back.entries == {}

    def test_infinity_serialized_as_inf(self, tmp_path):
        entry = ResourceEntry(("x",), 1, 10.0, 0.0, math.inf, frozenset({"tfidf"}), ACADEMIC)
        write_resource(Resource({("x",): entry}, 1.5, {}), tmp_path / "i.tsv")
        text = (tmp_path / "i.tsv").read_text()
        assert "\tinf\t" in text
        assert math.isinf(read_resource(tmp_path / "i.tsv").entries[("x",)].ratio)

    def test_malformed_row_names_line(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text(
            "tokens\tn\tacad_rate\tnonacad_rate\tratio\tsources\tlabel\nonly three\tcols\there\n",
            encoding="utf-8",
        )
        with pytest.raises(ValueError, match="line 2"):
            read_resource(path)


class TestExternalLists:
    def test_import_normalizes(self, tmp_path):
        p = tmp_path / "list.txt"
        p.write_text("Report\nerror RATE\n\n", encoding="utf-8")
        assert import_external(p) == {("report",), ("error", "rate")}

    def test_external_entries_are_academic_by_fiat(self):
        resource = Resource({}, 1.5, {})
        add_external_entries(resource, {("novel", "approach")})
        entry = resource.entries[("novel", "approach")]
        assert entry.label == ACADEMIC
        assert math.isinf(entry.ratio)
        assert entry.sources == frozenset({"external"})
