"""TF-IDF keyphrase scoring: per-document top-k n-grams by smoothed TF-IDF."""

import math
from dataclasses import dataclass

from .corpus import Corpus
from .data import data_path
from .ngrams import MAX_ORDER, PhraseKey, extract_ngrams

STOPWORD_MODES = ("keep", "remove")


@dataclass(frozen=True)
class TfidfScore:
    phrase: PhraseKey
    tf: int
    df: int
    score: float


def load_stopwords(path=None) -> frozenset[str]:
    """One token per line, UTF-8. Defaults to the bundled ~150-word list."""
    if path is None:
        path = data_path("stopwords.txt")
    words = [line.strip() for line in open(path, encoding="utf-8")]
    return frozenset(w for w in words if w)


def document_frequencies(corpus: Corpus, max_n: int) -> dict[PhraseKey, int]:
    """df[p] = number of documents containing phrase p at least once."""
    if not 1 <= max_n <= MAX_ORDER:
        raise ValueError(f"max_n must be in 1..{MAX_ORDER}, got {max_n}")
    df: dict[PhraseKey, int] = {}
    for doc in corpus.documents:
        seen = set()
        for n in range(1, max_n + 1):
            seen.update(extract_ngrams(doc, n))
        for phrase in seen:
            df[phrase] = df.get(phrase, 0) + 1
    return df


def tfidf_score(tf: int, df: int, num_docs: int) -> float:
    """Raw-count tf with smoothed idf: tf * (ln((1+N)/(1+df)) + 1).

    Only within-document rank order matters for top-k selection, so no
    vector-length normalization is applied.
    """
    if df > num_docs:
        raise ValueError(f"df ({df}) cannot exceed num_docs ({num_docs})")
    if tf == 0:
        return 0.0
    if tf > 0 and df < 1:
        raise ValueError("df must be >= 1 for a phrase with tf >= 1")
    return tf * (math.log((1 + num_docs) / (1 + df)) + 1.0)


def keyphrase_table(
    corpus: Corpus,
    k_per_doc: int,
    stopword_mode: str,
    max_n: int = MAX_ORDER,
    stopwords: frozenset[str] | None = None,
) -> list[TfidfScore]:
    """Union over documents of each document's k_per_doc best-scoring
    phrases. For a phrase picked by several documents the best score and
    largest tf are reported.

    Ties within a document break by higher tf, then lexicographic phrase
    order. In mode "remove", phrases containing a stopword are excluded
    before ranking.
    """
    if k_per_doc < 1:
        raise ValueError("k_per_doc must be >= 1")
    if stopword_mode not in STOPWORD_MODES:
        raise ValueError(f"stopword_mode must be one of {STOPWORD_MODES}")
    if stopword_mode == "remove" and stopwords is None:
        stopwords = load_stopwords()

    df = document_frequencies(corpus, max_n)
    num_docs = len(corpus.documents)
    best: dict[PhraseKey, TfidfScore] = {}
    for doc in corpus.documents:
        tf: dict[PhraseKey, int] = {}
        for n in range(1, max_n + 1):
            for g in extract_ngrams(doc, n):
                tf[g] = tf.get(g, 0) + 1
        scored = []
        for phrase, t in tf.items():
            if stopword_mode == "remove" and any(tok in stopwords for tok in phrase):
                continue
            scored.append(TfidfScore(phrase, t, df[phrase], tfidf_score(t, df[phrase], num_docs)))
        scored.sort(key=lambda s: (-s.score, -s.tf, s.phrase))
        for s in scored[:k_per_doc]:
            prev = best.get(s.phrase)
            if prev is None or s.score > prev.score or (s.score == prev.score and s.tf > prev.tf):
                best[s.phrase] = s
    return sorted(best.values(), key=lambda s: (len(s.phrase), s.phrase))


def top_keyphrases(
    corpus: Corpus,
    k_per_doc: int,
    stopword_mode: str,
    max_n: int = MAX_ORDER,
    stopwords: frozenset[str] | None = None,
) -> set[PhraseKey]:
    return {s.phrase for s in keyphrase_table(corpus, k_per_doc, stopword_mode, max_n, stopwords)}
