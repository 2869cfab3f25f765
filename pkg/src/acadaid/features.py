"""Shared featurization helpers: frequency lists, vowel counts, and
word/sentence embedding geometry."""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .embedrank import EmbeddingTable, cosine, embed_phrase

VOWELS = set("aeiou")


def vowel_count(word: str) -> int:
    return sum(1 for ch in word if ch in VOWELS)


@dataclass
class FrequencyList:
    """Unigram counts from a `word<TAB>count` TSV, queried as per-million rates."""

    counts: dict[str, int]
    total: int

    def rate(self, word: str) -> float:
        c = self.counts.get(word, 0)
        if c == 0 or self.total == 0:
            return 0.0
        return c / self.total * 1_000_000


def load_freq_list(path) -> FrequencyList:
    path = Path(path)
    counts: dict[str, int] = {}
    for i, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{path}: line {i}: expected word<TAB>count")
        counts[parts[0]] = counts.get(parts[0], 0) + int(parts[1])
    return FrequencyList(counts, sum(counts.values()))


@dataclass
class FrequencyLists:
    """The three pluggable unigram sources: web-scale counts, a general
    academic word list, and the academic reference corpus."""

    web: FrequencyList
    general: FrequencyList
    academic: FrequencyList


def standardize_fit(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-feature mean/stddev; zero-variance columns pass through
    unscaled (mean 0, scale 1) so constant features survive unchanged."""
    means = X.mean(axis=0)
    scales = X.std(axis=0)
    zero = scales == 0.0
    means = np.where(zero, 0.0, means)
    scales = np.where(zero, 1.0, scales)
    return means, scales


def sentence_vector(tokens, table: EmbeddingTable) -> np.ndarray | None:
    """Mean embedding over in-vocabulary tokens; None if all are OOV."""
    return embed_phrase(tuple(tokens), table)


def word_sentence_geometry(word: str, tokens, table: EmbeddingTable) -> tuple[float, float]:
    """(cosine, euclidean distance) between a word and its sentence vector.

    Missing data falls back to neutral values: an OOV word contributes
    cosine 0 and distance equal to the sentence-vector norm; a fully OOV
    sentence yields (0, 0).
    """
    sent = sentence_vector(tokens, table)
    if sent is None:
        return 0.0, 0.0
    vec = table.vectors.get(word)
    if vec is None:
        return 0.0, float(np.linalg.norm(sent))
    return cosine(vec, sent), float(np.linalg.norm(vec - sent))
