"""Uni- to quad-gram extraction and mergeable frequency statistics."""

from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Corpus, Document

# Phrases are plain tuples of normalized tokens, 1 to 4 tokens long.
PhraseKey = tuple[str, ...]

MAX_ORDER = 4


@dataclass
class FrequencyTable:
    """Phrase counts per corpus. Treated as immutable once built; `merge`
    returns a new table."""

    counts: dict[PhraseKey, int] = field(default_factory=dict)
    totals: dict[int, int] = field(default_factory=dict)
    corpus_tokens: int = 0

    def count(self, phrase: PhraseKey) -> int:
        return self.counts.get(tuple(phrase), 0)


def extract_ngrams(doc: Document, n: int) -> list[PhraseKey]:
    """All contiguous token windows of length n, in document order."""
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"n must be in 1..{MAX_ORDER}, got {n}")
    tokens = doc.tokens
    return [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def count_corpus(corpus: Corpus, max_n: int) -> FrequencyTable:
    """Aggregate n-gram counts over all documents for n = 1..max_n.

    N-grams never cross document boundaries, so
    totals[n] = sum over docs of max(0, len(doc) - n + 1).
    """
    if not 1 <= max_n <= MAX_ORDER:
        raise ValueError(f"max_n must be in 1..{MAX_ORDER}, got {max_n}")
    counts: dict[PhraseKey, int] = {}
    totals = {n: 0 for n in range(1, max_n + 1)}
    for doc in corpus.documents:
        for n in range(1, max_n + 1):
            grams = extract_ngrams(doc, n)
            totals[n] += len(grams)
            for g in grams:
                counts[g] = counts.get(g, 0) + 1
    return FrequencyTable(counts, totals, corpus.token_count)


def merge(a: FrequencyTable, b: FrequencyTable) -> FrequencyTable:
    """Pointwise sum of two tables; commutative and associative."""
    counts = dict(a.counts)
    for phrase, c in b.counts.items():
        counts[phrase] = counts.get(phrase, 0) + c
    totals = dict(a.totals)
    for n, t in b.totals.items():
        totals[n] = totals.get(n, 0) + t
    return FrequencyTable(counts, totals, a.corpus_tokens + b.corpus_tokens)


def rel_freq(table: FrequencyTable, phrase: PhraseKey) -> float:
    """Per-million rate of `phrase` among same-order n-gram slots.

    Normalizing per order (totals[n], not the raw token count) keeps uni-
    and quad-gram rates each self-consistent.
    """
    phrase = tuple(phrase)
    c = table.counts.get(phrase, 0)
    if c == 0:
        return 0.0
    return c / table.totals[len(phrase)] * 1_000_000


def write_table(table: FrequencyTable, path) -> None:
    """Persist as TSV: a header line with totals, then one row per phrase.

    Rows are sorted by (n, phrase) so output is diffable; round-trip via
    `read_table` is exact.
    """
    path = Path(path)
    orders = sorted(table.totals)
    header = "#corpus_tokens=%d\t%s" % (
        table.corpus_tokens,
        "\t".join(f"{n}={table.totals[n]}" for n in orders),
    )
    lines = [header]
    for phrase in sorted(table.counts, key=lambda p: (len(p), p)):
        lines.append(f"{' '.join(phrase)}\t{len(phrase)}\t{table.counts[phrase]}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_table(path) -> FrequencyTable:
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith("#corpus_tokens="):
        raise ValueError(f"{path}: missing frequency-table header")
    head = lines[0].split("\t")
    corpus_tokens = int(head[0].split("=", 1)[1])
    totals = {}
    for part in head[1:]:
        n, t = part.split("=")
        totals[int(n)] = int(t)
    counts: dict[PhraseKey, int] = {}
    for i, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        try:
            tokens, n, c = line.split("\t")
            phrase = tuple(tokens.split(" "))
            if len(phrase) != int(n):
                raise ValueError("phrase length does not match n")
            counts[phrase] = int(c)
        except ValueError as exc:
            raise ValueError(f"{path}: line {i}: bad row ({exc})") from exc
    return FrequencyTable(counts, totals, corpus_tokens)
