"""Academic-frequency-ratio filtering and resource compilation.

A candidate phrase enters the academic resource when its per-million rate
in the academic corpus is at least `threshold` (default 1.5, inclusive)
times its rate in the non-academic corpus, and it occurs at least
`min_acad_count` times in the academic corpus. The non-academic resource
is built symmetrically with the corpora swapped.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import ACADEMIC, NONACADEMIC, Corpus, normalize_tokens
from .embedrank import EmbeddingTable, rank_candidates
from .ngrams import FrequencyTable, PhraseKey, count_corpus, rel_freq
from .postag import LexiconTagger, TaggedDocument, tag_corpus
from .tfidf import top_keyphrases

SOURCES = ("tfidf", "embedrank", "external")


@dataclass(frozen=True)
class ResourceEntry:
    phrase: PhraseKey
    n: int
    acad_rate: float
    nonacad_rate: float
    ratio: float
    sources: frozenset[str]
    label: str

    def __post_init__(self):
        if self.n != len(self.phrase):
            raise ValueError(f"{self.phrase}: n={self.n} does not match phrase length")
        if self.label not in (ACADEMIC, NONACADEMIC):
            raise ValueError(f"unknown label {self.label!r}")


@dataclass
class Resource:
    entries: dict[PhraseKey, ResourceEntry] = field(default_factory=dict)
    threshold: float = 1.5
    metadata: dict[str, str] = field(default_factory=dict)

    def __contains__(self, phrase) -> bool:
        return tuple(phrase) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def academic_phrases(self) -> set[PhraseKey]:
        return {p for p, e in self.entries.items() if e.label == ACADEMIC}


@dataclass
class BuildConfig:
    """Parameters shared by build_resource / build_nonacademic."""

    threshold: float = 1.5
    min_count: int = 5
    k_per_doc: int = 10
    stopword_mode: str = "remove"
    max_n: int = 4
    embeddings: EmbeddingTable | None = None
    tagger: LexiconTagger | None = None
    tagged_docs: list[TaggedDocument] | None = None
    stopwords: frozenset[str] | None = None


@dataclass
class BuildResult:
    resource: Resource
    # (source, n) -> {"candidates": proposed count, "kept": post-filter count}
    report: dict[tuple[str, int], dict[str, int]]


def ratio_filter(
    candidates: set[PhraseKey],
    acad: FrequencyTable,
    nonacad: FrequencyTable,
    threshold: float = 1.5,
    min_acad_count: int = 5,
    sources: dict[PhraseKey, frozenset[str]] | None = None,
    label: str = ACADEMIC,
) -> set[ResourceEntry]:
    """Keep candidates whose academic/non-academic rate ratio reaches the
    threshold (inclusive) and whose academic count reaches min_acad_count.

    A phrase absent from the non-academic corpus gets ratio +infinity and
    is kept (subject to the count guard, which keeps hapax phrases from
    slipping in on an infinite ratio).
    """
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    kept = set()
    for phrase in candidates:
        phrase = tuple(phrase)
        acad_count = acad.count(phrase)
        if acad_count < min_acad_count:
            continue
        acad_rate = rel_freq(acad, phrase)
        nonacad_rate = rel_freq(nonacad, phrase)
        ratio = math.inf if nonacad_rate == 0.0 else acad_rate / nonacad_rate
        if ratio < threshold:
            continue
        kept.add(
            ResourceEntry(
                phrase=phrase,
                n=len(phrase),
                acad_rate=acad_rate,
                nonacad_rate=nonacad_rate,
                ratio=ratio,
                sources=sources.get(phrase, frozenset()) if sources else frozenset(),
                label=label,
            )
        )
    return kept


def _extractor_candidates(corpus: Corpus, config: BuildConfig):
    """Run both keyphrase extractors; returns phrase -> set of source names."""
    sources: dict[PhraseKey, set[str]] = {}
    for phrase in top_keyphrases(
        corpus, config.k_per_doc, config.stopword_mode, config.max_n, config.stopwords
    ):
        sources.setdefault(phrase, set()).add("tfidf")
    if config.embeddings is not None:
        tagged = config.tagged_docs
        if tagged is None:
            tagged = tag_corpus(corpus, config.tagger or LexiconTagger())
        for doc in tagged:
            for cand in rank_candidates(doc, config.embeddings, config.k_per_doc, config.max_n):
                sources.setdefault(cand.phrase, set()).add("embedrank")
    return sources


def _build(target: Corpus, contrast: Corpus, config: BuildConfig, label: str) -> BuildResult:
    target_table = count_corpus(target, config.max_n)
    contrast_table = count_corpus(contrast, config.max_n)
    source_sets = _extractor_candidates(target, config)
    sources = {p: frozenset(s) for p, s in source_sets.items()}
    kept = ratio_filter(
        set(sources),
        target_table,
        contrast_table,
        config.threshold,
        config.min_count,
        sources,
        label,
    )
    resource = Resource(
        entries={e.phrase: e for e in kept},
        threshold=config.threshold,
        metadata={
            "label": label,
            "threshold": repr(config.threshold),
            "min_count": str(config.min_count),
            "k_per_doc": str(config.k_per_doc),
            "stopword_mode": config.stopword_mode,
            "max_n": str(config.max_n),
        },
    )
    report: dict[tuple[str, int], dict[str, int]] = {}
    kept_phrases = set(resource.entries)
    for phrase, srcs in sources.items():
        for src in srcs:
            slot = report.setdefault((src, len(phrase)), {"candidates": 0, "kept": 0})
            slot["candidates"] += 1
            if phrase in kept_phrases:
                slot["kept"] += 1
    return BuildResult(resource, report)


def build_resource(acad: Corpus, nonacad: Corpus, config: BuildConfig) -> BuildResult:
    """Compile the academic resource from both extractors on the academic
    corpus plus the ratio filter against the non-academic corpus."""
    if not acad.documents or not nonacad.documents:
        raise ValueError("both corpora must be non-empty")
    return _build(acad, nonacad, config, ACADEMIC)


def build_nonacademic(acad: Corpus, nonacad: Corpus, config: BuildConfig) -> BuildResult:
    """Symmetric to build_resource with the corpora roles swapped."""
    if not acad.documents or not nonacad.documents:
        raise ValueError("both corpora must be non-empty")
    return _build(nonacad, acad, config, NONACADEMIC)


def coverage(reference_list: set[PhraseKey], corpus_table: FrequencyTable) -> float:
    """Percentage of reference phrases occurring at least once in the corpus."""
    if not reference_list:
        raise ValueError("reference list must be non-empty")
    hits = sum(1 for p in reference_list if corpus_table.count(tuple(p)) >= 1)
    return 100.0 * hits / len(reference_list)


def import_external(path) -> set[PhraseKey]:
    """External reference list: one phrase per line, normalized on load."""
    phrases = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        tokens = normalize_tokens(line)
        if tokens:
            phrases.add(tuple(tokens))
    return phrases


def add_external_entries(resource: Resource, phrases: set[PhraseKey]) -> Resource:
    """Add imported reference-list phrases as academic entries.

    Imported phrases are academic by fiat, so they carry ratio +infinity
    regardless of corpus statistics; already-present phrases just gain the
    `external` source mark.
    """
    for phrase in phrases:
        phrase = tuple(phrase)
        prev = resource.entries.get(phrase)
        if prev is not None:
            resource.entries[phrase] = ResourceEntry(
                prev.phrase,
                prev.n,
                prev.acad_rate,
                prev.nonacad_rate,
                prev.ratio,
                prev.sources | {"external"},
                prev.label,
            )
        else:
            resource.entries[phrase] = ResourceEntry(
                phrase, len(phrase), 0.0, 0.0, math.inf, frozenset({"external"}), ACADEMIC
            )
    return resource


_HEADER = "tokens\tn\tacad_rate\tnonacad_rate\tratio\tsources\tlabel"


def write_resource(resource: Resource, path) -> None:
    """TSV with `# key<TAB>value` metadata lines, a header row, then one
    row per entry sorted by (n, phrase). Infinite ratios serialize as the
    literal `inf`; floats use repr so the round-trip is lossless."""
    path = Path(path)
    lines = [f"# threshold\t{resource.threshold!r}"]
    for key in sorted(resource.metadata):
        lines.append(f"# {key}\t{resource.metadata[key]}")
    lines.append(_HEADER)
    for phrase in sorted(resource.entries, key=lambda p: (len(p), p)):
        e = resource.entries[phrase]
        lines.append(
            "\t".join(
                (
                    " ".join(e.phrase),
                    str(e.n),
                    repr(e.acad_rate),
                    repr(e.nonacad_rate),
                    "inf" if math.isinf(e.ratio) else repr(e.ratio),
                    ",".join(sorted(e.sources)),
                    e.label,
                )
            )
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_resource(path) -> Resource:
    path = Path(path)
    threshold = 1.5
    metadata: dict[str, str] = {}
    entries: dict[PhraseKey, ResourceEntry] = {}
    seen_header = False
    for i, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line:
            continue
        if line.startswith("# "):
            key, _, value = line[2:].partition("\t")
            if key == "threshold":
                threshold = float(value)
            else:
                metadata[key] = value
            continue
        if not seen_header:
            if line != _HEADER:
                raise ValueError(f"{path}: line {i}: expected header {_HEADER!r}")
            seen_header = True
            continue
        parts = line.split("\t")
        if len(parts) != 7:
            raise ValueError(f"{path}: line {i}: expected 7 columns, got {len(parts)}")
        try:
            phrase = tuple(parts[0].split(" "))
            entry = ResourceEntry(
                phrase=phrase,
                n=int(parts[1]),
                acad_rate=float(parts[2]),
                nonacad_rate=float(parts[3]),
                ratio=float(parts[4]),
                sources=frozenset(s for s in parts[5].split(",") if s),
                label=parts[6],
            )
        except ValueError as exc:
            raise ValueError(f"{path}: line {i}: bad row ({exc})") from exc
        entries[phrase] = entry
    if not seen_header:
        raise ValueError(f"{path}: missing resource header")
    return Resource(entries, threshold, metadata)
