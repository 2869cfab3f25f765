"""Corpus loading, token normalization, and whole-document downsampling."""

import json
import random
import re
from dataclasses import dataclass
from pathlib import Path

ACADEMIC = "academic"
NONACADEMIC = "nonacademic"
DOMAINS = (ACADEMIC, NONACADEMIC)

FORMATS = ("one-doc-per-file", "one-doc-per-line", "jsonl")

# Keep intra-word hyphens and apostrophes: academic terms like
# "state-of-the-art" depend on them.
_STRIP_RE = re.compile(r"[^A-Za-z0-9'-]+")


class CorpusFormatError(ValueError):
    """Raised when an input file does not match its declared format."""


def normalize_tokens(raw_text: str) -> list[str]:
    """Split on whitespace, strip characters outside [A-Za-z0-9'-],
    lowercase, and drop tokens that become empty.

    Total function: any string input yields a (possibly empty) token list.
    """
    tokens = []
    for chunk in raw_text.split():
        tok = _STRIP_RE.sub("", chunk).lower()
        if tok:
            tokens.append(tok)
    return tokens


@dataclass(frozen=True)
class Document:
    """One unit of text (an article, a review, ...) as normalized tokens."""

    id: str
    tokens: tuple[str, ...]
    source: str

    def __post_init__(self):
        if self.source not in DOMAINS:
            raise ValueError(f"unknown document source {self.source!r}")


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    domain: str

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise ValueError(f"unknown corpus domain {self.domain!r}")
        for doc in self.documents:
            if doc.source != self.domain:
                raise ValueError(
                    f"document {doc.id!r} has source {doc.source!r}, "
                    f"corpus domain is {self.domain!r}"
                )

    @property
    def token_count(self) -> int:
        return sum(len(doc.tokens) for doc in self.documents)


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusFormatError(f"{path}: not valid UTF-8 ({exc})") from exc


def load_corpus(path, format: str, domain: str, threads: int = 1) -> Corpus:
    """Load a corpus from `path` in one of the supported formats.

    Document ids are stable: the filename for one-doc-per-file, the
    0-based line number for one-doc-per-line, and the record's own `id`
    for jsonl. File reads may run on `threads` workers; document order
    stays sorted-by-filename either way.
    """
    path = Path(path)
    if format not in FORMATS:
        raise ValueError(f"unknown corpus format {format!r}, expected one of {FORMATS}")

    docs = []
    if format == "one-doc-per-file":
        if not path.is_dir():
            raise CorpusFormatError(f"{path}: one-doc-per-file expects a directory")
        children = [c for c in sorted(path.iterdir()) if c.is_file()]
        if threads > 1 and len(children) > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=threads) as pool:
                texts = list(pool.map(_read_text, children))
        else:
            texts = [_read_text(c) for c in children]
        for child, text in zip(children, texts):
            docs.append(Document(child.name, tuple(normalize_tokens(text)), domain))
    elif format == "one-doc-per-line":
        for i, line in enumerate(_read_text(path).splitlines()):
            docs.append(Document(str(i), tuple(normalize_tokens(line)), domain))
    else:  # jsonl
        for i, line in enumerate(_read_text(path).splitlines(), start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"{path}: line {i}: invalid JSON ({exc.msg})") from exc
            if not isinstance(record, dict) or "id" not in record or "text" not in record:
                raise CorpusFormatError(
                    f"{path}: line {i}: record must carry 'id' and 'text' fields"
                )
            docs.append(
                Document(str(record["id"]), tuple(normalize_tokens(record["text"])), domain)
            )
    return Corpus(tuple(docs), domain)


def downsample(corpus: Corpus, target_tokens: int, seed: int) -> Corpus:
    """Take whole documents from a seeded random permutation until the
    running token count reaches `target_tokens` (or documents run out).

    May overshoot the target by at most one document; deterministic for a
    fixed (corpus, target_tokens, seed).
    """
    if target_tokens < 0:
        raise ValueError("target_tokens must be non-negative")
    docs = list(corpus.documents)
    random.Random(seed).shuffle(docs)
    taken = []
    total = 0
    for doc in docs:
        if total >= target_tokens:
            break
        taken.append(doc)
        total += len(doc.tokens)
    return Corpus(tuple(taken), corpus.domain)
