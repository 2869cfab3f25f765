"""Coarse part-of-speech tagging over a 12-tag set.

Tags come either from a pre-tagged input file (`token_TAG` per token) or
from a small lexicon-based tagger: most-frequent-tag lookup, then suffix
heuristics, NOUN as fallback.
"""

from dataclasses import dataclass
from pathlib import Path

from .corpus import Corpus
from .data import data_path

COARSE_TAGS = (
    "ADJ",
    "NOUN",
    "VERB",
    "ADV",
    "DET",
    "PRON",
    "ADP",
    "NUM",
    "CONJ",
    "PART",
    "PUNCT",
    "OTHER",
)

# Checked in order; first match wins.
_SUFFIX_RULES = (
    ("ly", "ADV"),
    ("tion", "NOUN"),
    ("sion", "NOUN"),
    ("ment", "NOUN"),
    ("ness", "NOUN"),
    ("ance", "NOUN"),
    ("ence", "NOUN"),
    ("ity", "NOUN"),
    ("ship", "NOUN"),
    ("ism", "NOUN"),
    ("ous", "ADJ"),
    ("ful", "ADJ"),
    ("ive", "ADJ"),
    ("able", "ADJ"),
    ("ible", "ADJ"),
    ("ical", "ADJ"),
    ("al", "ADJ"),
    ("ic", "ADJ"),
    ("ing", "VERB"),
    ("ed", "VERB"),
)


@dataclass(frozen=True)
class TaggedDocument:
    id: str
    tokens: tuple[str, ...]
    tags: tuple[str, ...]

    def __post_init__(self):
        if len(self.tokens) != len(self.tags):
            raise ValueError(
                f"document {self.id!r}: {len(self.tokens)} tokens but {len(self.tags)} tags"
            )
        for tag in self.tags:
            if tag not in COARSE_TAGS:
                raise ValueError(f"document {self.id!r}: unknown tag {tag!r}")


class LexiconTagger:
    """Most-frequent-tag lexicon with suffix heuristics, fallback NOUN."""

    def __init__(self, lexicon_path=None):
        if lexicon_path is None:
            lexicon_path = data_path("pos_lexicon.tsv")
        self.lexicon: dict[str, str] = {}
        for i, line in enumerate(Path(lexicon_path).read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                word, tag = line.split("\t")
            except ValueError as exc:
                raise ValueError(f"{lexicon_path}: line {i}: expected word<TAB>tag") from exc
            if tag not in COARSE_TAGS:
                raise ValueError(f"{lexicon_path}: line {i}: unknown tag {tag!r}")
            self.lexicon[word] = tag

    def tag_word(self, token: str) -> str:
        tag = self.lexicon.get(token)
        if tag is not None:
            return tag
        if token.replace("-", "").replace("'", "").isdigit():
            return "NUM"
        for suffix, t in _SUFFIX_RULES:
            if len(token) > len(suffix) + 2 and token.endswith(suffix):
                return t
        return "NOUN"

    def tag(self, tokens) -> tuple[str, ...]:
        return tuple(self.tag_word(t) for t in tokens)


def tag_corpus(corpus: Corpus, tagger: LexiconTagger) -> list[TaggedDocument]:
    return [TaggedDocument(doc.id, doc.tokens, tagger.tag(doc.tokens)) for doc in corpus.documents]


def load_tagged_corpus(path) -> list[TaggedDocument]:
    """One document per line, tokens as `token_TAG` separated by spaces."""
    path = Path(path)
    docs = []
    for i, line in enumerate(path.read_text(encoding="utf-8").splitlines()):
        tokens, tags = [], []
        for chunk in line.split():
            if "_" not in chunk:
                raise ValueError(f"{path}: line {i + 1}: {chunk!r} is not token_TAG")
            token, tag = chunk.rsplit("_", 1)
            if tag not in COARSE_TAGS:
                raise ValueError(f"{path}: line {i + 1}: unknown tag {tag!r}")
            tokens.append(token.lower())
            tags.append(tag)
        docs.append(TaggedDocument(str(i), tuple(tokens), tuple(tags)))
    return docs
