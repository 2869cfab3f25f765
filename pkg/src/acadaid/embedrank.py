"""Noun-phrase keyphrase candidates ranked by embedding similarity.

Candidates are maximal spans matching (ADJ)*(NOUN)+; each is scored by the
cosine between its mean word vector and the document's mean word vector.
"""

from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .ngrams import PhraseKey
from .postag import TaggedDocument


class EmbeddingFormatError(ValueError):
    """Raised for malformed word-vector files."""


@dataclass
class EmbeddingTable:
    dim: int
    vectors: dict[str, np.ndarray]

    def __contains__(self, word: str) -> bool:
        return word in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class CandidatePhrase:
    phrase: PhraseKey
    doc_id: str
    span: tuple[int, int]
    similarity: float = 0.0


def load_embeddings(path) -> EmbeddingTable:
    """Parse a word-vector text file: `word v1 v2 ... vd` per line.

    The dimension is inferred from the first row; rows with a deviating
    dimension are rejected with their line number.
    """
    path = Path(path)
    vectors: dict[str, np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as fh:
        for i, line in enumerate(fh, start=1):
            parts = line.rstrip("\n").split(" ")
            if len(parts) < 2:
                raise EmbeddingFormatError(f"{path}: line {i}: expected `word v1 ... vd`")
            word = parts[0]
            try:
                vec = np.array([float(x) for x in parts[1:]], dtype=np.float64)
            except ValueError as exc:
                raise EmbeddingFormatError(f"{path}: line {i}: non-numeric value ({exc})") from exc
            if dim is None:
                dim = len(vec)
            elif len(vec) != dim:
                raise EmbeddingFormatError(
                    f"{path}: line {i}: expected {dim} values, got {len(vec)}"
                )
            vectors[word] = vec
    if dim is None:
        raise EmbeddingFormatError(f"{path}: empty embedding file")
    return EmbeddingTable(dim, vectors)


def extract_candidates(doc: TaggedDocument, max_len: int = 4) -> list[CandidatePhrase]:
    """Maximal non-overlapping (ADJ)*(NOUN)+ matches, scanning left to
    right with the longest match at each start.

    Matches longer than max_len keep their final max_len tokens, so the
    head noun survives truncation. Every match contains at least one NOUN.
    """
    tags = doc.tags
    n = len(tags)
    out = []
    i = 0
    while i < n:
        j = i
        while j < n and tags[j] == "ADJ":
            j += 1
        if j < n and tags[j] == "NOUN":
            while j < n and tags[j] == "NOUN":
                j += 1
            start, end = i, j
            if end - start > max_len:
                start = end - max_len
            out.append(CandidatePhrase(tuple(doc.tokens[start:end]), doc.id, (start, end)))
            i = j
        else:
            i += 1
    return out


def embed_phrase(phrase: PhraseKey, table: EmbeddingTable) -> np.ndarray | None:
    """Mean of the in-vocabulary token vectors; None if every token is OOV."""
    vecs = [table.vectors[t] for t in phrase if t in table.vectors]
    if not vecs:
        return None
    return np.mean(vecs, axis=0)


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def rank_candidates(
    doc: TaggedDocument, table: EmbeddingTable, k_per_doc: int, max_len: int = 4
) -> list[CandidatePhrase]:
    """Top k_per_doc candidates by cosine to the document's mean vector.

    Candidates whose tokens are all OOV are dropped; a document with zero
    in-vocabulary tokens yields no candidates at all.
    """
    if k_per_doc < 1:
        raise ValueError("k_per_doc must be >= 1")
    doc_vec = embed_phrase(doc.tokens, table)
    if doc_vec is None:
        return []
    ranked = []
    for cand in extract_candidates(doc, max_len):
        vec = embed_phrase(cand.phrase, table)
        if vec is None:
            continue
        ranked.append(replace(cand, similarity=cosine(vec, doc_vec)))
    ranked.sort(key=lambda c: (-c.similarity, c.phrase))
    return ranked[:k_per_doc]
