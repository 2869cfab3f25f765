"""Analysis engine: tokenize with offsets, flag informal tokens, and rank
academic substitutes.

The engine is an immutable snapshot of loaded artifacts; concurrent
requests share it read-only and a reload builds a whole new snapshot.
"""

import math
import re
from dataclasses import dataclass, field

import numpy as np

from ..corpus import normalize_tokens
from ..embedrank import load_embeddings
from ..features import FrequencyLists, load_freq_list
from ..iwi import INFORMAL, featurize, load_model as load_iwi_model
from ..lexsub import IWIInstance, is_academic, load_synonym_lexicon
from ..ngrams import FrequencyTable, read_table
from ..postag import LexiconTagger
from ..ranker import RankFeatureContext, candidate_features, load_model as load_ranker_model
from ..resource import import_external, read_resource
from .config import ServiceConfig

_TOKEN_RE = re.compile(r"\S+")


class ModelsNotLoaded(RuntimeError):
    """Raised when analyze is called while required artifacts are missing."""


@dataclass(frozen=True)
class TokenSpan:
    text: str
    start: int
    end: int


@dataclass(frozen=True)
class Flag:
    token_index: int
    confidence: float


@dataclass
class AnalysisResult:
    tokens: list[TokenSpan]
    flags: list[Flag]
    suggestions: dict[int, list[tuple[str, float]]]


@dataclass
class HealthReport:
    status: str
    gaps: list[str]
    counts: dict[str, int]


def tokenize_with_offsets(text: str) -> list[TokenSpan]:
    """Whitespace-delimited tokens with character offsets; each span slices
    the original text back out exactly."""
    return [TokenSpan(m.group(), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]


def _sigmoid(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


@dataclass
class AnalysisEngine:
    resource: object = None
    external_lists: tuple = ()
    iwi_model: object = None
    ranker_model: object = None
    embeddings: object = None
    freq_lists: FrequencyLists | None = None
    lexicons: tuple = ()
    acad_unigrams: FrequencyTable | None = None
    nonacad_unigrams: FrequencyTable | None = None
    tagger: LexiconTagger = field(default_factory=LexiconTagger)
    gaps: list[str] = field(default_factory=list)

    @classmethod
    def from_config(cls, config: ServiceConfig) -> "AnalysisEngine":
        """Load every artifact the config names; missing ones are recorded
        as gaps and degrade /health rather than failing startup."""
        engine = cls()
        loaders = {
            "resource": lambda p: setattr(engine, "resource", read_resource(p)),
            "iwi_model": lambda p: setattr(engine, "iwi_model", load_iwi_model(p)),
            "ranker_model": lambda p: setattr(engine, "ranker_model", load_ranker_model(p)),
            "embeddings": lambda p: setattr(engine, "embeddings", load_embeddings(p)),
        }
        for key, loader in loaders.items():
            value = getattr(config, key)
            if value is None:
                engine.gaps.append(key)
                continue
            try:
                loader(value)
            except FileNotFoundError:
                engine.gaps.append(key)
        freq = {}
        for key in ("freq_web", "freq_general", "freq_academic"):
            value = getattr(config, key)
            if value is None:
                engine.gaps.append(key)
                continue
            try:
                freq[key] = load_freq_list(value)
            except FileNotFoundError:
                engine.gaps.append(key)
        if len(freq) == 3:
            engine.freq_lists = FrequencyLists(
                freq["freq_web"], freq["freq_general"], freq["freq_academic"]
            )
        engine.lexicons = tuple(load_synonym_lexicon(p) for p in config.lexicons)
        if not engine.lexicons:
            engine.gaps.append("lexicons")
        engine.external_lists = tuple(import_external(p) for p in config.external_lists)
        for key, attr in (("acad_ngrams", "acad_unigrams"), ("nonacad_ngrams", "nonacad_unigrams")):
            value = getattr(config, key)
            if value is None:
                continue
            try:
                setattr(engine, attr, read_table(value))
            except FileNotFoundError:
                engine.gaps.append(key)
        if engine.acad_unigrams is None or engine.nonacad_unigrams is None:
            engine._rate_tables_from_resource()
        return engine

    def _rate_tables_from_resource(self):
        """Fallback when the corpus n-gram tables are not configured:
        rebuild unigram rate tables from the resource's stored per-million
        rates (count == rate when the totals are one million)."""
        if self.resource is None:
            return
        acad_counts, nonacad_counts = {}, {}
        for phrase, entry in self.resource.entries.items():
            if len(phrase) != 1:
                continue
            acad_counts[phrase] = max(0, round(entry.acad_rate))
            nonacad_counts[phrase] = max(0, round(entry.nonacad_rate))
        million = {1: 1_000_000}
        if self.acad_unigrams is None:
            self.acad_unigrams = FrequencyTable(acad_counts, million, 1_000_000)
        if self.nonacad_unigrams is None:
            self.nonacad_unigrams = FrequencyTable(nonacad_counts, million, 1_000_000)

    # -- operations ------------------------------------------------------

    def analyze(self, text: str, k: int = 4) -> AnalysisResult:
        required = (
            self.iwi_model,
            self.ranker_model,
            self.resource,
            self.embeddings,
            self.freq_lists,
        )
        if any(artifact is None for artifact in required):
            raise ModelsNotLoaded(f"missing artifacts: {', '.join(self.gaps)}")
        tokens = tokenize_with_offsets(text)
        if not tokens:
            return AnalysisResult([], [], {})

        norm_per_token = [normalize_tokens(t.text) for t in tokens]
        sentence = tuple(parts[0] if parts else "" for parts in norm_per_token)
        flags: list[Flag] = []
        suggestions: dict[int, list[tuple[str, float]]] = {}
        for index, parts in enumerate(norm_per_token):
            if len(parts) != 1:
                continue
            word = parts[0]
            # academic terms are formal by definition, never flagged
            if is_academic(word, self.resource, self.external_lists):
                continue
            instance = IWIInstance("query", sentence, index, INFORMAL)
            vector = featurize(instance, self.freq_lists, self.embeddings, self.tagger)
            decision = self.iwi_model.decision_value(vector)
            if decision <= 0.0:
                continue
            flags.append(Flag(index, _sigmoid(decision)))
            suggestions[index] = self._rank_substitutes(word, sentence, k)
        return AnalysisResult(tokens, flags, suggestions)

    def _candidate_words(self, word: str) -> list[str]:
        seen = []
        for lexicon in self.lexicons:
            for synonym, _score in lexicon.get(word, ()):
                parts = normalize_tokens(synonym)
                if len(parts) != 1:
                    continue
                candidate = parts[0]
                if candidate != word and candidate not in seen:
                    seen.append(candidate)
        return seen

    def _rank_substitutes(self, word: str, sentence, k: int) -> list[tuple[str, float]]:
        academic = [
            c
            for c in self._candidate_words(word)
            if is_academic(c, self.resource, self.external_lists)
        ]
        if not academic:
            return []
        ctx = RankFeatureContext(
            resource=self.resource,
            acad_table=self.acad_unigrams,
            nonacad_table=self.nonacad_unigrams,
            embeddings=self.embeddings,
            external_lists=self.external_lists,
        )
        rows = np.array([candidate_features(c, sentence, word, ctx) for c in academic])
        scores = self.ranker_model.scores(rows)
        order = sorted(range(len(academic)), key=lambda i: (-scores[i], academic[i]))
        return [(academic[i], float(scores[i])) for i in order[:k]]

    def lookup(self, phrase: str):
        if self.resource is None:
            raise ModelsNotLoaded("resource not loaded")
        key = tuple(normalize_tokens(phrase))
        return self.resource.entries.get(key)

    def health(self) -> HealthReport:
        counts = {
            "resource_entries": len(self.resource) if self.resource is not None else 0,
            "embedding_vocab": len(self.embeddings) if self.embeddings is not None else 0,
            "lexicons": len(self.lexicons),
            "external_lists": len(self.external_lists),
        }
        status = "ok" if not self.gaps else "degraded"
        return HealthReport(status, list(self.gaps), counts)
