"""Learning-to-rank for paraphrase candidates.

A linear scorer (optionally with one 16-unit tanh hidden layer) is trained
with adaptive-gradient updates on annotator-count relevance, under either
a pairwise logistic loss or a softmax cross-entropy loss, and evaluated
with mean reciprocal rank.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import normalize_tokens
from .embedrank import EmbeddingTable, cosine
from .features import standardize_fit, vowel_count, word_sentence_geometry
from .lexsub import is_academic
from .ngrams import FrequencyTable, rel_freq
from .resource import Resource

log = logging.getLogger(__name__)

LOSSES = ("logistic", "softmax")
HIDDEN_UNITS = 16
ADAGRAD_EPS = 1e-8
LOG_RATIO_CLAMP = 10.0

RANKER_FEATURE_NAMES = (
    "is_academic",
    "acad_rate",
    "nonacad_rate",
    "log_ratio",
    "cos_cand_sent",
    "cos_cand_target",
    "length",
    "vowels",
)

MODEL_FORMAT = "acadaid-ranker-model"
MODEL_VERSION = 1


class TrainingError(RuntimeError):
    pass


def _normalized(token: str) -> str:
    parts = normalize_tokens(token)
    return parts[0] if parts else token.lower()


@dataclass
class GroupFeatures:
    """One ranking group, featurized: per-candidate feature rows, the
    annotator-count relevances, and the candidate words (for tie-breaks)."""

    features: np.ndarray  # (m, d)
    relevance: np.ndarray  # (m,) non-negative ints
    words: tuple[str, ...]


@dataclass
class RankFeatureContext:
    resource: Resource
    acad_table: FrequencyTable
    nonacad_table: FrequencyTable
    embeddings: EmbeddingTable
    external_lists: tuple = ()


def _log_ratio(acad_rate: float, nonacad_rate: float) -> float:
    if acad_rate == 0.0 and nonacad_rate == 0.0:
        return 0.0
    if nonacad_rate == 0.0:
        return LOG_RATIO_CLAMP
    if acad_rate == 0.0:
        return -LOG_RATIO_CLAMP
    return float(np.clip(math.log(acad_rate / nonacad_rate), -LOG_RATIO_CLAMP, LOG_RATIO_CLAMP))


def candidate_features(word: str, sentence_tokens, target: str, ctx: RankFeatureContext) -> np.ndarray:
    sentence = tuple(_normalized(t) for t in sentence_tokens)
    acad_rate = rel_freq(ctx.acad_table, (word,))
    nonacad_rate = rel_freq(ctx.nonacad_table, (word,))
    cos_sent, _ = word_sentence_geometry(word, sentence, ctx.embeddings)
    wv = ctx.embeddings.vectors.get(word)
    tv = ctx.embeddings.vectors.get(target)
    cos_target = cosine(wv, tv) if wv is not None and tv is not None else 0.0
    return np.array(
        [
            1.0 if is_academic(word, ctx.resource, ctx.external_lists) else 0.0,
            acad_rate,
            nonacad_rate,
            _log_ratio(acad_rate, nonacad_rate),
            cos_sent,
            cos_target,
            float(len(word)),
            float(vowel_count(word)),
        ],
        dtype=np.float64,
    )


def featurize_groups(groups, ctx: RankFeatureContext) -> list[GroupFeatures]:
    out = []
    for group in groups:
        rows = [
            candidate_features(c.word, group.instance.tokens, group.instance.target, ctx)
            for c in group.candidates
        ]
        out.append(
            GroupFeatures(
                np.array(rows),
                np.array([c.relevance for c in group.candidates], dtype=np.int64),
                tuple(c.word for c in group.candidates),
            )
        )
    return out


@dataclass
class RankerModel:
    loss: str
    dim: int
    hidden: int
    params: dict[str, np.ndarray]
    accum: dict[str, np.ndarray] = field(default_factory=dict)
    # feature standardization fitted on the training groups; raw rate
    # features span orders of magnitude, which would swamp the optimizer
    means: np.ndarray | None = None
    scales: np.ndarray | None = None
    loss_history: list[float] = field(default_factory=list)
    skipped_groups: int = 0

    def transform(self, features: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(features, dtype=np.float64))
        if self.means is not None:
            x = (x - self.means) / self.scales
        return x

    def scores(self, features: np.ndarray) -> np.ndarray:
        x = self.transform(features)
        if self.hidden:
            h = np.tanh(x @ self.params["w1"].T + self.params["b1"])
            return h @ self.params["w2"] + self.params["b2"]
        return x @ self.params["w"] + self.params["b"]


def new_model(
    dim: int,
    loss: str = "logistic",
    hidden: int = 0,
    seed: int = 0,
    means: np.ndarray | None = None,
    scales: np.ndarray | None = None,
) -> RankerModel:
    if loss not in LOSSES:
        raise ValueError(f"loss must be one of {LOSSES}")
    if hidden not in (0, HIDDEN_UNITS):
        raise ValueError(f"hidden must be 0 or {HIDDEN_UNITS}")
    rng = np.random.default_rng(seed)
    if hidden:
        params = {
            "w1": rng.normal(0.0, 0.1, size=(hidden, dim)),
            "b1": np.zeros(hidden),
            "w2": rng.normal(0.0, 0.1, size=hidden),
            "b2": np.zeros(1),
        }
    else:
        params = {"w": np.zeros(dim), "b": np.zeros(1)}
    accum = {k: np.zeros_like(v) for k, v in params.items()}
    return RankerModel(
        loss=loss, dim=dim, hidden=hidden, params=params, accum=accum, means=means, scales=scales
    )


def _softplus(x: np.ndarray) -> np.ndarray:
    # log(1 + exp(x)) without overflow
    return np.maximum(x, 0.0) + np.log1p(np.exp(-np.abs(x)))


def _group_loss_grad(scores: np.ndarray, relevance: np.ndarray, loss: str):
    """Loss value and d(loss)/d(scores) for one group."""
    if loss == "logistic":
        total = 0.0
        ds = np.zeros_like(scores)
        m = len(scores)
        for i in range(m):
            for j in range(m):
                if relevance[i] > relevance[j]:
                    d = float(scores[i] - scores[j])
                    total += float(_softplus(np.array(-d)))
                    if d > 500.0:
                        g = 0.0
                    elif d < -500.0:
                        g = 1.0
                    else:
                        g = 1.0 / (1.0 + math.exp(d))
                    ds[i] -= g
                    ds[j] += g
        return total, ds
    # softmax cross-entropy against relevance shares
    rel_sum = float(relevance.sum())
    targets = relevance / rel_sum
    shifted = scores - scores.max()
    exp = np.exp(shifted)
    p = exp / exp.sum()
    total = float(-(targets * (shifted - math.log(exp.sum()))).sum())
    return total, p - targets


def _score_backward(model: RankerModel, x: np.ndarray, ds: np.ndarray, grads: dict) -> None:
    """Accumulate parameter gradients from d(loss)/d(scores) of one group;
    `x` is already standardized."""
    if model.hidden:
        z = x @ model.params["w1"].T + model.params["b1"]
        h = np.tanh(z)
        grads["w2"] += h.T @ ds
        grads["b2"] += ds.sum(keepdims=True)
        dz = (ds[:, None] * model.params["w2"][None, :]) * (1.0 - h * h)
        grads["w1"] += dz.T @ x
        grads["b1"] += dz.sum(axis=0)
    else:
        grads["w"] += x.T @ ds
        grads["b"] += ds.sum(keepdims=True)


def loss_and_grad(model: RankerModel, groups: list[GroupFeatures]):
    """Total loss over all groups and its gradient w.r.t. every parameter."""
    total = 0.0
    grads = {k: np.zeros_like(v) for k, v in model.params.items()}
    for group in groups:
        x = model.transform(group.features)
        scores = model.scores(group.features)
        value, ds = _group_loss_grad(scores, group.relevance, model.loss)
        total += value
        _score_backward(model, x, ds, grads)
    return total, grads


def train_ranker(
    groups: list[GroupFeatures],
    loss: str = "logistic",
    steps: int = 100,
    learning_rate: float = 0.05,
    seed: int = 0,
    hidden: int = 0,
) -> RankerModel:
    """Batch adaptive-gradient training: one step is one full pass of
    accumulated gradient over the training groups; each parameter moves by
    learning_rate / sqrt(accumulated squared gradient + 1e-8) times its
    gradient. Groups without any relevance > 0 candidate are skipped and
    counted."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    usable = [g for g in groups if (g.relevance > 0).any()]
    skipped = len(groups) - len(usable)
    if not usable:
        raise TrainingError("no trainable groups (none has a candidate with relevance > 0)")
    dim = usable[0].features.shape[1]
    means, scales = standardize_fit(np.vstack([g.features for g in usable]))
    model = new_model(dim, loss, hidden, seed, means, scales)
    model.skipped_groups = skipped

    for step in range(steps):
        value, grads = loss_and_grad(model, usable)
        if not math.isfinite(value):
            raise TrainingError(f"non-finite training loss at step {step}")
        model.loss_history.append(value)
        for key, g in grads.items():
            model.accum[key] += g * g
            model.params[key] -= learning_rate * g / np.sqrt(model.accum[key] + ADAGRAD_EPS)
    final, _ = loss_and_grad(model, usable)
    model.loss_history.append(final)
    return model


def rank_words(model: RankerModel, group: GroupFeatures) -> list[tuple[str, float]]:
    """Candidates sorted by score descending, ties by word."""
    scores = model.scores(group.features)
    order = sorted(range(len(group.words)), key=lambda i: (-scores[i], group.words[i]))
    return [(group.words[i], float(scores[i])) for i in order]


@dataclass
class RankingMetrics:
    mrr: float
    evaluated: int
    skipped: int


def mrr(model: RankerModel, groups: list[GroupFeatures]) -> RankingMetrics:
    """Mean over groups of 1/rank of the first relevant (relevance > 0)
    candidate. Groups with no relevant candidate are excluded and counted."""
    total = 0.0
    evaluated = 0
    skipped = 0
    for group in groups:
        if not (group.relevance > 0).any():
            skipped += 1
            continue
        ranked = rank_words(model, group)
        rel_by_word = dict(zip(group.words, group.relevance))
        for rank, (word, _score) in enumerate(ranked, start=1):
            if rel_by_word[word] > 0:
                total += 1.0 / rank
                break
        evaluated += 1
    if skipped:
        log.warning("mrr: skipped %d group(s) with no relevant candidate", skipped)
    if evaluated == 0:
        raise ValueError("no evaluable groups")
    return RankingMetrics(total / evaluated, evaluated, skipped)


def _flatten(params: dict[str, np.ndarray]):
    keys = sorted(params)
    vec = np.concatenate([params[k].ravel() for k in keys])
    return keys, vec


def _unflatten(keys, vec: np.ndarray, like: dict[str, np.ndarray]) -> dict[str, np.ndarray]:
    out = {}
    pos = 0
    for k in keys:
        size = like[k].size
        out[k] = vec[pos : pos + size].reshape(like[k].shape).copy()
        pos += size
    return out


def gradient_check(model: RankerModel, groups: list[GroupFeatures], h: float = 1e-5) -> float:
    """Max relative error between analytic gradients and central finite
    differences over every parameter."""
    _, analytic = loss_and_grad(model, groups)
    keys, vec = _flatten(model.params)
    _, avec = _flatten(analytic)
    worst = 0.0
    original = {k: v.copy() for k, v in model.params.items()}
    for idx in range(len(vec)):
        plus = vec.copy()
        plus[idx] += h
        model.params = _unflatten(keys, plus, original)
        up, _ = loss_and_grad(model, groups)
        minus = vec.copy()
        minus[idx] -= h
        model.params = _unflatten(keys, minus, original)
        down, _ = loss_and_grad(model, groups)
        numeric = (up - down) / (2.0 * h)
        rel = abs(avec[idx] - numeric) / max(1e-3, abs(avec[idx]) + abs(numeric))
        worst = max(worst, rel)
    model.params = original
    return worst


def save_model(model: RankerModel, path) -> None:
    payload = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "loss": model.loss,
        "dim": model.dim,
        "hidden": model.hidden,
        "params": {k: v.tolist() for k, v in model.params.items()},
        "accum": {k: v.tolist() for k, v in model.accum.items()},
        "means": None if model.means is None else model.means.tolist(),
        "scales": None if model.scales is None else model.scales.tolist(),
        "skipped_groups": model.skipped_groups,
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True) + "\n", encoding="utf-8")


def load_model(path) -> RankerModel:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if payload.get("format") != MODEL_FORMAT:
        raise ValueError(f"{path}: not a ranker model file")
    if payload.get("version") != MODEL_VERSION:
        raise ValueError(f"{path}: unsupported model version {payload.get('version')}")
    params = {k: np.array(v) for k, v in payload["params"].items()}
    accum = {k: np.array(v) for k, v in payload["accum"].items()}
    model = RankerModel(
        loss=payload["loss"],
        dim=int(payload["dim"]),
        hidden=int(payload["hidden"]),
        params=params,
        accum=accum,
        means=None if payload.get("means") is None else np.array(payload["means"]),
        scales=None if payload.get("scales") is None else np.array(payload["scales"]),
    )
    model.skipped_groups = int(payload.get("skipped_groups", 0))
    return model


def score(model: RankerModel, group) -> list[float]:
    """Scores for a RankingGroup already featurized, or raw features."""
    if isinstance(group, GroupFeatures):
        return [float(s) for s in model.scores(group.features)]
    return [float(s) for s in model.scores(np.asarray(group, dtype=np.float64))]
