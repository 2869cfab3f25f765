"""Informal-word classifier: featurization, an RBF-kernel max-margin
classifier trained by a simplified SMO dual optimizer, the stratified
baseline, and precision/recall/F1 evaluation."""

import json
import random
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import normalize_tokens
from .embedrank import EmbeddingTable
from .features import FrequencyLists, standardize_fit, vowel_count, word_sentence_geometry
from .lexsub import FORMAL, INFORMAL, IWIInstance
from .postag import COARSE_TAGS, LexiconTagger

FEATURE_NAMES = (
    "freq_web",
    "freq_general",
    "freq_academic",
    "cos_word_sent",
    "eucl_word_sent",
    *(f"pos_{tag}" for tag in COARSE_TAGS),
    "word_length",
    "vowel_count",
)
NUM_FEATURES = len(FEATURE_NAMES)

# Fe1 = frequencies + cosine; Fe2 = Fe1 + euclidean; Fe3 = everything.
FEATURE_SETS = {
    "fe1": tuple(range(4)),
    "fe2": tuple(range(5)),
    "fe3": tuple(range(NUM_FEATURES)),
}

MODEL_FORMAT = "acadaid-iwi-model"
MODEL_VERSION = 1


class TrainingError(RuntimeError):
    pass


def _normalized(token: str) -> str:
    parts = normalize_tokens(token)
    return parts[0] if parts else token.lower()


def featurize(
    instance: IWIInstance,
    freqs: FrequencyLists,
    embeddings: EmbeddingTable,
    tagger: LexiconTagger,
) -> np.ndarray:
    """Full feature vector for one labeled token; deterministic, with
    missing-data fallbacks (absent frequency -> 0, absent embedding ->
    cosine 0 / distance the sentence-vector norm).

    Tokens are normalized before lookup so raw-cased input sentences hit
    the lowercase frequency and embedding tables.
    """
    word = _normalized(instance.token)
    sentence = tuple(_normalized(t) for t in instance.tokens)
    cos, eucl = word_sentence_geometry(word, sentence, embeddings)
    tag = tagger.tag(sentence)[instance.token_index]
    onehot = [1.0 if tag == t else 0.0 for t in COARSE_TAGS]
    return np.array(
        [
            freqs.web.rate(word),
            freqs.general.rate(word),
            freqs.academic.rate(word),
            cos,
            eucl,
            *onehot,
            float(len(word)),
            float(vowel_count(word)),
        ],
        dtype=np.float64,
    )


@dataclass
class IwiModel:
    feature_set: str
    means: np.ndarray
    scales: np.ndarray
    support_vectors: np.ndarray  # standardized, (m, d)
    dual_coef: np.ndarray  # alpha_i * y_i, (m,)
    bias: float
    gamma: float
    c: float

    def _transform(self, features: np.ndarray) -> np.ndarray:
        x = np.asarray(features, dtype=np.float64)
        squeeze = x.ndim == 1
        x = np.atleast_2d(x)
        if x.shape[1] == NUM_FEATURES:
            x = x[:, FEATURE_SETS[self.feature_set]]
        if x.shape[1] != len(self.means):
            raise ValueError(
                f"expected {len(self.means)} (or {NUM_FEATURES}) features, got {x.shape[1]}"
            )
        x = (x - self.means) / self.scales
        return x[0] if squeeze else x

    def decision_value(self, features: np.ndarray) -> float:
        x = self._transform(features)
        k = _rbf_row(self.support_vectors, x, self.gamma)
        return float(self.dual_coef @ k + self.bias)

    def predict(self, features: np.ndarray) -> str:
        # Informal only on a strictly positive margin: ties go to formal.
        return INFORMAL if self.decision_value(features) > 0.0 else FORMAL


def _rbf_row(X: np.ndarray, x: np.ndarray, gamma: float) -> np.ndarray:
    d = X - x
    return np.exp(-gamma * np.einsum("ij,ij->i", d, d))


def _rbf_matrix(X: np.ndarray, gamma: float) -> np.ndarray:
    sq = np.sum(X * X, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (X @ X.T)
    np.maximum(d2, 0.0, out=d2)
    return np.exp(-gamma * d2)


def _smo(K: np.ndarray, y: np.ndarray, c: float, tol: float, max_iter: int, seed: int):
    """Simplified sequential minimal optimization on the dual problem.

    Examines every multiplier per sweep, pairing a KKT violator with a
    random partner; stops after three clean sweeps or `max_iter` total
    examinations.
    """
    rng = random.Random(seed)
    n = len(y)
    alpha = np.zeros(n)
    b = 0.0
    iters = 0
    clean_sweeps = 0
    while clean_sweeps < 3 and iters < max_iter:
        changed = 0
        for i in range(n):
            iters += 1
            if iters > max_iter:
                break
            e_i = float((alpha * y) @ K[:, i]) + b - y[i]
            r_i = y[i] * e_i
            if not ((r_i < -tol and alpha[i] < c) or (r_i > tol and alpha[i] > 0)):
                continue
            j = rng.randrange(n - 1)
            if j >= i:
                j += 1
            e_j = float((alpha * y) @ K[:, j]) + b - y[j]
            a_i, a_j = alpha[i], alpha[j]
            if y[i] != y[j]:
                low, high = max(0.0, a_j - a_i), min(c, c + a_j - a_i)
            else:
                low, high = max(0.0, a_i + a_j - c), min(c, a_i + a_j)
            if low == high:
                continue
            eta = 2.0 * K[i, j] - K[i, i] - K[j, j]
            if eta >= 0:
                continue
            new_j = a_j - y[j] * (e_i - e_j) / eta
            new_j = min(high, max(low, new_j))
            if abs(new_j - a_j) < 1e-7:
                continue
            new_i = a_i + y[i] * y[j] * (a_j - new_j)
            b1 = b - e_i - y[i] * (new_i - a_i) * K[i, i] - y[j] * (new_j - a_j) * K[i, j]
            b2 = b - e_j - y[i] * (new_i - a_i) * K[i, j] - y[j] * (new_j - a_j) * K[j, j]
            alpha[i], alpha[j] = new_i, new_j
            if 0.0 < new_i < c:
                b = b1
            elif 0.0 < new_j < c:
                b = b2
            else:
                b = 0.5 * (b1 + b2)
            changed += 1
        clean_sweeps = clean_sweeps + 1 if changed == 0 else 0
    return alpha, b


def train(
    features: np.ndarray,
    labels,
    feature_set: str = "fe3",
    c: float = 1.0,
    gamma: float | None = None,
    seed: int = 0,
    tol: float = 1e-3,
    max_iter: int = 100_000,
) -> IwiModel:
    """Standardize, then fit the RBF-kernel classifier on the dual problem.

    Training rows are put in a canonical order first, so the fitted model
    does not depend on how the caller happened to order the data.
    """
    if feature_set not in FEATURE_SETS:
        raise ValueError(f"feature_set must be one of {sorted(FEATURE_SETS)}")
    X = np.asarray(features, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError("features must be a 2-d array")
    y = np.array([1.0 if lbl == INFORMAL else -1.0 for lbl in labels])
    if len(y) != len(X):
        raise ValueError("features and labels must have the same length")
    if len(set(labels)) < 2:
        raise TrainingError("training data must contain both labels")
    if X.shape[1] == NUM_FEATURES:
        X = X[:, FEATURE_SETS[feature_set]]

    order = np.lexsort(tuple(X[:, j] for j in reversed(range(X.shape[1]))) + (y,))
    X, y = X[order], y[order]

    means, scales = standardize_fit(X)
    Xs = (X - means) / scales
    if gamma is None:
        var = float(Xs.var())
        gamma = 1.0 / (Xs.shape[1] * var) if var > 0 else 1.0
    K = _rbf_matrix(Xs, gamma)
    alpha, b = _smo(K, y, c, tol, max_iter, seed)

    sv = alpha > 1e-8
    return IwiModel(
        feature_set=feature_set,
        means=means,
        scales=scales,
        support_vectors=Xs[sv],
        dual_coef=(alpha * y)[sv],
        bias=b,
        gamma=gamma,
        c=c,
    )


class StratifiedBaseline:
    """Predicts by sampling the training label distribution, ignoring
    features entirely. Same seed, same prediction sequence."""

    def __init__(self, train_labels, seed: int = 0):
        labels = list(train_labels)
        if not labels:
            raise TrainingError("baseline needs at least one training label")
        self.informal_fraction = sum(1 for l in labels if l == INFORMAL) / len(labels)
        self._rng = random.Random(seed)

    def predict(self, features=None) -> str:
        return INFORMAL if self._rng.random() < self.informal_fraction else FORMAL


@dataclass
class IwiMetrics:
    precision: float
    recall: float
    f1: float


def metrics_from_predictions(predicted, gold) -> IwiMetrics:
    """P/R/F1 with informal as the positive class; zero denominators
    yield 0 by convention."""
    tp = sum(1 for p, g in zip(predicted, gold) if p == INFORMAL and g == INFORMAL)
    fp = sum(1 for p, g in zip(predicted, gold) if p == INFORMAL and g == FORMAL)
    fn = sum(1 for p, g in zip(predicted, gold) if p == FORMAL and g == INFORMAL)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return IwiMetrics(precision, recall, f1)


def evaluate(model, features: np.ndarray, gold) -> IwiMetrics:
    gold = list(gold)
    if not gold:
        raise ValueError("test data must be non-empty")
    predictions = [model.predict(x) for x in np.asarray(features, dtype=np.float64)]
    return metrics_from_predictions(predictions, gold)


def save_model(model: IwiModel, path) -> None:
    payload = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "feature_set": model.feature_set,
        "means": model.means.tolist(),
        "scales": model.scales.tolist(),
        "support_vectors": model.support_vectors.tolist(),
        "dual_coef": model.dual_coef.tolist(),
        "bias": model.bias,
        "gamma": model.gamma,
        "c": model.c,
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True) + "\n", encoding="utf-8")


def load_model(path) -> IwiModel:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if payload.get("format") != MODEL_FORMAT:
        raise ValueError(f"{path}: not an IWI model file")
    if payload.get("version") != MODEL_VERSION:
        raise ValueError(f"{path}: unsupported model version {payload.get('version')}")
    return IwiModel(
        feature_set=payload["feature_set"],
        means=np.array(payload["means"]),
        scales=np.array(payload["scales"]),
        support_vectors=np.array(payload["support_vectors"]).reshape(
            len(payload["dual_coef"]), -1
        ),
        dual_coef=np.array(payload["dual_coef"]),
        bias=float(payload["bias"]),
        gamma=float(payload["gamma"]),
        c=float(payload["c"]),
    )
