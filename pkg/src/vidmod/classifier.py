"""The trainable binary filter and its feature pipeline.

The filter starts as a weight-free linear stage that scores a video by the
same mean-of-maxima rule the risk module uses. Once moderators have produced
reviewed labels, it is retrained as a small one-hidden-layer network over
pooled features; reviews are the ground truth, so the filter keeps learning
from the reviewing it causes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from .corpus import NORMAL_LABEL, RiskTaxonomy, VideoRecord
from .errors import DomainError, ModelError, ParseError, TrainingError
from .risk import aggregate_tag_scores, audio_rates

if TYPE_CHECKING:
    from .store import ReviewLabel

LINEAR_STAGE = "linear"
LEARNED_STAGE = "learned"


# ---------------------------------------------------------------------------
# Features
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FeatureMatrixPair:
    """A video as two matrices plus a fixed-length pooled summary.

    visual is frames x tags of aggregated scores, audio is clips x words of
    rates. pooled concatenates per-tag max, per-tag mean, per-word max and
    per-word mean, so its length is 2 * n_tags + 2 * n_words regardless of
    video length; a missing modality contributes a zero block.
    """

    visual: np.ndarray
    audio: np.ndarray
    pooled: np.ndarray


def _pool(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if matrix.shape[0] == 0:
        width = matrix.shape[1]
        return np.zeros(width), np.zeros(width)
    return matrix.max(axis=0), matrix.mean(axis=0)


def featurize(video: VideoRecord, taxonomy: RiskTaxonomy) -> FeatureMatrixPair:
    visual = np.zeros((len(video.frames), len(taxonomy.tags)))
    for i, frame in enumerate(video.frames):
        visual[i] = aggregate_tag_scores(frame, taxonomy).scores
    audio = np.zeros((len(video.audio), len(taxonomy.words)))
    for j, clip in enumerate(video.audio):
        audio[j] = audio_rates(clip, taxonomy).scores

    v_max, v_mean = _pool(visual)
    a_max, a_mean = _pool(audio)
    pooled = np.concatenate([v_max, v_mean, a_max, a_mean])
    return FeatureMatrixPair(visual=visual, audio=audio, pooled=pooled)


# ---------------------------------------------------------------------------
# Model
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ModelWeights:
    w1: np.ndarray  # (hidden, features)
    b1: np.ndarray  # (hidden,)
    w2: np.ndarray  # (hidden,)
    b2: float


@dataclass(frozen=True)
class FilterModel:
    """A versioned filter snapshot; the linear stage carries no weights."""

    version: int
    stage: str
    weights: ModelWeights | None = None
    training_meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 500
    learning_rate: float = 0.5  # stable default: loss is non-increasing at or below this
    seed: int = 0
    hidden_width: int = 16
    checkpoint_every: int = 50


def linear_model(version: int = 0) -> FilterModel:
    return FilterModel(version=version, stage=LINEAR_STAGE)


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def predict(model: FilterModel, features: FeatureMatrixPair) -> float:
    """Deviance score in [0, 1]; deterministic for a fixed model."""
    if model.stage == LINEAR_STAGE:
        n = features.visual.shape[0]
        m = features.audio.shape[0]
        if n + m == 0:
            raise DomainError("undefined risk (no frames or audio)")
        total = 0.0
        if n:
            total += float(features.visual.max(axis=1).sum())
        if m:
            total += float(features.audio.max(axis=1).sum())
        return total / (n + m)

    if model.weights is None:
        raise ModelError("learned-stage model has no weights")
    w = model.weights
    x = features.pooled
    if x.shape[0] != w.w1.shape[1]:
        raise ModelError(
            f"feature length {x.shape[0]} does not match model input {w.w1.shape[1]}"
        )
    hidden = np.tanh(w.w1 @ x + w.b1)
    return float(_sigmoid(w.w2 @ hidden + w.b2))


# ---------------------------------------------------------------------------
# Training
# ---------------------------------------------------------------------------


def _binary_labels(reviews: Iterable["ReviewLabel"]) -> list[tuple[str, float]]:
    return [(r.video_id, 0.0 if r.label == NORMAL_LABEL else 1.0) for r in reviews]


def train_matrix(
    reviews: Sequence["ReviewLabel"],
    corpus: Sequence[VideoRecord],
    taxonomy: RiskTaxonomy,
) -> tuple[np.ndarray, np.ndarray]:
    """Stack pooled features and binary labels (normal = 0, any category = 1)."""
    by_id = {v.video_id: v for v in corpus}
    rows = []
    labels = []
    for video_id, label in _binary_labels(reviews):
        video = by_id.get(video_id)
        if video is None:
            raise TrainingError(f"review references unknown video {video_id!r}")
        rows.append(featurize(video, taxonomy).pooled)
        labels.append(label)
    return np.array(rows), np.array(labels)


def _fit(
    x: np.ndarray, y: np.ndarray, config: TrainConfig
) -> tuple[ModelWeights, list[float]]:
    """Full-batch gradient descent on mean logistic loss; seeded init.

    Input weights start from a shared positive prior instead of zero mean:
    pooled features are exchangeable (every per-tag maximum means the same
    thing), and a zero-mean init leaves vocabulary unseen in the reviews with
    arbitrary weights, which wrecks generalization to new deviant tags. The
    prior makes unseen ids behave like seen ones until reviews say otherwise.
    """
    n, d = x.shape
    h = config.hidden_width
    rng = np.random.default_rng(config.seed)
    w1 = rng.normal(1.0, 0.2, size=(h, d)) / math.sqrt(d)
    b1 = np.zeros(h)
    w2 = rng.normal(1.0, 0.2, size=h) / math.sqrt(h)
    b2 = 0.0

    checkpoints: list[float] = []
    for epoch in range(config.epochs):
        z = x @ w1.T + b1  # (n, h)
        hidden = np.tanh(z)
        scores = hidden @ w2 + b2  # (n,)
        loss = float(np.mean(np.logaddexp(0.0, scores) - y * scores))
        if epoch % config.checkpoint_every == 0:
            checkpoints.append(loss)

        d_scores = (_sigmoid(scores) - y) / n  # (n,)
        g_w2 = hidden.T @ d_scores
        g_b2 = float(d_scores.sum())
        d_hidden = np.outer(d_scores, w2) * (1.0 - hidden**2)  # (n, h)
        g_w1 = d_hidden.T @ x
        g_b1 = d_hidden.sum(axis=0)

        lr = config.learning_rate
        w1 -= lr * g_w1
        b1 -= lr * g_b1
        w2 -= lr * g_w2
        b2 -= lr * g_b2

    z = x @ w1.T + b1
    scores = np.tanh(z) @ w2 + b2
    checkpoints.append(float(np.mean(np.logaddexp(0.0, scores) - y * scores)))
    return ModelWeights(w1=w1, b1=b1, w2=w2, b2=b2), checkpoints


def retrain(
    reviews: Sequence["ReviewLabel"],
    corpus: Sequence[VideoRecord],
    taxonomy: RiskTaxonomy,
    config: TrainConfig = TrainConfig(),
    base_version: int = 0,
) -> FilterModel:
    """Train a fresh learned-stage model from scratch on the reviewed labels.

    Needs at least one normal and one deviant review. Training is full batch
    and bit-reproducible for a fixed (reviews, config) pair; the returned
    version is base_version + 1.
    """
    x, y = train_matrix(reviews, corpus, taxonomy)
    if len(y) == 0 or y.min() == y.max():
        raise TrainingError("need both classes (at least one normal and one deviant review)")

    weights, checkpoints = _fit(x, y, config)
    predictions = np.array(
        [predict(FilterModel(0, LEARNED_STAGE, weights), _pair_from_pooled(row)) for row in x]
    )
    accuracy = float(np.mean((predictions > 0.5) == (y > 0.5)))
    meta = {
        "num_reviews": int(len(y)),
        "final_loss": checkpoints[-1],
        "seed": config.seed,
        "epochs": config.epochs,
        "learning_rate": config.learning_rate,
        "hidden_width": config.hidden_width,
        "loss_checkpoints": checkpoints,
        "train_accuracy": accuracy,
    }
    return FilterModel(
        version=base_version + 1,
        stage=LEARNED_STAGE,
        weights=weights,
        training_meta=meta,
    )


def _pair_from_pooled(pooled: np.ndarray) -> FeatureMatrixPair:
    # learned-stage prediction only reads the pooled vector
    return FeatureMatrixPair(
        visual=np.zeros((0, 0)), audio=np.zeros((0, 0)), pooled=pooled
    )


# ---------------------------------------------------------------------------
# Snapshots
# ---------------------------------------------------------------------------


def model_to_obj(model: FilterModel) -> dict:
    weights = None
    if model.weights is not None:
        weights = {
            "w1": model.weights.w1.tolist(),
            "b1": model.weights.b1.tolist(),
            "w2": model.weights.w2.tolist(),
            "b2": model.weights.b2,
        }
    return {
        "version": model.version,
        "stage": model.stage,
        "weights": weights,
        "training_meta": model.training_meta,
    }


def model_from_obj(obj: dict) -> FilterModel:
    try:
        weights = None
        if obj.get("weights") is not None:
            w = obj["weights"]
            weights = ModelWeights(
                w1=np.array(w["w1"], dtype=float),
                b1=np.array(w["b1"], dtype=float),
                w2=np.array(w["w2"], dtype=float),
                b2=float(w["b2"]),
            )
        return FilterModel(
            version=int(obj["version"]),
            stage=str(obj["stage"]),
            weights=weights,
            training_meta=obj.get("training_meta", {}),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed model snapshot ({exc})") from exc


def save_model(model: FilterModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model_to_obj(model)) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> FilterModel:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"model snapshot {path}: invalid JSON ({exc.msg})") from exc
    return model_from_obj(obj)
