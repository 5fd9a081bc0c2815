"""Risk-vector aggregation, per-video risk values, filtering, and review metrics.

The per-video risk value averages per-frame and per-clip maxima: each frame is
represented by its highest aggregated tag score, each audio clip by its highest
word rate, and the video's risk is the mean of those maxima over all frames and
clips together. Max aggregation keeps sparse risk evidence from being diluted
by the many all-zero entries a frame vector usually has.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Mapping

import numpy as np

from .corpus import (
    NORMAL_LABEL,
    AudioAnnotation,
    FrameAnnotation,
    RiskTaxonomy,
    VideoRecord,
)
from .errors import DomainError, EvaluationError, TaxonomyError

if TYPE_CHECKING:
    from .store import ReviewLabel


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RiskVector:
    """Dense per-tag (frame) or per-word (audio) scores in taxonomy order."""

    kind: str  # "frame" | "audio"
    scores: np.ndarray


@dataclass(frozen=True)
class VideoRisk:
    """A video's risk value plus the per-frame / per-clip maxima behind it.

    Each per_frame entry is (time, max tag score, argmax tag id); each
    per_audio entry is (start_time, max word rate, argmax word id).
    """

    video_id: str
    risk_value: float
    per_frame: tuple[tuple[float, float, str], ...]
    per_audio: tuple[tuple[float, float, str], ...]


@dataclass(frozen=True)
class ModerationMetrics:
    time_efficiency: float  # reviews per hour
    missing_rate: float  # fraction of reviewed deviant videos labelled normal


# ---------------------------------------------------------------------------
# Score aggregation
# ---------------------------------------------------------------------------


def aggregate_tag_scores(frame: FrameAnnotation, taxonomy: RiskTaxonomy) -> RiskVector:
    """Combine per-model tag scores into one dense vector.

    Scores from different models add up and are clamped to 1; a tag no model
    detected stays 0.
    """
    scores = np.zeros(len(taxonomy.tags))
    for tag, per_model in frame.tag_scores.items():
        idx = taxonomy.tag_index(tag)
        if idx is None:
            raise TaxonomyError(f"unknown risk tag {tag!r}")
        scores[idx] = min(1.0, sum(per_model.values()))
    return RiskVector(kind="frame", scores=scores)


def audio_rates(clip: AudioAnnotation, taxonomy: RiskTaxonomy) -> RiskVector:
    """Word occurrence rates (count / token_count), clamped to 1.

    Word ids outside the taxonomy are ignored; transcripts routinely contain
    vocabulary the word list does not track.
    """
    scores = np.zeros(len(taxonomy.words))
    for word, count in clip.word_counts.items():
        idx = taxonomy.word_index(word)
        if idx is not None:
            scores[idx] = min(1.0, count / clip.token_count)
    return RiskVector(kind="audio", scores=scores)


def _sparse_frame_max(frame: FrameAnnotation, taxonomy: RiskTaxonomy) -> tuple[float, str]:
    """(max aggregated score, argmax tag) without building the dense vector.

    Ties resolve to the earliest tag in taxonomy order, matching np.argmax on
    the dense vector; an empty frame reports the first tag at score 0.
    """
    best_score = 0.0
    best_idx = 0
    for tag, per_model in frame.tag_scores.items():
        idx = taxonomy.tag_index(tag)
        if idx is None:
            raise TaxonomyError(f"unknown risk tag {tag!r}")
        score = min(1.0, sum(per_model.values()))
        if score > best_score or (score == best_score and score > 0.0 and idx < best_idx):
            best_score = score
            best_idx = idx
    return best_score, taxonomy.tag_ids[best_idx]


def _sparse_clip_max(clip: AudioAnnotation, taxonomy: RiskTaxonomy) -> tuple[float, str]:
    best_rate = 0.0
    best_idx = 0
    for word, count in clip.word_counts.items():
        idx = taxonomy.word_index(word)
        if idx is None:
            continue
        rate = min(1.0, count / clip.token_count)
        if rate > best_rate or (rate == best_rate and rate > 0.0 and idx < best_idx):
            best_rate = rate
            best_idx = idx
    return best_rate, taxonomy.word_ids[best_idx]


# ---------------------------------------------------------------------------
# Per-video risk value
# ---------------------------------------------------------------------------


def video_risk(video: VideoRecord, taxonomy: RiskTaxonomy) -> VideoRisk:
    """Mean of per-frame and per-clip maxima over all n + m annotations."""
    n = len(video.frames)
    m = len(video.audio)
    if n + m == 0:
        raise DomainError(f"video {video.video_id}: undefined risk (no frames or audio)")

    per_frame = tuple(
        (frame.time, *_sparse_frame_max(frame, taxonomy)) for frame in video.frames
    )
    per_audio = tuple(
        (clip.start_time, *_sparse_clip_max(clip, taxonomy)) for clip in video.audio
    )
    total = sum(score for _, score, _ in per_frame) + sum(rate for _, rate, _ in per_audio)
    return VideoRisk(
        video_id=video.video_id,
        risk_value=total / (n + m),
        per_frame=per_frame,
        per_audio=per_audio,
    )


def filter_high_risk(
    risks: Iterable[VideoRisk], threshold: float
) -> tuple[list[VideoRisk], list[VideoRisk]]:
    """Partition into (high, low) preserving order; high means risk strictly
    above the threshold, so boundary videos stay low."""
    if not 0.0 <= threshold <= 1.0:
        raise DomainError(f"threshold must lie in [0, 1], got {threshold}")
    high: list[VideoRisk] = []
    low: list[VideoRisk] = []
    for risk in risks:
        (high if risk.risk_value > threshold else low).append(risk)
    return high, low


# ---------------------------------------------------------------------------
# Review metrics
# ---------------------------------------------------------------------------


def moderation_metrics(
    reviews: Iterable["ReviewLabel"],
    truth: Mapping[str, str],
    window_hours: float,
) -> ModerationMetrics:
    """Time efficiency (reviews per hour) and missing rate over a review window.

    The missing rate is the fraction of reviewed truly-deviant videos that the
    moderator labelled normal; with no deviant videos reviewed it is 0 (nothing
    there to miss).
    """
    if not window_hours > 0:
        raise DomainError(f"window_hours must be positive, got {window_hours}")
    reviews = list(reviews)
    for review in reviews:
        if review.video_id not in truth:
            raise EvaluationError(f"no ground truth for reviewed video {review.video_id}")

    deviant = [r for r in reviews if truth[r.video_id] != NORMAL_LABEL]
    missed = sum(1 for r in deviant if r.label == NORMAL_LABEL)
    return ModerationMetrics(
        time_efficiency=len(reviews) / window_hours,
        missing_rate=missed / len(deviant) if deviant else 0.0,
    )
