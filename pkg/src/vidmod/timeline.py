"""Segmented risk timeline: the dominant risk category per fixed window.

Each window takes the maximum score per category over the frames and audio
clips it touches; the window shows the winning category when that score
clears a floor, otherwise it stays neutral. Adjacent windows with the same
category merge into one block, so the result tiles the duration exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .corpus import RiskTaxonomy, VideoRecord
from .errors import DomainError
from .risk import aggregate_tag_scores, audio_rates

NEUTRAL = "neutral"


@dataclass(frozen=True)
class TimelineSegment:
    t0: float
    t1: float
    category: str  # a category id or "neutral"
    intensity: float  # highest category score seen in the segment


@dataclass(frozen=True)
class TimelineConfig:
    window: float = 10.0
    floor: float = 0.3


def merge_adjacent(segments: Sequence[TimelineSegment]) -> list[TimelineSegment]:
    """Fuse neighbouring segments with the same category, keeping the max intensity."""
    merged: list[TimelineSegment] = []
    for seg in segments:
        if merged and merged[-1].category == seg.category:
            prev = merged[-1]
            merged[-1] = TimelineSegment(
                t0=prev.t0,
                t1=seg.t1,
                category=prev.category,
                intensity=max(prev.intensity, seg.intensity),
            )
        else:
            merged.append(seg)
    return merged


def build_timeline(
    video: VideoRecord,
    taxonomy: RiskTaxonomy,
    config: TimelineConfig = TimelineConfig(),
) -> list[TimelineSegment]:
    """Tile [0, duration] with merged dominant-category blocks.

    Ties between categories resolve to the earlier one in taxonomy order. The
    final window is closed on the right so a frame exactly at the duration
    still lands somewhere.
    """
    if not config.window > 0:
        raise DomainError(f"window must be positive, got {config.window}")
    if not 0.0 <= config.floor <= 1.0:
        raise DomainError(f"floor must lie in [0, 1], got {config.floor}")
    if video.duration <= 0:
        return []

    count = math.ceil(video.duration / config.window)
    cat_index = {cat: i for i, cat in enumerate(taxonomy.categories)}

    frame_scores = [aggregate_tag_scores(f, taxonomy).scores for f in video.frames]
    clip_rates = [audio_rates(a, taxonomy).scores for a in video.audio]

    segments: list[TimelineSegment] = []
    for k in range(count):
        t0 = k * config.window
        t1 = min((k + 1) * config.window, video.duration)
        last = k == count - 1
        best = [0.0, 0.0, 0.0, 0.0]

        for frame, scores in zip(video.frames, frame_scores):
            inside = t0 <= frame.time < t1 or (last and frame.time == t1)
            if not inside:
                continue
            for tag, value in zip(taxonomy.tag_ids, scores):
                if value > 0:
                    ci = cat_index[taxonomy.tags[tag]]
                    best[ci] = max(best[ci], float(value))

        for clip, rates in zip(video.audio, clip_rates):
            if clip.start_time >= t1 or clip.end_time <= t0:
                continue
            for word, value in zip(taxonomy.word_ids, rates):
                if value > 0:
                    ci = cat_index[taxonomy.words[word]]
                    best[ci] = max(best[ci], float(value))

        top = max(range(4), key=lambda i: (best[i], -i))
        intensity = best[top]
        category = taxonomy.categories[top] if intensity > config.floor else NEUTRAL
        segments.append(TimelineSegment(t0=t0, t1=t1, category=category, intensity=intensity))

    return merge_adjacent(segments)


def timeline_to_obj(segments: Sequence[TimelineSegment]) -> list[dict]:
    return [
        {"t0": s.t0, "t1": s.t1, "category": s.category, "intensity": s.intensity}
        for s in segments
    ]
