"""Risk-aware video moderation engine.

Aggregates multimodal detector annotations into per-video risk values,
filters the review queue with a classifier that learns from moderator
reviews, and computes the three summarization layouts (risk timeline,
frame scene map, audio storyline) served to a review console.
"""

from .corpus import (
    CATEGORIES,
    NORMAL_LABEL,
    AudioAnnotation,
    FrameAnnotation,
    RiskTaxonomy,
    VideoRecord,
    default_taxonomy,
    load_corpus,
    load_taxonomy,
    sampling_interval,
    synthesize_corpus,
    write_corpus,
)
from .risk import (
    ModerationMetrics,
    RiskVector,
    VideoRisk,
    aggregate_tag_scores,
    audio_rates,
    filter_high_risk,
    moderation_metrics,
    video_risk,
)
from .classifier import FeatureMatrixPair, FilterModel, TrainConfig, featurize, predict, retrain
from .framesum import (
    FramesumConfig,
    SceneLayout,
    align_scenes,
    build_scene_layout,
    cluster_shots,
    order_scenes,
    project_frames,
    scene_glyph,
)
from .audiosum import (
    AudiosumConfig,
    StorylineLayout,
    WordHistogram,
    build_audio_layout,
    build_histogram,
    layout_storyline,
    slotize,
)
from .timeline import TimelineConfig, TimelineSegment, build_timeline
from .store import Evidence, ReviewLabel, ReviewStore

__version__ = "0.1.0"

__all__ = [
    "AudioAnnotation",
    "AudiosumConfig",
    "CATEGORIES",
    "Evidence",
    "FeatureMatrixPair",
    "FilterModel",
    "FrameAnnotation",
    "FramesumConfig",
    "ModerationMetrics",
    "NORMAL_LABEL",
    "ReviewLabel",
    "ReviewStore",
    "RiskTaxonomy",
    "RiskVector",
    "SceneLayout",
    "StorylineLayout",
    "TimelineConfig",
    "TimelineSegment",
    "TrainConfig",
    "VideoRecord",
    "VideoRisk",
    "WordHistogram",
    "aggregate_tag_scores",
    "align_scenes",
    "audio_rates",
    "build_audio_layout",
    "build_histogram",
    "build_scene_layout",
    "build_timeline",
    "cluster_shots",
    "default_taxonomy",
    "featurize",
    "filter_high_risk",
    "layout_storyline",
    "load_corpus",
    "load_taxonomy",
    "moderation_metrics",
    "order_scenes",
    "predict",
    "project_frames",
    "retrain",
    "sampling_interval",
    "scene_glyph",
    "slotize",
    "synthesize_corpus",
    "video_risk",
    "write_corpus",
]
