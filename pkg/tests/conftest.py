import pytest

from vidmod.corpus import (
    CATEGORIES,
    AudioAnnotation,
    FrameAnnotation,
    RiskTaxonomy,
    VideoRecord,
    default_taxonomy,
)


@pytest.fixture(scope="session")
def taxonomy():
    return default_taxonomy()


@pytest.fixture(scope="session")
def mini_taxonomy():
    """Four tags and four words, one per category; easy to hand-compute."""
    return RiskTaxonomy(
        categories=CATEGORIES,
        tags={"a1": CATEGORIES[0], "a2": CATEGORIES[1], "a3": CATEGORIES[2], "a4": CATEGORIES[3]},
        words={"w1": CATEGORIES[0], "w2": CATEGORIES[1], "w3": CATEGORIES[2], "w4": CATEGORIES[3]},
    )


def make_video(video_id="v", duration=10.0, frames=(), audio=(), ground_truth=None):
    return VideoRecord(
        video_id=video_id,
        duration=duration,
        frames=tuple(frames),
        audio=tuple(audio),
        ground_truth=ground_truth,
    )


def frame(t, scores, feature=None):
    """scores: {tag: score} (single model) or {tag: {model: score}}."""
    tag_scores = {
        tag: (value if isinstance(value, dict) else {"det": value})
        for tag, value in scores.items()
    }
    return FrameAnnotation(time=t, tag_scores=tag_scores, feature=feature)


def clip(t0, t1, counts, tokens=10, text="clip"):
    return AudioAnnotation(
        start_time=t0, end_time=t1, text=text, word_counts=dict(counts), token_count=tokens
    )


@pytest.fixture
def worked_risk_video(mini_taxonomy):
    """Frame maxima 0.9 and 0.3 plus one clip at rate 0.5: risk is 1.7 / 3."""
    return make_video(
        video_id="worked",
        duration=10.0,
        frames=[frame(0.0, {"a1": 0.9}), frame(1.0, {"a2": 0.3})],
        audio=[clip(0.0, 5.0, {"w1": 5}, tokens=10)],
    )
