import numpy as np
import pytest

from vidmod import corpus, timeline
from vidmod.timeline import NEUTRAL, TimelineConfig, TimelineSegment

from conftest import clip, frame, make_video

FA, PP = corpus.CATEGORIES[0], corpus.CATEGORIES[1]


class TestBuildTimeline:
    def test_argmax_category_wins(self, mini_taxonomy):
        video = make_video(
            duration=10.0,
            frames=[frame(1.0, {"a1": 0.2, "a2": 0.7})],
        )
        segments = timeline.build_timeline(video, mini_taxonomy, TimelineConfig(window=10.0, floor=0.3))
        assert segments == [TimelineSegment(0.0, 10.0, PP, 0.7)]

    def test_scores_at_floor_stay_neutral(self, mini_taxonomy):
        video = make_video(duration=10.0, frames=[frame(1.0, {"a1": 0.3})])
        segments = timeline.build_timeline(video, mini_taxonomy, TimelineConfig(window=10.0, floor=0.3))
        assert segments[0].category == NEUTRAL

    def test_adjacent_same_category_windows_merge(self, mini_taxonomy):
        frames = [frame(float(t), {"a2": 0.8}) for t in (1, 11, 21)]
        video = make_video(duration=30.0, frames=frames)
        segments = timeline.build_timeline(video, mini_taxonomy, TimelineConfig(window=10.0))
        assert len(segments) == 1
        assert segments[0] == TimelineSegment(0.0, 30.0, PP, 0.8)

    def test_audio_contributes(self, mini_taxonomy):
        video = make_video(duration=10.0, audio=[clip(0.0, 4.0, {"w1": 8}, tokens=10)])
        segments = timeline.build_timeline(video, mini_taxonomy, TimelineConfig(window=10.0))
        assert segments[0].category == FA
        assert segments[0].intensity == pytest.approx(0.8)

    def test_category_tie_breaks_by_taxonomy_order(self, mini_taxonomy):
        video = make_video(duration=5.0, frames=[frame(0.0, {"a2": 0.6, "a1": 0.6})])
        segments = timeline.build_timeline(video, mini_taxonomy, TimelineConfig(window=5.0))
        assert segments[0].category == FA

    def test_frame_at_duration_lands_in_last_window(self, mini_taxonomy):
        video = make_video(duration=20.0, frames=[frame(20.0, {"a1": 0.9})])
        segments = timeline.build_timeline(video, mini_taxonomy, TimelineConfig(window=10.0))
        assert segments[-1].category == FA

    def test_zero_duration(self, mini_taxonomy):
        assert timeline.build_timeline(make_video(duration=0.0), mini_taxonomy) == []


class TestInvariants:
    def fuzz_videos(self, taxonomy, count, seed):
        return corpus.synthesize_corpus(count, 0.5, taxonomy, seed=seed)

    def test_tiling_exact(self, taxonomy):
        for video in self.fuzz_videos(taxonomy, 30, seed=41):
            segments = timeline.build_timeline(video, taxonomy)
            assert segments[0].t0 == 0.0
            assert segments[-1].t1 == video.duration
            for a, b in zip(segments, segments[1:]):
                assert a.t1 == b.t0
                assert a.category != b.category

    def test_merge_idempotent(self, taxonomy):
        for video in self.fuzz_videos(taxonomy, 20, seed=43):
            segments = timeline.build_timeline(video, taxonomy)
            assert timeline.merge_adjacent(segments) == segments

    def test_non_neutral_intensity_above_floor(self, taxonomy):
        config = TimelineConfig(window=7.0, floor=0.25)
        for video in self.fuzz_videos(taxonomy, 20, seed=47):
            for segment in timeline.build_timeline(video, taxonomy, config):
                if segment.category != NEUTRAL:
                    assert segment.intensity > config.floor

    def test_serialization_shape(self, taxonomy):
        video = self.fuzz_videos(taxonomy, 1, seed=53)[0]
        obj = timeline.timeline_to_obj(timeline.build_timeline(video, taxonomy))
        assert all(set(seg) == {"t0", "t1", "category", "intensity"} for seg in obj)
