"""Audio view pipeline: risk-word histogram, time slots, and storyline layout.

The storyline assigns every risk word active in a time slot to a vertical
track, compressing tracks to 0..k-1 per slot and choosing per-slot orders
that keep lines from crossing or wiggling. The optimizer starts from
first-appearance order, runs barycenter sweeps in both directions, then
hill-climbs adjacent swaps; it never returns something worse than the
starting order and is fully deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Collection, Sequence

from .corpus import AudioAnnotation, RiskTaxonomy, VideoRecord
from .errors import DomainError

DEFAULT_SLOT_SECONDS = 30.0
DEFAULT_WIGGLE_WEIGHT = 0.3


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HistogramEntry:
    word: str
    category: str
    count: int


@dataclass(frozen=True)
class WordHistogram:
    """Risk-word totals, highest count first (ties by word id)."""

    entries: tuple[HistogramEntry, ...]

    def total(self) -> int:
        return sum(e.count for e in self.entries)


@dataclass(frozen=True)
class Slot:
    """One [t0, t1) time window.

    ``active`` holds every word spoken in a clip overlapping the window;
    ``cloud`` holds (word, count) pairs, with each clip's counts attributed to
    the slot its start time falls in so cloud counts add up to the histogram.
    """

    index: int
    t0: float
    t1: float
    active: frozenset[str]
    cloud: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class WordLine:
    """One word's run of consecutive active slots and its track per slot."""

    word: str
    slot_range: tuple[int, int]  # inclusive
    tracks: tuple[int, ...]


@dataclass(frozen=True)
class StorylineLayout:
    slots: tuple[Slot, ...]
    tracks: tuple[dict[str, int], ...]  # per slot: word -> track
    segments: tuple[WordLine, ...]
    crossings: int
    wiggles: int


@dataclass(frozen=True)
class AudiosumConfig:
    slot: float = DEFAULT_SLOT_SECONDS
    wiggle_weight: float = DEFAULT_WIGGLE_WEIGHT


# ---------------------------------------------------------------------------
# Histogram
# ---------------------------------------------------------------------------


def build_histogram(
    audio: Sequence[AudioAnnotation], taxonomy: RiskTaxonomy
) -> WordHistogram:
    """Total occurrence count per risk word across all clips; zero counts drop out."""
    totals: dict[str, int] = {}
    for clip in audio:
        for word, count in clip.word_counts.items():
            if count > 0 and word in taxonomy.words:
                totals[word] = totals.get(word, 0) + count
    entries = tuple(
        HistogramEntry(word=w, category=taxonomy.words[w], count=c)
        for w, c in sorted(totals.items(), key=lambda item: (-item[1], item[0]))
    )
    return WordHistogram(entries=entries)


# ---------------------------------------------------------------------------
# Slots
# ---------------------------------------------------------------------------


def slotize(
    audio: Sequence[AudioAnnotation],
    slot_duration: float,
    duration: float | None = None,
    words: Collection[str] | None = None,
) -> list[Slot]:
    """Tile [0, duration] with half-open windows and mark active words.

    A word is active in a slot when a clip containing it overlaps the slot;
    a clip starting exactly on a boundary belongs to the later slot. With no
    explicit duration the tiling runs to the last clip end. ``words`` limits
    which word ids are considered at all.
    """
    if not slot_duration > 0:
        raise DomainError(f"slot_duration must be positive, got {slot_duration}")
    if duration is None:
        duration = max((clip.end_time for clip in audio), default=0.0)
    if duration <= 0:
        return []

    count = math.ceil(duration / slot_duration)
    slots: list[Slot] = []
    for i in range(count):
        t0 = i * slot_duration
        t1 = min((i + 1) * slot_duration, duration)
        active: set[str] = set()
        cloud: dict[str, int] = {}
        for clip in audio:
            if clip.start_time >= t1 or clip.end_time <= t0:
                continue
            starts_here = t0 <= clip.start_time < t1
            for word, word_count in clip.word_counts.items():
                if word_count <= 0 or (words is not None and word not in words):
                    continue
                active.add(word)
                if starts_here:
                    cloud[word] = cloud.get(word, 0) + word_count
        slots.append(
            Slot(
                index=i,
                t0=t0,
                t1=t1,
                active=frozenset(active),
                cloud=tuple(sorted(cloud.items(), key=lambda item: (-item[1], item[0]))),
            )
        )
    return slots


# ---------------------------------------------------------------------------
# Storyline optimization
# ---------------------------------------------------------------------------


def first_appearance_orders(slots: Sequence[Slot]) -> list[list[str]]:
    """Initial per-slot word orders: by first activation, ties by word id."""
    first_seen: dict[str, int] = {}
    for slot in slots:
        for word in sorted(slot.active):
            first_seen.setdefault(word, slot.index)
    return [
        sorted(slot.active, key=lambda w: (first_seen[w], w)) for slot in slots
    ]


def count_crossings_wiggles(orders: Sequence[Sequence[str]]) -> tuple[int, int]:
    """Crossings: co-active pairs whose order swaps between consecutive slots.
    Wiggles: track changes of a word between consecutive co-active slots."""
    crossings = 0
    wiggles = 0
    for s in range(len(orders) - 1):
        here = {w: i for i, w in enumerate(orders[s])}
        there = {w: i for i, w in enumerate(orders[s + 1])}
        common = [w for w in orders[s] if w in there]
        for a in range(len(common)):
            for b in range(a + 1, len(common)):
                w1, w2 = common[a], common[b]
                if (here[w1] - here[w2]) * (there[w1] - there[w2]) < 0:
                    crossings += 1
        wiggles += sum(1 for w in common if here[w] != there[w])
    return crossings, wiggles


def storyline_objective(
    orders: Sequence[Sequence[str]], wiggle_weight: float = DEFAULT_WIGGLE_WEIGHT
) -> float:
    crossings, wiggles = count_crossings_wiggles(orders)
    return crossings + wiggle_weight * wiggles


def _barycenter_sweep(orders: list[list[str]], backwards: bool) -> list[list[str]]:
    orders = [list(o) for o in orders]
    rng = range(len(orders) - 2, -1, -1) if backwards else range(1, len(orders))
    for s in rng:
        anchor = orders[s + 1] if backwards else orders[s - 1]
        pos = {w: i for i, w in enumerate(anchor)}
        current = {w: i for i, w in enumerate(orders[s])}
        # stable sort: words absent from the anchor keep their relative order
        orders[s].sort(key=lambda w: (pos.get(w, math.inf), current[w]))
    return orders


def _hill_climb(
    orders: list[list[str]], wiggle_weight: float
) -> tuple[list[list[str]], float]:
    best = storyline_objective(orders, wiggle_weight)
    improved = True
    while improved:
        improved = False
        for s in range(len(orders)):
            row = orders[s]
            for i in range(len(row) - 1):
                row[i], row[i + 1] = row[i + 1], row[i]
                candidate = storyline_objective(orders, wiggle_weight)
                if candidate < best:
                    best = candidate
                    improved = True
                else:
                    row[i], row[i + 1] = row[i + 1], row[i]
    return orders, best


def optimize_orders(
    slots: Sequence[Slot], wiggle_weight: float = DEFAULT_WIGGLE_WEIGHT
) -> list[list[str]]:
    """Per-slot word orders minimizing crossings + weight * wiggles (heuristic)."""
    best = first_appearance_orders(slots)
    best_obj = storyline_objective(best, wiggle_weight)

    current = best
    for _ in range(10):
        current = _barycenter_sweep(current, backwards=False)
        current = _barycenter_sweep(current, backwards=True)
        obj = storyline_objective(current, wiggle_weight)
        if obj < best_obj:
            best = [list(o) for o in current]
            best_obj = obj
        else:
            break

    best, _ = _hill_climb([list(o) for o in best], wiggle_weight)
    return best


def layout_storyline(
    slots: Sequence[Slot], wiggle_weight: float = DEFAULT_WIGGLE_WEIGHT
) -> StorylineLayout:
    """Track assignment per slot plus final crossing/wiggle counts.

    Tracks are the order positions, so each slot's occupied tracks are exactly
    0..k-1. Counting only spans consecutive co-active slots; a word that
    disappears and later returns starts a new line segment.
    """
    orders = optimize_orders(slots, wiggle_weight)
    tracks = tuple({w: i for i, w in enumerate(order)} for order in orders)
    crossings, wiggles = count_crossings_wiggles(orders)

    segments: list[WordLine] = []
    words = sorted({w for slot in slots for w in slot.active})
    for word in words:
        run_start: int | None = None
        run_tracks: list[int] = []
        for s in range(len(slots) + 1):
            active = s < len(slots) and word in slots[s].active
            if active:
                if run_start is None:
                    run_start = s
                run_tracks.append(tracks[s][word])
            elif run_start is not None:
                segments.append(
                    WordLine(word=word, slot_range=(run_start, s - 1), tracks=tuple(run_tracks))
                )
                run_start = None
                run_tracks = []

    return StorylineLayout(
        slots=tuple(slots),
        tracks=tracks,
        segments=tuple(segments),
        crossings=crossings,
        wiggles=wiggles,
    )


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------


def build_audio_layout(
    video: VideoRecord,
    taxonomy: RiskTaxonomy,
    config: AudiosumConfig = AudiosumConfig(),
) -> dict:
    """Full audio-view computation for one video, in JSON-ready form."""
    histogram = build_histogram(video.audio, taxonomy)
    slots = slotize(
        video.audio, config.slot, duration=video.duration, words=taxonomy.words.keys()
    )
    layout = layout_storyline(slots, config.wiggle_weight)

    lines: dict[str, list[list[int]]] = {}
    for segment in layout.segments:
        points = lines.setdefault(segment.word, [])
        for offset, track in enumerate(segment.tracks):
            points.append([segment.slot_range[0] + offset, track])

    return {
        "histogram": [
            {"word": e.word, "category": e.category, "count": e.count}
            for e in histogram.entries
        ],
        "slots": [
            {"t0": s.t0, "t1": s.t1, "cloud": [[w, c] for w, c in s.cloud]}
            for s in layout.slots
        ],
        "lines": [{"word": w, "points": pts} for w, pts in sorted(lines.items())],
        "crossings": layout.crossings,
        "wiggles": layout.wiggles,
    }
