"""Annotation data model, corpus wire format, and the seeded synthetic generator.

A corpus is a UTF-8 line-delimited JSON file, one video per line. Each line
carries the detector-produced annotations this engine consumes: per-frame tag
scores (one score per contributing model) and per-clip risk-word counts. The
upstream detectors themselves are out of scope; the synthetic generator below
produces corpora with a known normal/deviant separation so that filtering and
review behaviour can be checked end to end without them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, DomainError, ParseError, ValidationError

CATEGORIES = (
    "false_advertising",
    "protected_products",
    "inappropriate_business",
    "sensitive_content",
)

NORMAL_LABEL = "normal"

# duration (seconds) at or above which the frame sampling interval doubles
LONG_VIDEO_SECONDS = 1800.0


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RiskTaxonomy:
    """The four moderation categories plus their tag and word vocabularies.

    ``tags`` maps a visual tag id to its category, ``words`` maps a lexical
    word id to its category. Tag and word order is significant: dense risk
    vectors are indexed by it.
    """

    categories: tuple[str, ...]
    tags: dict[str, str]
    words: dict[str, str]

    def __post_init__(self):
        if len(self.categories) != 4 or len(set(self.categories)) != 4:
            raise ValidationError("taxonomy needs exactly 4 distinct categories")
        if set(self.categories) != set(CATEGORIES):
            raise ValidationError(f"taxonomy categories must be {sorted(CATEGORIES)}")
        for name, mapping in (("tag", self.tags), ("word", self.words)):
            for item, cat in mapping.items():
                if cat not in self.categories:
                    raise ValidationError(f"{name} {item!r} maps to unknown category {cat!r}")
        overlap = set(self.tags) & set(self.words)
        if overlap:
            raise ValidationError(f"ids used as both tag and word: {sorted(overlap)}")

    @property
    def tag_ids(self) -> tuple[str, ...]:
        return tuple(self.tags)

    @property
    def word_ids(self) -> tuple[str, ...]:
        return tuple(self.words)

    def tag_index(self, tag: str) -> int | None:
        idx = self._tag_lookup.get(tag)
        return idx

    def word_index(self, word: str) -> int | None:
        return self._word_lookup.get(word)

    @property
    def _tag_lookup(self) -> dict[str, int]:
        cached = self.__dict__.get("_tag_lookup_cache")
        if cached is None:
            cached = {t: i for i, t in enumerate(self.tags)}
            self.__dict__["_tag_lookup_cache"] = cached
        return cached

    @property
    def _word_lookup(self) -> dict[str, int]:
        cached = self.__dict__.get("_word_lookup_cache")
        if cached is None:
            cached = {w: i for i, w in enumerate(self.words)}
            self.__dict__["_word_lookup_cache"] = cached
        return cached


@dataclass(frozen=True)
class FrameAnnotation:
    """One sampled frame: per-model tag scores plus optional extras.

    ``tag_scores`` is sparse; a tag that no model detected is simply absent
    and counts as score 0.
    """

    time: float
    tag_scores: dict[str, dict[str, float]]
    feature: tuple[float, ...] | None = None
    thumbnail: str | None = None


@dataclass(frozen=True)
class AudioAnnotation:
    """One transcribed clip: its sentence plus risk-word occurrence counts."""

    start_time: float
    end_time: float
    text: str
    word_counts: dict[str, int]
    token_count: int


@dataclass(frozen=True)
class VideoRecord:
    """A video's annotations. ``ground_truth`` is set on synthetic corpora only."""

    video_id: str
    duration: float
    frames: tuple[FrameAnnotation, ...]
    audio: tuple[AudioAnnotation, ...]
    ground_truth: str | None = None


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_record(record: VideoRecord) -> None:
    """Check every type invariant; raise ValidationError naming video and field."""
    vid = record.video_id
    if not vid:
        raise ValidationError("record with empty video_id")
    if not (record.duration >= 0 and math.isfinite(record.duration)):
        raise ValidationError(f"video {vid}: duration must be finite and >= 0")

    prev_t = -math.inf
    for i, frame in enumerate(record.frames):
        where = f"video {vid} frame[{i}]"
        if not (0 <= frame.time <= record.duration):
            raise ValidationError(f"{where}: time {frame.time} outside [0, duration]")
        if frame.time < prev_t:
            raise ValidationError(f"{where}: frames not sorted by time")
        prev_t = frame.time
        for tag, per_model in frame.tag_scores.items():
            for model, score in per_model.items():
                if not (0.0 <= score <= 1.0):
                    raise ValidationError(
                        f"{where} tag {tag!r} model {model!r}: score out of [0,1]"
                    )

    prev_start = -math.inf
    for j, clip in enumerate(record.audio):
        where = f"video {vid} audio[{j}]"
        if not clip.start_time < clip.end_time:
            raise ValidationError(f"{where}: start_time must be < end_time")
        if clip.start_time < 0 or clip.end_time > record.duration:
            raise ValidationError(f"{where}: clip outside [0, duration]")
        if clip.start_time < prev_start:
            raise ValidationError(f"{where}: audio not sorted by start_time")
        prev_start = clip.start_time
        if clip.token_count < 1:
            raise ValidationError(f"{where}: token_count must be >= 1")
        for word, count in clip.word_counts.items():
            if count < 0 or count > clip.token_count:
                raise ValidationError(
                    f"{where} word {word!r}: count outside [0, token_count]"
                )

    if record.ground_truth is not None:
        allowed = set(CATEGORIES) | {NORMAL_LABEL}
        if record.ground_truth not in allowed:
            raise ValidationError(f"video {vid}: unknown ground_truth {record.ground_truth!r}")


# ---------------------------------------------------------------------------
# Wire format
# ---------------------------------------------------------------------------


def _record_from_obj(obj: dict, lineno: int) -> VideoRecord:
    try:
        frames = tuple(
            FrameAnnotation(
                time=float(f["t"]),
                tag_scores={
                    tag: {m: float(s) for m, s in per_model.items()}
                    for tag, per_model in (f.get("tags") or {}).items()
                },
                feature=tuple(float(x) for x in f["feature"]) if f.get("feature") else None,
                thumbnail=f.get("thumb"),
            )
            for f in obj.get("frames", [])
        )
        audio = tuple(
            AudioAnnotation(
                start_time=float(a["t0"]),
                end_time=float(a["t1"]),
                text=str(a.get("text", "")),
                word_counts={w: int(c) for w, c in (a.get("words") or {}).items()},
                token_count=int(a["tokens"]),
            )
            for a in obj.get("audio", [])
        )
        return VideoRecord(
            video_id=str(obj["video_id"]),
            duration=float(obj["duration"]),
            frames=frames,
            audio=audio,
            ground_truth=obj.get("ground_truth"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"line {lineno}: malformed record ({exc})") from exc


def record_to_obj(record: VideoRecord) -> dict:
    """Canonical wire object for a record: fixed field order, sorted score keys."""
    return {
        "video_id": record.video_id,
        "duration": float(record.duration),
        "frames": [
            {
                "t": float(f.time),
                "tags": {
                    tag: {m: float(s) for m, s in sorted(f.tag_scores[tag].items())}
                    for tag in sorted(f.tag_scores)
                },
                "feature": list(f.feature) if f.feature is not None else None,
                "thumb": f.thumbnail,
            }
            for f in record.frames
        ],
        "audio": [
            {
                "t0": float(a.start_time),
                "t1": float(a.end_time),
                "text": a.text,
                "words": {w: int(a.word_counts[w]) for w in sorted(a.word_counts)},
                "tokens": int(a.token_count),
            }
            for a in record.audio
        ],
        "ground_truth": record.ground_truth,
    }


def load_corpus(path: str | Path) -> list[VideoRecord]:
    """Read a line-delimited corpus file; returns records sorted by video_id.

    Raises ParseError for a malformed line (naming the line number) and
    ValidationError when a record breaks a type invariant.
    """
    records: list[VideoRecord] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise ParseError(f"line {lineno}: expected a JSON object")
            records.append(_record_from_obj(obj, lineno))

    records.sort(key=lambda r: r.video_id)
    seen: set[str] = set()
    for record in records:
        if record.video_id in seen:
            raise ValidationError(f"video {record.video_id}: duplicate video_id")
        seen.add(record.video_id)
        validate_record(record)
    return records


def dumps_corpus(records: list[VideoRecord]) -> str:
    """Canonical serialization: one line per record, sorted by video_id."""
    ordered = sorted(records, key=lambda r: r.video_id)
    lines = [
        json.dumps(record_to_obj(r), separators=(",", ":"), ensure_ascii=False)
        for r in ordered
    ]
    return "".join(line + "\n" for line in lines)


def write_corpus(records: list[VideoRecord], path: str | Path) -> None:
    Path(path).write_text(dumps_corpus(records), encoding="utf-8")


# ---------------------------------------------------------------------------
# Taxonomy I/O
# ---------------------------------------------------------------------------


def load_taxonomy(path: str | Path) -> RiskTaxonomy:
    """Read a taxonomy file: JSON {category: {"tags": [...], "words": [...]}}."""
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"taxonomy {path}: invalid JSON ({exc.msg})") from exc
    if not isinstance(obj, dict):
        raise ParseError(f"taxonomy {path}: expected a JSON object")
    categories = tuple(obj)
    tags: dict[str, str] = {}
    words: dict[str, str] = {}
    for cat, entry in obj.items():
        for tag in entry.get("tags", []):
            if tag in tags:
                raise ValidationError(f"tag {tag!r} listed under two categories")
            tags[tag] = cat
        for word in entry.get("words", []):
            if word in words:
                raise ValidationError(f"word {word!r} listed under two categories")
            words[word] = cat
    return RiskTaxonomy(categories=categories, tags=tags, words=words)


def write_taxonomy(taxonomy: RiskTaxonomy, path: str | Path) -> None:
    obj = {
        cat: {
            "tags": [t for t, c in taxonomy.tags.items() if c == cat],
            "words": [w for w, c in taxonomy.words.items() if c == cat],
        }
        for cat in taxonomy.categories
    }
    Path(path).write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")


_CATEGORY_PREFIX = {
    "false_advertising": "fa",
    "protected_products": "pp",
    "inappropriate_business": "ib",
    "sensitive_content": "sc",
}


def default_taxonomy(tags_per_category: int = 14, words_per_category: int = 12) -> RiskTaxonomy:
    """Built-in vocabulary: 4 categories x (14 tags + 12 words) = 104 ids."""
    tags: dict[str, str] = {}
    words: dict[str, str] = {}
    for cat in CATEGORIES:
        prefix = _CATEGORY_PREFIX[cat]
        for i in range(tags_per_category):
            tags[f"{prefix}_tag_{i:02d}"] = cat
        for i in range(words_per_category):
            words[f"{prefix}_word_{i:02d}"] = cat
    return RiskTaxonomy(categories=CATEGORIES, tags=tags, words=words)


# ---------------------------------------------------------------------------
# Frame sampling
# ---------------------------------------------------------------------------


def sampling_interval(duration: float) -> float:
    """Frame sampling period: 1 s for videos under 30 min, 2 s otherwise."""
    if not duration > 0:
        raise DomainError(f"duration must be positive, got {duration}")
    return 1.0 if duration < LONG_VIDEO_SECONDS else 2.0


# ---------------------------------------------------------------------------
# Synthetic generator
# ---------------------------------------------------------------------------

# Score bands chosen so the separation survives float noise: normal videos
# stay strictly under 0.3 everywhere, deviant videos keep every frame/clip
# maximum strictly above 0.5, so mean-based risk splits the classes at 0.5.
_NORMAL_HI = 0.295
_DEVIANT_LO = 0.56
_HOT_LO = 0.901


def _split_score(rng: np.random.Generator, value: float) -> dict[str, float]:
    """Distribute one aggregated score over one or two detector models."""
    total = round(value, 4)
    if rng.random() < 0.5:
        return {"det": total}
    part = round(total * rng.uniform(0.3, 0.7), 4)
    return {"det": part, "cls": total - part}


def _segment_starts(rng: np.random.Generator, n_frames: int) -> list[int]:
    """Cut the frame range into 2-4 contiguous segments (shot structure)."""
    if n_frames <= 1:
        return [0]
    n_cuts = int(rng.integers(1, min(3, n_frames - 1) + 1))
    cuts = rng.choice(np.arange(1, n_frames), size=n_cuts, replace=False)
    return [0] + sorted(int(c) for c in cuts)


def _jitter(rng, base: float, lo: float, hi: float) -> float:
    return float(min(hi, max(lo, base + rng.uniform(-0.03, 0.03))))


def _deviant_frames(rng, times, taxonomy, category):
    """Segments share a tag and a base score, so frames group into tight shots;
    one frame is forced above 0.9 and every frame stays above the deviant band."""
    cat_tags = [t for t, c in taxonomy.tags.items() if c == category]
    all_tags = list(taxonomy.tags)
    hot = int(rng.integers(0, len(times)))
    profile: dict[int, tuple[str, float, str | None, float]] = {}
    for s in _segment_starts(rng, len(times)):
        tag = cat_tags[int(rng.integers(0, len(cat_tags)))]
        base = float(rng.uniform(0.60, 0.85))
        noise_tag = None
        noise_base = 0.0
        if rng.random() < 0.5:
            candidate = all_tags[int(rng.integers(0, len(all_tags)))]
            if candidate != tag:
                noise_tag = candidate
                noise_base = float(rng.uniform(0.05, 0.25))
        profile[s] = (tag, base, noise_tag, noise_base)

    frames = []
    current = 0
    for i, t in enumerate(times):
        if i in profile:
            current = i
        tag, base, noise_tag, noise_base = profile[current]
        if i == hot:
            value = float(rng.uniform(_HOT_LO, 0.999))
        else:
            value = _jitter(rng, base, _DEVIANT_LO, 0.899)
        scores = {tag: _split_score(rng, value)}
        if noise_tag:
            scores[noise_tag] = {"det": round(_jitter(rng, noise_base, 0.01, _NORMAL_HI), 4)}
        frames.append(FrameAnnotation(time=t, tag_scores=scores))
    return frames


def _normal_frames(rng, times, taxonomy):
    all_tags = list(taxonomy.tags)
    profile: dict[int, list[tuple[str, float]]] = {}
    for s in _segment_starts(rng, len(times)):
        # at least one benign tag per segment keeps frame vectors distinguishable
        picks = {all_tags[int(rng.integers(0, len(all_tags)))] for _ in range(int(rng.integers(1, 3)))}
        profile[s] = [(tag, float(rng.uniform(0.05, 0.25))) for tag in sorted(picks)]

    frames = []
    current = 0
    for i, t in enumerate(times):
        if i in profile:
            current = i
        scores = {
            tag: _split_score(rng, _jitter(rng, base, 0.01, _NORMAL_HI))
            for tag, base in profile[current]
        }
        frames.append(FrameAnnotation(time=t, tag_scores=scores))
    return frames


def _clips(rng, duration, taxonomy, category):
    """Sequential transcript clips; deviant clips carry a high-rate category word."""
    cat_words = (
        [w for w, c in taxonomy.words.items() if c == category] if category else []
    )
    all_words = list(taxonomy.words)
    clips = []
    t0 = 0.0
    while t0 < duration - 2.0:
        t1 = min(round(t0 + float(rng.uniform(4, 10)), 3), duration)
        tokens = int(rng.integers(10, 41))
        counts: dict[str, int] = {}
        if category:
            word = cat_words[int(rng.integers(0, len(cat_words)))]
            low = math.ceil(_DEVIANT_LO * tokens)
            counts[word] = int(rng.integers(low, tokens + 1))
        else:
            for _ in range(int(rng.integers(0, 3))):
                word = all_words[int(rng.integers(0, len(all_words)))]
                counts[word] = int(rng.integers(1, max(2, int(_NORMAL_HI * tokens) + 1)))
        mentioned = " ".join(sorted(counts)) if counts else "nothing notable"
        clips.append(
            AudioAnnotation(
                start_time=t0,
                end_time=t1,
                text=f"segment mentioning {mentioned}",
                word_counts=counts,
                token_count=tokens,
            )
        )
        t0 = t1
    return clips


def synthesize_corpus(
    num_videos: int,
    deviant_fraction: float,
    taxonomy: RiskTaxonomy,
    seed: int,
    min_duration: float = 20.0,
    max_duration: float = 90.0,
) -> list[VideoRecord]:
    """Generate a deterministic corpus with floor(num_videos * deviant_fraction)
    deviant records, placed by a seeded shuffle.

    Deviant videos keep every frame's ground-truth-category score in
    [0.56, 1.0] (at least one frame >= 0.9) and every clip's word rate in
    [0.56, 1.0]; normal videos keep every score and rate <= 0.3. Mean-based
    risk therefore separates the classes strictly at threshold 0.5.
    """
    if num_videos < 0:
        raise ConfigError("num_videos must be >= 0")
    if not 0.0 <= deviant_fraction <= 1.0:
        raise ConfigError("deviant_fraction must lie in [0, 1]")
    if not taxonomy.tags or not taxonomy.words:
        raise ConfigError("taxonomy must define at least one tag and one word")

    rng = np.random.default_rng(seed)
    num_deviant = math.floor(num_videos * deviant_fraction)
    deviant = np.zeros(num_videos, dtype=bool)
    deviant[rng.permutation(num_videos)[:num_deviant]] = True

    records = []
    for i in range(num_videos):
        duration = round(float(rng.uniform(min_duration, max_duration)), 3)
        interval = sampling_interval(duration)
        times = [k * interval for k in range(int(duration // interval) + 1)]
        if deviant[i]:
            category = CATEGORIES[int(rng.integers(0, 4))]
            frames = _deviant_frames(rng, times, taxonomy, category)
            audio = _clips(rng, duration, taxonomy, category)
            truth = category
        else:
            frames = _normal_frames(rng, times, taxonomy)
            audio = _clips(rng, duration, taxonomy, None)
            truth = NORMAL_LABEL
        record = VideoRecord(
            video_id=f"v{i:05d}",
            duration=duration,
            frames=tuple(frames),
            audio=tuple(audio),
            ground_truth=truth,
        )
        validate_record(record)
        records.append(record)
    return records
