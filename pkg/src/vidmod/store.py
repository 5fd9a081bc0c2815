"""Moderator reviews and their durable, append-only log.

Reviews are facts: once accepted they are never mutated or deleted, and the
whole store state is reconstructed by replaying the log line by line. That
makes restarts trivial to reason about and keeps the file diffable.
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass, replace
from pathlib import Path

from .corpus import CATEGORIES, NORMAL_LABEL, RiskTaxonomy
from .errors import DuplicateReviewError, ParseError, ValidationError


@dataclass(frozen=True)
class Evidence:
    """What the moderator points at: frame times and/or tag and word ids."""

    frame_times: tuple[float, ...] = ()
    tags: tuple[str, ...] = ()
    words: tuple[str, ...] = ()

    def is_empty(self) -> bool:
        return not (self.frame_times or self.words)


@dataclass(frozen=True)
class ReviewLabel:
    video_id: str
    label: str  # "normal" or a category id
    evidence: Evidence
    moderator_id: str
    timestamp: float


def validate_review(review: ReviewLabel, taxonomy: RiskTaxonomy | None = None) -> None:
    """Check label and evidence invariants; deviant labels need evidence."""
    categories = taxonomy.categories if taxonomy else CATEGORIES
    if review.label != NORMAL_LABEL and review.label not in categories:
        raise ValidationError(f"unknown label {review.label!r}")
    if review.label != NORMAL_LABEL and review.evidence.is_empty():
        raise ValidationError(
            "deviant labels require evidence: at least one frame time or word"
        )
    if not review.video_id:
        raise ValidationError("review without video_id")
    if not review.moderator_id:
        raise ValidationError("review without moderator_id")


def review_to_obj(review: ReviewLabel) -> dict:
    return {
        "video_id": review.video_id,
        "label": review.label,
        "evidence": {
            "frame_times": list(review.evidence.frame_times),
            "tags": list(review.evidence.tags),
            "words": list(review.evidence.words),
        },
        "moderator_id": review.moderator_id,
        "timestamp": review.timestamp,
    }


def review_from_obj(obj: dict) -> ReviewLabel:
    try:
        ev = obj.get("evidence") or {}
        return ReviewLabel(
            video_id=str(obj["video_id"]),
            label=str(obj["label"]),
            evidence=Evidence(
                frame_times=tuple(float(t) for t in ev.get("frame_times", [])),
                tags=tuple(ev.get("tags", [])),
                words=tuple(ev.get("words", [])),
            ),
            moderator_id=str(obj["moderator_id"]),
            timestamp=float(obj.get("timestamp", 0.0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed review ({exc})") from exc


def load_reviews(path: str | Path) -> list[ReviewLabel]:
    """Read a review log (JSONL) without going through a store."""
    reviews: list[ReviewLabel] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
            reviews.append(review_from_obj(obj))
    return reviews


class ReviewStore:
    """Append-only review log with single-writer appends.

    Appends are serialized through a lock and flushed to disk before the
    caller sees a result; a crash after an acknowledged append is therefore
    replayed identically on restart.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._reviews: list[ReviewLabel] = []
        self._seen: set[tuple[str, str]] = set()
        if self.path.exists():
            for review in load_reviews(self.path):
                self._reviews.append(review)
                self._seen.add((review.video_id, review.moderator_id))

    @property
    def reviews(self) -> list[ReviewLabel]:
        with self._lock:
            return list(self._reviews)

    def __len__(self) -> int:
        with self._lock:
            return len(self._reviews)

    def reviewed_video_ids(self) -> set[str]:
        with self._lock:
            return {r.video_id for r in self._reviews}

    def has_both_classes(self) -> bool:
        with self._lock:
            labels = {r.label == NORMAL_LABEL for r in self._reviews}
        return labels == {True, False}

    def append(self, review: ReviewLabel, taxonomy: RiskTaxonomy | None = None) -> int:
        """Validate, stamp a monotone timestamp, persist, then return the count."""
        validate_review(review, taxonomy)
        with self._lock:
            key = (review.video_id, review.moderator_id)
            if key in self._seen:
                raise DuplicateReviewError(
                    f"moderator {review.moderator_id!r} already reviewed {review.video_id!r}"
                )
            last = self._reviews[-1].timestamp if self._reviews else 0.0
            stamped = replace(review, timestamp=max(review.timestamp, time.time(), last))

            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(review_to_obj(stamped)) + "\n")
                fh.flush()
                os.fsync(fh.fileno())

            self._reviews.append(stamped)
            self._seen.add(key)
            return len(self._reviews)


# ---------------------------------------------------------------------------
# Model snapshot directory
# ---------------------------------------------------------------------------

_SNAPSHOT_PREFIX = "model_v"


def snapshot_path(model_dir: str | Path, version: int) -> Path:
    return Path(model_dir) / f"{_SNAPSHOT_PREFIX}{version:05d}.json"


def latest_snapshot_path(model_dir: str | Path) -> Path | None:
    directory = Path(model_dir)
    if not directory.is_dir():
        return None
    candidates = sorted(directory.glob(f"{_SNAPSHOT_PREFIX}*.json"))
    return candidates[-1] if candidates else None
