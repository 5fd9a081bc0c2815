"""HTTP review service: queue, per-video layouts, reviews, and retraining.

The service realizes the review loop: the filter model scores every video,
videos above the threshold form the moderator queue, accepted reviews land in
the append-only log, and retraining swaps in a new model version atomically.
Layout responses are computed lazily and cached as bytes, so repeated reads
are byte-identical.
"""

from __future__ import annotations

import json
import logging
import struct
import threading
import zlib
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import classifier, risk
from .audiosum import build_audio_layout
from .config import ServiceConfig
from .corpus import RiskTaxonomy, VideoRecord, default_taxonomy, load_corpus, load_taxonomy
from .errors import DuplicateReviewError, EvaluationError, ValidationError
from .framesum import build_scene_layout, scene_layout_to_obj
from .store import Evidence, ReviewLabel, ReviewStore, latest_snapshot_path, snapshot_path
from .timeline import build_timeline, timeline_to_obj

logger = logging.getLogger(__name__)


def _placeholder_png(size: int = 16, rgb: tuple[int, int, int] = (204, 204, 209)) -> bytes:
    """A tiny constant PNG served when a frame has no thumbnail on disk."""

    def chunk(tag: bytes, data: bytes) -> bytes:
        return (
            struct.pack(">I", len(data))
            + tag
            + data
            + struct.pack(">I", zlib.crc32(tag + data))
        )

    row = b"\x00" + bytes(rgb) * size
    header = struct.pack(">IIBBBBB", size, size, 8, 2, 0, 0, 0)
    return (
        b"\x89PNG\r\n\x1a\n"
        + chunk(b"IHDR", header)
        + chunk(b"IDAT", zlib.compress(row * size))
        + chunk(b"IEND", b"")
    )


PLACEHOLDER_PNG = _placeholder_png()


def _json_bytes(obj) -> bytes:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


class Engine:
    """All service state: corpus, taxonomy, review store, and the live model."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        self.taxonomy: RiskTaxonomy = (
            load_taxonomy(config.taxonomy_path) if config.taxonomy_path else default_taxonomy()
        )
        self.corpus: list[VideoRecord] | None = None
        self.by_id: dict[str, VideoRecord] = {}
        try:
            self.corpus = load_corpus(config.corpus_path)
            self.by_id = {v.video_id: v for v in self.corpus}
        except FileNotFoundError:
            logger.warning("corpus file %s not found; serving 409s", config.corpus_path)

        self.store = ReviewStore(config.review_log)
        self.model = self._load_latest_model()
        self._model_lock = threading.Lock()
        self._train_lock = threading.Lock()
        self._features: dict[str, classifier.FeatureMatrixPair] = {}
        self._scores: dict[int, dict[str, float]] = {}
        self._cache: dict[tuple[str, str], bytes] = {}

    def _load_latest_model(self) -> classifier.FilterModel:
        path = latest_snapshot_path(self.config.model_dir)
        if path is not None:
            return classifier.load_model(path)
        return classifier.linear_model(version=0)

    # -- scoring ------------------------------------------------------------

    def features_for(self, video_id: str) -> classifier.FeatureMatrixPair:
        pair = self._features.get(video_id)
        if pair is None:
            pair = classifier.featurize(self.by_id[video_id], self.taxonomy)
            self._features[video_id] = pair
        return pair

    def scores(self) -> dict[str, float]:
        """Deviance score per video under the current model, cached per version."""
        model = self.model
        cached = self._scores.get(model.version)
        if cached is None:
            assert self.corpus is not None
            cached = {}
            for video in self.corpus:
                if not video.frames and not video.audio:
                    # no annotations: nothing to score, never queued
                    cached[video.video_id] = 0.0
                else:
                    cached[video.video_id] = classifier.predict(
                        model, self.features_for(video.video_id)
                    )
            self._scores[model.version] = cached
        return cached

    def queue(self, threshold: float) -> list[dict]:
        reviewed = self.store.reviewed_video_ids()
        scores = self.scores()
        items = [
            (score, vid)
            for vid, score in scores.items()
            if score > threshold and vid not in reviewed
        ]
        items.sort(key=lambda pair: (-pair[0], pair[1]))
        return [
            {
                "video_id": vid,
                "risk_value": score,
                "duration": self.by_id[vid].duration,
            }
            for score, vid in items
        ]

    # -- layouts ------------------------------------------------------------

    def cached(self, kind: str, video_id: str) -> bytes:
        key = (kind, video_id)
        body = self._cache.get(key)
        if body is None:
            video = self.by_id[video_id]
            if kind == "video":
                risk_obj = None
                if video.frames or video.audio:
                    summary = risk.video_risk(video, self.taxonomy)
                    risk_obj = {
                        "risk_value": summary.risk_value,
                        "per_frame": [list(entry) for entry in summary.per_frame],
                        "per_audio": [list(entry) for entry in summary.per_audio],
                    }
                obj = {
                    "metadata": {
                        "video_id": video.video_id,
                        "duration": video.duration,
                        "frames": len(video.frames),
                        "audio_clips": len(video.audio),
                        "ground_truth": video.ground_truth,
                    },
                    "timeline": timeline_to_obj(
                        build_timeline(video, self.taxonomy, self.config.timeline)
                    ),
                    "risk": risk_obj,
                }
            elif kind == "frames":
                layout = build_scene_layout(video, self.taxonomy, self.config.framesum)
                obj = scene_layout_to_obj(layout, self.taxonomy)
            else:
                obj = build_audio_layout(video, self.taxonomy, self.config.audiosum)
            body = _json_bytes(obj)
            self._cache[key] = body
        return body

    # -- reviews and training -------------------------------------------------

    def submit_review(self, review: ReviewLabel) -> int:
        count = self.store.append(review, self.taxonomy)
        auto_n = self.config.train.auto_n
        if auto_n > 0 and count % auto_n == 0 and self.store.has_both_classes():
            try:
                self.retrain()
            except Exception:
                logger.exception("auto-retrain failed; keeping model v%d", self.model.version)
        return count

    def retrain(self) -> classifier.FilterModel:
        with self._train_lock:
            reviews = self.store.reviews
            assert self.corpus is not None
            model = classifier.retrain(
                reviews,
                self.corpus,
                self.taxonomy,
                self.config.train.to_train_config(),
                base_version=self.model.version,
            )
            self.config.model_dir.mkdir(parents=True, exist_ok=True)
            classifier.save_model(model, snapshot_path(self.config.model_dir, model.version))
            with self._model_lock:
                self.model = model
            logger.info("model v%d trained on %d reviews", model.version, len(reviews))
            return model


class EvidenceBody(BaseModel):
    frame_times: list[float] = []
    tags: list[str] = []
    words: list[str] = []


class ReviewRequest(BaseModel):
    label: str
    moderator_id: str
    evidence: EvidenceBody = EvidenceBody()


def create_app(config: ServiceConfig) -> FastAPI:
    app = FastAPI(title="vidmod review service")
    # the console is served statically, from anywhere
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    engine = Engine(config)
    app.state.engine = engine

    def require_corpus() -> None:
        if engine.corpus is None:
            raise HTTPException(status_code=409, detail="no corpus loaded")

    def require_video(video_id: str) -> VideoRecord:
        require_corpus()
        video = engine.by_id.get(video_id)
        if video is None:
            raise HTTPException(status_code=404, detail=f"unknown video {video_id!r}")
        return video

    @app.get("/meta")
    def meta():
        return {
            "categories": list(engine.taxonomy.categories),
            "tags": dict(engine.taxonomy.tags),
            "words": dict(engine.taxonomy.words),
            "palette": engine.config.palette,
            "threshold": engine.config.threshold,
        }

    @app.get("/queue")
    def queue(threshold: float | None = Query(default=None, ge=0.0, le=1.0)):
        require_corpus()
        return engine.queue(engine.config.threshold if threshold is None else threshold)

    @app.get("/videos/{video_id}")
    def video_detail(video_id: str):
        require_video(video_id)
        return Response(engine.cached("video", video_id), media_type="application/json")

    @app.get("/videos/{video_id}/frames")
    def video_frames(video_id: str):
        require_video(video_id)
        return Response(engine.cached("frames", video_id), media_type="application/json")

    @app.get("/videos/{video_id}/audio")
    def video_audio(video_id: str):
        require_video(video_id)
        return Response(engine.cached("audio", video_id), media_type="application/json")

    @app.get("/videos/{video_id}/thumb/{frame_index}")
    def video_thumb(video_id: str, frame_index: int):
        video = require_video(video_id)
        if not 0 <= frame_index < len(video.frames):
            raise HTTPException(status_code=404, detail="frame index out of range")
        thumb = video.frames[frame_index].thumbnail
        if thumb:
            path = Path(thumb)
            if not path.is_absolute():
                path = engine.config.corpus_path.parent / path
            if path.is_file():
                media = "image/jpeg" if path.suffix.lower() in (".jpg", ".jpeg") else "image/png"
                return Response(path.read_bytes(), media_type=media)
        return Response(PLACEHOLDER_PNG, media_type="image/png")

    @app.post("/videos/{video_id}/review")
    def post_review(video_id: str, body: ReviewRequest):
        require_video(video_id)
        review = ReviewLabel(
            video_id=video_id,
            label=body.label,
            evidence=Evidence(
                frame_times=tuple(body.evidence.frame_times),
                tags=tuple(body.evidence.tags),
                words=tuple(body.evidence.words),
            ),
            moderator_id=body.moderator_id,
            timestamp=0.0,  # stamped by the store
        )
        try:
            count = engine.submit_review(review)
        except ValidationError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except DuplicateReviewError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return {"accepted": True, "review_count": count}

    @app.post("/train")
    def train():
        require_corpus()
        if not engine.store.has_both_classes():
            raise HTTPException(
                status_code=409,
                detail="need both classes (at least one normal and one deviant review)",
            )
        model = engine.retrain()
        return {
            "version": model.version,
            "metrics": {
                "final_loss": model.training_meta.get("final_loss"),
                "train_accuracy": model.training_meta.get("train_accuracy"),
                "num_reviews": model.training_meta.get("num_reviews"),
            },
        }

    @app.get("/model")
    def model_meta():
        model = engine.model
        return {
            "version": model.version,
            "stage": model.stage,
            "training_meta": model.training_meta,
        }

    @app.get("/metrics")
    def metrics(hours: float = Query(default=1.0, gt=0.0)):
        require_corpus()
        truth = {
            v.video_id: v.ground_truth
            for v in engine.corpus or []
            if v.ground_truth is not None
        }
        try:
            result = risk.moderation_metrics(engine.store.reviews, truth, hours)
        except EvaluationError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return {
            "time_efficiency": result.time_efficiency,
            "missing_rate": result.missing_rate,
            "reviews": len(engine.store),
        }

    return app


def serve(config: ServiceConfig, host: str = "127.0.0.1", port: int = 8000) -> None:
    import uvicorn

    uvicorn.run(create_app(config), host=host, port=port, log_level="info")
