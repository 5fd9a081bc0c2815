"""Service configuration: JSON file, environment overrides, sane defaults.

Every scalar key can be overridden with an environment variable prefixed
``VIDMOD_``; nested keys join with underscores, e.g. ``VIDMOD_TIMELINE_WINDOW``
or ``VIDMOD_TRAIN_AUTO_N``. Relative paths resolve against the config file's
directory so a config travels with its data.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .audiosum import AudiosumConfig
from .classifier import TrainConfig
from .errors import ConfigError, ParseError
from .framesum import FramesumConfig
from .timeline import TimelineConfig

ENV_PREFIX = "VIDMOD_"

DEFAULT_PALETTE = {
    "false_advertising": "#e41a1c",
    "protected_products": "#377eb8",
    "inappropriate_business": "#4daf4a",
    "sensitive_content": "#984ea3",
    "neutral": "#999999",
}


@dataclass(frozen=True)
class TrainSettings:
    epochs: int = 500
    lr: float = 0.5
    hidden: int = 16
    seed: int = 0
    auto_n: int = 50  # auto-retrain (and switch to the learned stage) every N reviews

    def to_train_config(self) -> TrainConfig:
        return TrainConfig(
            epochs=self.epochs,
            learning_rate=self.lr,
            seed=self.seed,
            hidden_width=self.hidden,
        )


@dataclass(frozen=True)
class ServiceConfig:
    corpus_path: Path
    taxonomy_path: Path | None = None  # None selects the built-in taxonomy
    threshold: float = 0.5
    timeline: TimelineConfig = TimelineConfig()
    framesum: FramesumConfig = FramesumConfig()
    audiosum: AudiosumConfig = AudiosumConfig()
    train: TrainSettings = TrainSettings()
    palette: dict = field(default_factory=lambda: dict(DEFAULT_PALETTE))
    review_log: Path = Path("reviews.jsonl")
    model_dir: Path = Path("models")


def _env_override(path: tuple[str, ...], value):
    raw = os.environ.get(ENV_PREFIX + "_".join(p.upper() for p in path))
    if raw is None:
        return value
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw  # plain strings (paths) need no quoting


def _get(obj: dict, *path: str, default=None):
    node = obj
    for key in path[:-1]:
        node = node.get(key, {}) if isinstance(node, dict) else {}
    value = node.get(path[-1], default) if isinstance(node, dict) else default
    return _env_override(path, value)


def load_config(path: str | Path) -> ServiceConfig:
    path = Path(path)
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise
    except json.JSONDecodeError as exc:
        raise ParseError(f"config {path}: invalid JSON ({exc.msg})") from exc
    if not isinstance(obj, dict):
        raise ParseError(f"config {path}: expected a JSON object")
    return config_from_obj(obj, base_dir=path.parent)


def config_from_obj(obj: dict, base_dir: str | Path = ".") -> ServiceConfig:
    base = Path(base_dir)

    def resolve(p) -> Path:
        p = Path(p)
        return p if p.is_absolute() else base / p

    corpus_path = _get(obj, "corpus_path")
    if corpus_path is None:
        raise ConfigError("config needs corpus_path")
    taxonomy_path = _get(obj, "taxonomy_path")

    threshold = float(_get(obj, "threshold", default=0.5))
    if not 0.0 <= threshold <= 1.0:
        raise ConfigError(f"threshold must lie in [0, 1], got {threshold}")

    return ServiceConfig(
        corpus_path=resolve(corpus_path),
        taxonomy_path=resolve(taxonomy_path) if taxonomy_path else None,
        threshold=threshold,
        timeline=TimelineConfig(
            window=float(_get(obj, "timeline", "window", default=10.0)),
            floor=float(_get(obj, "timeline", "floor", default=0.3)),
        ),
        framesum=FramesumConfig(
            eps=float(_get(obj, "framesum", "eps", default=0.08)),
            tau=float(_get(obj, "framesum", "tau", default=0.05)),
            perplexity=float(_get(obj, "framesum", "perplexity", default=5.0)),
            iterations=int(_get(obj, "framesum", "iterations", default=500)),
            seed=int(_get(obj, "framesum", "seed", default=0)),
            order=str(_get(obj, "framesum", "order", default="risk")),
        ),
        audiosum=AudiosumConfig(
            slot=float(_get(obj, "audiosum", "slot", default=30.0)),
            wiggle_weight=float(_get(obj, "audiosum", "lambda", default=0.3)),
        ),
        train=TrainSettings(
            epochs=int(_get(obj, "train", "epochs", default=500)),
            lr=float(_get(obj, "train", "lr", default=0.5)),
            hidden=int(_get(obj, "train", "hidden", default=16)),
            seed=int(_get(obj, "train", "seed", default=0)),
            auto_n=int(_get(obj, "train", "auto_n", default=50)),
        ),
        palette={**DEFAULT_PALETTE, **(_get(obj, "palette", default={}) or {})},
        review_log=resolve(_get(obj, "review_log", default="reviews.jsonl")),
        model_dir=resolve(_get(obj, "model_dir", default="models")),
    )
