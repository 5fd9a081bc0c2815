"""Frame view pipeline: 1D temporal projection, shot clustering, scene alignment.

Frames are projected onto a single vertical axis (time stays on the horizontal
axis), split into shots wherever the projected position jumps, and shots whose
centroids sit close together are aligned into scenes. Each scene then gets a
summed per-tag glyph vector, a representative frame, and a risk-ranked row.

The projector is an exact-gradient t-SNE specialized to one output dimension.
Frame counts stay in the low thousands after sampling, so the quadratic exact
formulation is both affordable and easier to trust than tree approximations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .corpus import RiskTaxonomy, VideoRecord
from .errors import DomainError, ShapeError
from .risk import RiskVector, aggregate_tag_scores

DEFAULT_GAP_EPS = 0.08
DEFAULT_SCENE_TAU = 0.05


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjectionConfig:
    perplexity: float = 5.0
    iterations: int = 500
    seed: int = 0


@dataclass(frozen=True)
class ProjectedFrame:
    frame_index: int
    time: float
    y: float  # min-max rescaled to [0, 1]


@dataclass(frozen=True)
class Shot:
    """A maximal run of consecutive frames with similar projected positions."""

    frame_range: tuple[int, int]  # inclusive indices
    centroid_y: float


@dataclass(frozen=True, eq=False)
class Scene:
    shot_ids: tuple[int, ...]
    row: int | None = None
    glyph: np.ndarray | None = None
    representative_frame: int | None = None
    scene_risk: float = 0.0


@dataclass(frozen=True)
class SceneLayout:
    frames: tuple[ProjectedFrame, ...]
    shots: tuple[Shot, ...]
    scenes: tuple[Scene, ...]


@dataclass(frozen=True)
class FramesumConfig:
    eps: float = DEFAULT_GAP_EPS
    tau: float = DEFAULT_SCENE_TAU
    perplexity: float = 5.0
    iterations: int = 500
    seed: int = 0
    order: str = "risk"  # or "projection"


# ---------------------------------------------------------------------------
# 1D t-SNE
# ---------------------------------------------------------------------------

_EPS = 1e-12


def _squared_distances(x: np.ndarray) -> np.ndarray:
    sq = (x**2).sum(axis=1)
    d = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
    np.fill_diagonal(d, 0.0)
    return np.maximum(d, 0.0)


def _conditional_probs(distances: np.ndarray, perplexity: float) -> np.ndarray:
    """Per-row Gaussian affinities whose entropy matches log(perplexity).

    The per-point precision is found by binary search, the standard recipe.
    """
    n = distances.shape[0]
    target = math.log(perplexity)
    p = np.zeros((n, n))
    for i in range(n):
        d_i = np.delete(distances[i], i)
        beta_lo, beta_hi = 0.0, math.inf
        beta = 1.0
        row = np.zeros(n - 1)
        for _ in range(64):
            row = np.exp(-d_i * beta)
            total = row.sum()
            if total <= 0:
                entropy = 0.0
                row = np.full(n - 1, 1.0 / (n - 1))
            else:
                row = row / total
                nz = row[row > 0]
                entropy = float(-(nz * np.log(nz)).sum())
            if abs(entropy - target) < 1e-7:
                break
            if entropy > target:
                beta_lo = beta
                beta = beta * 2.0 if beta_hi == math.inf else (beta + beta_hi) / 2.0
            else:
                beta_hi = beta
                beta = (beta + beta_lo) / 2.0
        p[i, np.arange(n) != i] = row
    return p


def _tsne_1d(x: np.ndarray, perplexity: float, iterations: int, seed: int) -> np.ndarray:
    n = x.shape[0]
    cond = _conditional_probs(_squared_distances(x), perplexity)
    p = (cond + cond.T) / (2.0 * n)
    p = np.maximum(p, _EPS)

    rng = np.random.default_rng(seed)
    y = rng.normal(0.0, 1e-4, size=n)
    update = np.zeros(n)
    gains = np.ones(n)

    exaggeration_until = min(100, iterations // 2)
    momentum_switch = min(250, iterations // 2)
    # high rates fling small point sets apart for good: once same-group points
    # overshoot, the 1/(1+d^2) attraction vanishes and they never regroup
    learning_rate = max(2.0, min(50.0, n / 12.0))

    for it in range(iterations):
        p_eff = p * 4.0 if it < exaggeration_until else p
        diff = y[:, None] - y[None, :]
        inv = 1.0 / (1.0 + diff**2)
        np.fill_diagonal(inv, 0.0)
        q = np.maximum(inv / max(inv.sum(), _EPS), _EPS)

        grad = 4.0 * ((p_eff - q) * inv * diff).sum(axis=1)

        momentum = 0.5 if it < momentum_switch else 0.8
        sign_flip = update * grad < 0.0
        gains = np.where(sign_flip, gains + 0.2, gains * 0.8)
        gains = np.maximum(gains, 0.01)
        update = momentum * update - learning_rate * gains * grad
        y = y + update
        y = y - y.mean()
    return y


def project_frames(
    features: Sequence[Sequence[float]],
    config: ProjectionConfig = ProjectionConfig(),
    times: Sequence[float] | None = None,
) -> list[ProjectedFrame]:
    """Project feature vectors onto [0, 1]; deterministic for a fixed seed.

    The effective perplexity is capped at (n - 1) / 3 with a floor of 1, so
    short clips still embed. One frame lands at 0.5; two frames land at the
    interval ends (their order is meaningless downstream, only gaps matter).
    """
    n = len(features)
    if n == 0:
        raise DomainError("need at least one frame to project")
    lengths = {len(f) for f in features}
    if len(lengths) > 1:
        raise ShapeError(f"ragged feature vectors (lengths {sorted(lengths)})")
    if times is None:
        times = [float(i) for i in range(n)]

    if n == 1:
        ys = [0.5]
    elif n == 2:
        ys = [0.0, 1.0]
    else:
        x = np.asarray(features, dtype=float)
        perplexity = max(1.0, min(config.perplexity, (n - 1) / 3.0))
        y = _tsne_1d(x, perplexity, config.iterations, config.seed)
        span = y.max() - y.min()
        ys = [0.5] * n if span <= 0 else ((y - y.min()) / span).tolist()

    return [
        ProjectedFrame(frame_index=i, time=float(times[i]), y=float(ys[i]))
        for i in range(n)
    ]


# ---------------------------------------------------------------------------
# Shots and scenes
# ---------------------------------------------------------------------------


def cluster_shots(projected: Sequence[ProjectedFrame], eps: float = DEFAULT_GAP_EPS) -> list[Shot]:
    """Split the (time-sorted) frames into consecutive runs.

    A boundary falls between neighbours exactly when their projected positions
    differ by more than eps, which guarantees shots are contiguous in time.
    """
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    if not projected:
        return []
    shots: list[Shot] = []
    start = 0
    for i in range(1, len(projected)):
        if abs(projected[i].y - projected[i - 1].y) > eps:
            shots.append(_make_shot(projected, start, i - 1))
            start = i
    shots.append(_make_shot(projected, start, len(projected) - 1))
    return shots


def _make_shot(projected: Sequence[ProjectedFrame], first: int, last: int) -> Shot:
    ys = [projected[k].y for k in range(first, last + 1)]
    return Shot(frame_range=(first, last), centroid_y=sum(ys) / len(ys))


def align_scenes(shots: Sequence[Shot], tau: float = DEFAULT_SCENE_TAU) -> list[Scene]:
    """Group shots into scenes by single-linkage over centroid distance.

    Two shots are linked when their centroids differ by less than tau; scenes
    are the connected components, so the grouping is transitive even though
    the raw closeness relation is not. Scenes come back ordered by their
    earliest frame; rows are assigned separately.
    """
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau}")
    k = len(shots)
    parent = list(range(k))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(k):
        for j in range(i + 1, k):
            if abs(shots[i].centroid_y - shots[j].centroid_y) < tau:
                parent[find(i)] = find(j)

    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    scenes = [Scene(shot_ids=tuple(sorted(members))) for members in groups.values()]
    scenes.sort(key=lambda s: shots[s.shot_ids[0]].frame_range[0])
    return scenes


def scene_glyph(frame_vectors: Sequence[RiskVector]) -> tuple[np.ndarray, int, float]:
    """Aggregate one scene's frames: (summed glyph vector, representative, risk).

    The glyph is the elementwise sum of the frame vectors. The representative
    is the position of the frame with the highest single tag score (ties go to
    the earliest frame), and the scene risk is that highest score.
    """
    if not frame_vectors:
        raise DomainError("scene must contain at least one frame")
    stack = np.stack([v.scores for v in frame_vectors])
    glyph = stack.sum(axis=0)
    frame_maxima = stack.max(axis=1)
    representative = int(np.argmax(frame_maxima))
    return glyph, representative, float(frame_maxima[representative])


def order_scenes(layout: SceneLayout, order: str = "risk") -> SceneLayout:
    """Assign rows 0..k-1: by descending scene risk (default) or by projected
    position; ties resolve to the temporally earlier scene."""
    shots = layout.shots

    def first_frame(scene: Scene) -> int:
        return shots[scene.shot_ids[0]].frame_range[0]

    if order == "risk":
        key = lambda s: (-s.scene_risk, first_frame(s))
    elif order == "projection":
        centroid = lambda s: sum(shots[i].centroid_y for i in s.shot_ids) / len(s.shot_ids)
        key = lambda s: (centroid(s), first_frame(s))
    else:
        raise DomainError(f"unknown scene order {order!r}")

    ordered = sorted(layout.scenes, key=key)
    scenes = tuple(replace(s, row=row) for row, s in enumerate(ordered))
    return SceneLayout(frames=layout.frames, shots=layout.shots, scenes=scenes)


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------


def projection_features(video: VideoRecord, taxonomy: RiskTaxonomy) -> list[tuple[float, ...]]:
    """Dense appearance feature per frame, falling back to the tag-score vector."""
    out = []
    for frame in video.frames:
        if frame.feature is not None:
            out.append(tuple(frame.feature))
        else:
            out.append(tuple(aggregate_tag_scores(frame, taxonomy).scores))
    return out


def build_scene_layout(
    video: VideoRecord,
    taxonomy: RiskTaxonomy,
    config: FramesumConfig = FramesumConfig(),
) -> SceneLayout:
    """Full frame-view computation for one video."""
    if not video.frames:
        return SceneLayout(frames=(), shots=(), scenes=())

    projected = project_frames(
        projection_features(video, taxonomy),
        ProjectionConfig(config.perplexity, config.iterations, config.seed),
        times=[f.time for f in video.frames],
    )
    shots = cluster_shots(projected, config.eps)
    scenes = align_scenes(shots, config.tau)

    vectors = [aggregate_tag_scores(f, taxonomy) for f in video.frames]
    enriched = []
    for scene in scenes:
        member_frames: list[int] = []
        for shot_id in scene.shot_ids:
            first, last = shots[shot_id].frame_range
            member_frames.extend(range(first, last + 1))
        glyph, rep_pos, risk = scene_glyph([vectors[i] for i in member_frames])
        enriched.append(
            replace(
                scene,
                glyph=glyph,
                representative_frame=member_frames[rep_pos],
                scene_risk=risk,
            )
        )

    layout = SceneLayout(frames=tuple(projected), shots=tuple(shots), scenes=tuple(enriched))
    return order_scenes(layout, config.order)


def scene_layout_to_obj(layout: SceneLayout, taxonomy: RiskTaxonomy) -> dict:
    """JSON-ready form of a scene layout; glyphs only list nonzero tags."""
    scenes = []
    for scene in layout.scenes:
        shots = []
        for shot_id in scene.shot_ids:
            shot = layout.shots[shot_id]
            first, last = shot.frame_range
            shots.append(
                {
                    "frames": [
                        {
                            "idx": layout.frames[i].frame_index,
                            "t": layout.frames[i].time,
                            "y": layout.frames[i].y,
                        }
                        for i in range(first, last + 1)
                    ],
                    "centroid": shot.centroid_y,
                }
            )
        glyph = {}
        if scene.glyph is not None:
            glyph = {
                tag: float(value)
                for tag, value in zip(taxonomy.tag_ids, scene.glyph)
                if value > 0
            }
        scenes.append(
            {
                "row": scene.row,
                "shots": shots,
                "glyph": glyph,
                "rep_frame": scene.representative_frame,
                "scene_risk": scene.scene_risk,
            }
        )
    return {"scenes": scenes}
