"""Frame-sequence simulator for the inner-point update loop.

The scene translates by whole pixels between frames, so the ground truth
translates exactly and never needs re-rasterization. Noise is injected
fresh per frame; the inside-the-projection judgment is always made against
the clean translated interior, so noise affects what the estimator sees but
never how it is scored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .image import Point
from .methods import Estimator, resolve
from .raycast import EstimatorConfig, Features
from .scenes import NoiseSpec, Scene, SceneSpec, SceneError, generate, inject_noise


def splitmix64(x: int) -> int:
    """SplitMix64 mix; derives independent per-frame seeds from a master seed."""
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


def frame_seed(master_seed: int, frame: int) -> int:
    """Seed for one frame's noise; reproducible in isolation."""
    return splitmix64((master_seed & 0xFFFFFFFFFFFFFFFF) + frame)


@dataclass(frozen=True)
class MotionSpec:
    """A translating scene: ``frames`` frames at integer ``velocity`` px/frame.

    ``drop_count`` edge pixels are deleted per frame, with a fresh seed
    derived from ``master_seed`` via :func:`frame_seed`.
    """

    scene: SceneSpec
    frames: int
    velocity: tuple[int, int]
    drop_count: int = 0
    master_seed: int = 0


@dataclass(frozen=True)
class FrameRecord:
    """One simulated frame: the inner point fed in and what came of it."""

    frame: int
    inner: Point
    inside_truth: bool
    features: Features | None
    centroid_error: float | None


@dataclass(frozen=True)
class TrackReport:
    """Per-frame records plus the survival index.

    ``survival`` is the index of the first frame whose fed inner point fell
    outside the true (clean, translated) projection, or ``frames`` when the
    object was never lost.
    """

    method: str
    records: tuple[FrameRecord, ...]
    survival: int


def simulate(motion: MotionSpec, method: str | Estimator, cfg: EstimatorConfig) -> TrackReport:
    """Track the translating scene, feeding each frame the previous frame's
    updated inner point.

    Frame 0 uses the scene's generated interior point. An estimator
    precondition failure counts as a tracking failure for that frame, not an
    error.
    """
    if motion.frames < 2:
        raise SceneError(f"need at least 2 frames, got {motion.frames}")
    base: Scene = generate(motion.scene)
    vx, vy = motion.velocity
    w, h = base.image.width, base.image.height
    idx = base.image.edge_indices()
    xs, ys = idx % w, idx // w
    last = motion.frames - 1
    if (
        int(xs.min()) + last * min(vx, 0) < 1
        or int(xs.max()) + last * max(vx, 0) > w - 2
        or int(ys.min()) + last * min(vy, 0) < 1
        or int(ys.max()) + last * max(vy, 0) > h - 2
    ):
        raise SceneError("scene leaves the image (or its margin) before the last frame")

    estimator = resolve(method)
    method_name = method if isinstance(method, str) else getattr(method, "__name__", "custom")
    interior = base.truth.interior
    c0 = base.truth.centroid
    inner = base.inner
    records: list[FrameRecord] = []
    survival = motion.frames
    for t in range(motion.frames):
        dx, dy = t * vx, t * vy
        inside = Point(inner.x - dx, inner.y - dy) in interior
        frame_img = base.image.translate(dx, dy)
        if motion.drop_count:
            frame_img = inject_noise(
                frame_img, NoiseSpec(motion.drop_count, frame_seed(motion.master_seed, t))
            )
        feats = None
        error = None
        if frame_img.in_bounds(inner.x, inner.y) and not frame_img.is_edge(inner.x, inner.y):
            feats = estimator(frame_img, inner, cfg)
            error = math.hypot(feats.centroid.x - (c0.x + dx), feats.centroid.y - (c0.y + dy))
        records.append(FrameRecord(t, inner, inside, feats, error))
        if not inside or feats is None:
            survival = t
            break
        inner = feats.inner
    return TrackReport(method_name, tuple(records), survival)
