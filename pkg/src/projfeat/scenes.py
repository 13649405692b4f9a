"""Deterministic synthetic edge scenes and seeded edge-dropout noise.

Shapes are defined by an analytic inside predicate over pixel centers; the
contour is the outer 4-boundary of that open region (pixels outside it with
a 4-neighbor inside). A 4-connected fill can therefore never escape a clean
contour, while deleting any single contour pixel opens a 4-connected gap,
which is exactly the failure mode the noise injector exists to exercise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .image import EdgeImage, Point
from .oracle import GroundTruth, compute_ground_truth


class SceneError(ValueError):
    """Scene parameters are invalid or the shape does not fit the image."""


#: Total angular fan occupied by the fingers of a hand scene (radians).
FINGER_SPREAD = 2.0


@dataclass(frozen=True)
class SceneSpec:
    """Parameters of one synthetic scene.

    ``shape`` is one of circle, square, ellipse, hand. Size parameters:
    ``radius`` (circle), ``half_side`` (square), ``semi_a``/``semi_b``
    (ellipse), ``palm_radius``/``fingers``/``finger_length``/``finger_width``
    (hand). ``rotation`` applies to ellipse and hand.
    """

    shape: str
    width: int
    height: int
    cx: int
    cy: int
    radius: float | None = None
    half_side: int | None = None
    semi_a: float | None = None
    semi_b: float | None = None
    palm_radius: float | None = None
    fingers: int = 4
    finger_length: float | None = None
    finger_width: float | None = None
    rotation: float = 0.0


@dataclass(frozen=True)
class NoiseSpec:
    """Edge-dropout noise: delete ``drop_count`` edge pixels chosen by ``seed``."""

    drop_count: int
    seed: int


@dataclass(frozen=True)
class Scene:
    """A generated edge image with its guaranteed-interior point(s) and truth.

    ``fingertip`` is populated for hand scenes only: an interior pixel near
    the tip of the middle finger, i.e. inside a region much narrower than
    the palm.
    """

    image: EdgeImage
    inner: Point
    truth: GroundTruth
    spec: SceneSpec
    fingertip: Point | None = None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise SceneError(message)


def _capsule_mask(xx, yy, ax, ay, bx, by, radius):
    vx, vy = bx - ax, by - ay
    vv = vx * vx + vy * vy
    if vv == 0:
        dx, dy = xx - ax, yy - ay
        return dx * dx + dy * dy < radius * radius
    t = np.clip(((xx - ax) * vx + (yy - ay) * vy) / vv, 0.0, 1.0)
    dx = xx - (ax + t * vx)
    dy = yy - (ay + t * vy)
    return dx * dx + dy * dy < radius * radius


def _finger_angles(spec: SceneSpec) -> list[float]:
    if spec.fingers == 1:
        return [spec.rotation]
    step = FINGER_SPREAD / (spec.fingers - 1)
    mid = (spec.fingers - 1) / 2.0
    return [spec.rotation + (k - mid) * step for k in range(spec.fingers)]


def _inside_masks(spec: SceneSpec):
    """The open inside region, plus per-part masks for hand labeling."""
    xx, yy = np.meshgrid(
        np.arange(spec.width, dtype=np.float64),
        np.arange(spec.height, dtype=np.float64),
    )
    dx, dy = xx - spec.cx, yy - spec.cy
    parts: list[np.ndarray] = []
    if spec.shape == "circle":
        _require(spec.radius is not None and spec.radius >= 3, "circle needs radius >= 3")
        inside = dx * dx + dy * dy < spec.radius * spec.radius
    elif spec.shape == "square":
        _require(
            spec.half_side is not None and spec.half_side >= 3,
            "square needs half_side >= 3",
        )
        inside = np.maximum(np.abs(dx), np.abs(dy)) < spec.half_side
    elif spec.shape == "ellipse":
        _require(
            spec.semi_a is not None and spec.semi_b is not None
            and min(spec.semi_a, spec.semi_b) >= 3,
            "ellipse needs semi_a and semi_b >= 3",
        )
        c, s = math.cos(spec.rotation), math.sin(spec.rotation)
        u = dx * c + dy * s
        v = -dx * s + dy * c
        inside = (u / spec.semi_a) ** 2 + (v / spec.semi_b) ** 2 < 1.0
    elif spec.shape == "hand":
        _require(
            spec.palm_radius is not None and spec.palm_radius >= 4,
            "hand needs palm_radius >= 4",
        )
        _require(spec.fingers >= 0, "finger count must be >= 0")
        palm = dx * dx + dy * dy < spec.palm_radius * spec.palm_radius
        parts.append(palm)
        inside = palm
        if spec.fingers > 0:
            _require(
                spec.finger_length is not None and spec.finger_length >= 3,
                "hand needs finger_length >= 3",
            )
            _require(
                spec.finger_width is not None and spec.finger_width >= 3,
                "hand needs finger_width >= 3",
            )
            half_w = spec.finger_width / 2.0
            for angle in _finger_angles(spec):
                c, s = math.cos(angle), math.sin(angle)
                ax = spec.cx + (spec.palm_radius - half_w) * c
                ay = spec.cy + (spec.palm_radius - half_w) * s
                bx = spec.cx + (spec.palm_radius + spec.finger_length) * c
                by = spec.cy + (spec.palm_radius + spec.finger_length) * s
                finger = _capsule_mask(xx, yy, ax, ay, bx, by, half_w)
                parts.append(finger)
                inside = inside | finger
    else:
        raise SceneError(f"unknown shape {spec.shape!r}")
    return inside, parts


def _outer_boundary(inside: np.ndarray) -> np.ndarray:
    near = np.zeros_like(inside)
    near[1:, :] |= inside[:-1, :]
    near[:-1, :] |= inside[1:, :]
    near[:, 1:] |= inside[:, :-1]
    near[:, :-1] |= inside[:, 1:]
    return near & ~inside


def _nearest_inside(inside: np.ndarray, x: float, y: float) -> Point:
    ys, xs = np.nonzero(inside)
    d2 = (xs - x) ** 2 + (ys - y) ** 2
    order = np.lexsort((xs, ys, d2))
    k = order[0]
    return Point(int(xs[k]), int(ys[k]))


def generate(spec: SceneSpec) -> Scene:
    """Rasterize a scene: edge image, interior point(s), exact ground truth.

    Deterministic: the same spec always yields the identical raster. Raises
    :class:`SceneError` when the contour does not fit with at least one
    pixel of margin to the border or the interior is not one 4-connected
    region.
    """
    _require(spec.width >= 3 and spec.height >= 3, "image must be at least 3x3")
    _require(
        0 <= spec.cx < spec.width and 0 <= spec.cy < spec.height,
        "center must be inside the image",
    )
    inside, parts = _inside_masks(spec)
    _require(bool(inside.any()), "shape rasterized to an empty region")
    contour = _outer_boundary(inside)
    if (
        contour[0, :].any()
        or contour[-1, :].any()
        or contour[:, 0].any()
        or contour[:, -1].any()
        or inside[0, :].any()
        or inside[-1, :].any()
        or inside[:, 0].any()
        or inside[:, -1].any()
    ):
        raise SceneError("shape does not fit the image with a 1 pixel margin")
    image = EdgeImage.from_array(contour)
    inner = _nearest_inside(inside, spec.cx, spec.cy)
    truth = compute_ground_truth(image, inner)
    _require(
        truth.area == int(inside.sum()),
        "interior is not a single 4-connected region; adjust shape parameters",
    )
    fingertip = None
    if spec.shape == "hand" and spec.fingers > 0:
        mid = _finger_angles(spec)[(spec.fingers - 1) // 2]
        tip_x = spec.cx + (spec.palm_radius + spec.finger_length) * math.cos(mid)
        tip_y = spec.cy + (spec.palm_radius + spec.finger_length) * math.sin(mid)
        fingertip = _nearest_inside(inside, tip_x, tip_y)
        labels: dict[Point, int] = {}
        for p in truth.interior:
            if parts[0][p.y, p.x]:
                labels[p] = 0
            else:
                for k in range(1, len(parts)):
                    if parts[k][p.y, p.x]:
                        labels[p] = k
                        break
        truth = replace(truth, region_labels=labels)
    return Scene(image=image, inner=inner, truth=truth, spec=spec, fingertip=fingertip)


def scene_id(spec: SceneSpec) -> str:
    """Compact scene descriptor used in CSV output."""
    size = f"{spec.width}x{spec.height}"
    if spec.shape == "circle":
        return f"circle-r{spec.radius:g}-{size}"
    if spec.shape == "square":
        return f"square-h{spec.half_side}-{size}"
    if spec.shape == "ellipse":
        return f"ellipse-a{spec.semi_a:g}-b{spec.semi_b:g}-{size}"
    if spec.shape == "hand":
        return f"hand-p{spec.palm_radius:g}-f{spec.fingers}-{size}"
    return f"{spec.shape}-{size}"


def inject_noise(image: EdgeImage, noise: NoiseSpec) -> EdgeImage:
    """Delete ``drop_count`` distinct edge pixels chosen uniformly by a PCG64
    generator seeded with ``noise.seed``. Deterministic per seed."""
    if noise.drop_count < 0:
        raise SceneError(f"drop_count must be >= 0, got {noise.drop_count}")
    if noise.drop_count == 0:
        return image
    edge_idx = image.edge_indices()
    if noise.drop_count > len(edge_idx):
        raise SceneError(
            f"drop_count {noise.drop_count} exceeds edge pixel count {len(edge_idx)}"
        )
    rng = np.random.default_rng(noise.seed)
    chosen = rng.choice(edge_idx, size=noise.drop_count, replace=False)
    buf = bytearray(image.data)
    for idx in chosen:
        buf[idx] = 0
    return EdgeImage(image.width, image.height, bytes(buf))
