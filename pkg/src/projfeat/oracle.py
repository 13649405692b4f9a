"""Ground truth by exhaustive region labeling, plus estimator quality metrics.

The labeling here is a scanline span fill written independently of the
queue-based fills in :mod:`projfeat.filling`; tests that compare the two are
checking genuinely separate code paths.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .image import EdgeImage, FPoint, Point
from .rays import cast_ray, check_inner
from .raycast import EstimatorConfig, Features


class OpenContourError(ValueError):
    """The labeled free region reaches the image border (contour not closed)."""


@dataclass(frozen=True, eq=False)
class GroundTruth:
    """Exact interior statistics of a closed contour.

    ``region_labels`` optionally maps each interior pixel to a sub-region id
    (hand scenes label the palm 0 and each finger 1..F); an empty map means
    the interior is a single unlabeled region.
    """

    interior: frozenset[Point]
    centroid: FPoint
    area: int
    region_labels: Mapping[Point, int] = field(default_factory=dict)


def compute_ground_truth(image: EdgeImage, seed: Point) -> GroundTruth:
    """Label the free 4-connected region containing ``seed`` by scanline spans.

    Raises :class:`OpenContourError` when the region touches the image
    border, which means the seed is not enclosed by a closed contour.
    """
    check_inner(image, seed)
    data, w, h = image.data, image.width, image.height
    filled = bytearray(w * h)
    stack: list[tuple[int, int]] = [(int(seed[0]), int(seed[1]))]
    pixels: list[int] = []
    touched = False
    while stack:
        x, y = stack.pop()
        row = y * w
        if filled[row + x] or data[row + x]:
            continue
        x0 = x
        while x0 > 0 and not data[row + x0 - 1] and not filled[row + x0 - 1]:
            x0 -= 1
        x1 = x
        while x1 < w - 1 and not data[row + x1 + 1] and not filled[row + x1 + 1]:
            x1 += 1
        for xi in range(x0, x1 + 1):
            filled[row + xi] = 1
            pixels.append(row + xi)
        if x0 == 0 or x1 == w - 1 or y == 0 or y == h - 1:
            touched = True
        for ny in (y - 1, y + 1):
            if ny < 0 or ny >= h:
                continue
            nrow = ny * w
            xi = x0
            while xi <= x1:
                if not data[nrow + xi] and not filled[nrow + xi]:
                    stack.append((xi, ny))
                    while xi <= x1 and not data[nrow + xi]:
                        xi += 1
                else:
                    xi += 1
    if touched:
        raise OpenContourError(
            "free region reaches the image border: contour is not closed"
        )
    sx = sy = 0
    for idx in pixels:
        sx += idx % w
        sy += idx // w
    count = len(pixels)
    return GroundTruth(
        interior=frozenset(Point(i % w, i // w) for i in pixels),
        centroid=FPoint(sx / count, sy / count),
        area=count,
    )


#: CSV row emitted by the benchmark harness, in column order.
@dataclass(frozen=True)
class MetricsRow:
    method: str
    n: int
    y: int
    m: int
    max_iter: int
    scene: str
    seed: int
    inner_x: int
    inner_y: int
    centroid_x: float
    centroid_y: float
    centroid_error: float
    area_raw: float
    area_comparable: float
    inner_stability: float
    leak: bool
    iterations: int
    converged: bool
    work_counter: int
    runtime_ns: int


def comparable_area(
    method: str,
    raw_area: float,
    cfg: EstimatorConfig,
    support: int | None = None,
) -> float:
    """Map a method's raw area measure onto a common pixel-area axis.

    This is a comparison convention, not a property of the estimators: the
    pixel fill and the block raster already measure pixels, the grid fill
    is rescaled by its line density, and the ray fans treat the mean ray
    length as an effective disk radius (``support`` overrides the nominal
    ray count when the actual number of summed rays is known).
    """
    if method in ("pixel-fill", "ny-raster"):
        return float(raw_area)
    if method == "grid-fill":
        return raw_area * cfg.m * cfg.m / (2 * cfg.m - 1)
    if method in ("nray", "iter-nray", "ny-ray"):
        rays = support
        if rays is None:
            rays = cfg.n if method != "ny-ray" else cfg.n**cfg.y
        mean_len = raw_area / rays
        return math.pi * mean_len * mean_len
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class StabilityResult:
    """Per-seed estimates for one scene plus their maximum centroid spread."""

    inner_stability: float
    features: tuple[Features, ...]
    centroid_errors: tuple[float, ...] | None


def stability_sweep(
    image: EdgeImage,
    seeds: Sequence[Point],
    method: Callable[[EdgeImage, Point, EstimatorConfig], Features],
    cfg: EstimatorConfig,
    truth: GroundTruth | None = None,
) -> StabilityResult:
    """Run one estimator from several inner points and measure centroid spread.

    ``inner_stability`` is the maximum pairwise distance between the
    per-seed centroids; 0 means the estimate is independent of where inside
    the projection the inner point sits.
    """
    feats = tuple(method(image, Point(*s), cfg) for s in seeds)
    spread = 0.0
    for i in range(len(feats)):
        for j in range(i + 1, len(feats)):
            a, b = feats[i].centroid, feats[j].centroid
            d = math.hypot(a.x - b.x, a.y - b.y)
            if d > spread:
                spread = d
    errors = None
    if truth is not None:
        errors = tuple(
            math.hypot(f.centroid.x - truth.centroid.x, f.centroid.y - truth.centroid.y)
            for f in feats
        )
    return StabilityResult(spread, feats, errors)


def centroid_error(features: Features, truth: GroundTruth) -> float:
    return math.hypot(
        features.centroid.x - truth.centroid.x, features.centroid.y - truth.centroid.y
    )


def local_free_width(image: EdgeImage, p: Point, directions: int = 16) -> float:
    """Narrowest free extent through ``p``: min over direction pairs of the
    summed opposite ray lengths."""
    check_inner(image, p)
    best = math.inf
    for k in range(directions):
        a = math.pi * k / directions
        width = cast_ray(image, p, a).length + cast_ray(image, p, a + math.pi).length
        if width < best:
            best = width
    return best


def measure_runtime_ns(fn: Callable[[], object], repetitions: int = 5) -> int:
    """Median wall time of ``fn`` over ``repetitions`` runs after one warm-up."""
    fn()
    times = []
    for _ in range(max(1, repetitions)):
        t0 = time.perf_counter_ns()
        fn()
        times.append(time.perf_counter_ns() - t0)
    times.sort()
    return max(1, times[len(times) // 2])
