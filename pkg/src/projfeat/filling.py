"""Filling-based feature estimators: exhaustive pixel fill and grid fill.

Both fills expand 4-connected from the inner point, so a closed 8-connected
contour cannot be crossed diagonally. The grid fill only visits pixels on
the lattice of lines spaced ``m`` apart and anchored at the inner point,
trading coverage for a much smaller working set and far fewer contour
pixels that, if missing, would let the fill escape.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .image import EdgeImage, FPoint, Point
from .rays import PreconditionError, check_inner, step_toward
from .raycast import EstimatorConfig, Features, recenter_inner_point


@dataclass(frozen=True)
class FillResult:
    """Pixels marked as part of the projection plus fill diagnostics.

    ``touched_border`` flags that the fill reached the image boundary,
    which on a closed contour can only happen through a gap. ``pushes``
    counts queue appends (the fill's work measure).
    """

    marked: frozenset[Point]
    touched_border: bool
    pushes: int


def pixel_fill(image: EdgeImage, inner: Point) -> FillResult:
    """Breadth-first fill of the free region containing ``inner``.

    A dequeued edge pixel is ignored; any other pixel is marked and its
    not-yet-seen in-bounds 4-neighbors are enqueued.
    """
    check_inner(image, inner)
    data, w, h = image.data, image.width, image.height
    seen = bytearray(w * h)
    start = int(inner[1]) * w + int(inner[0])
    queue = deque((start,))
    seen[start] = 1
    pushes = 1
    marked: list[int] = []
    touched = False
    xmax, ymax = w - 1, h - 1
    while queue:
        idx = queue.popleft()
        if data[idx]:
            continue
        marked.append(idx)
        x = idx % w
        y = idx // w
        if x == 0 or y == 0 or x == xmax or y == ymax:
            touched = True
        if x > 0 and not seen[idx - 1]:
            seen[idx - 1] = 1
            queue.append(idx - 1)
            pushes += 1
        if x < xmax and not seen[idx + 1]:
            seen[idx + 1] = 1
            queue.append(idx + 1)
            pushes += 1
        if y > 0 and not seen[idx - w]:
            seen[idx - w] = 1
            queue.append(idx - w)
            pushes += 1
        if y < ymax and not seen[idx + w]:
            seen[idx + w] = 1
            queue.append(idx + w)
            pushes += 1
    return FillResult(
        frozenset(Point(i % w, i // w) for i in marked), touched, pushes
    )


def grid_fill(image: EdgeImage, inner: Point, m: int) -> FillResult:
    """Fill restricted to the grid-line pixels anchored at ``inner``.

    A pixel belongs to the grid when its x or y offset from the inner point
    is a multiple of ``m``. Neighbors are enqueued only if they are grid
    pixels, non-edge, and unseen; connectivity is 4-connected along and
    between grid lines.
    """
    check_inner(image, inner)
    if m < 2:
        raise PreconditionError(f"grid cell size must be >= 2, got {m}")
    data, w, h = image.data, image.width, image.height
    ix, iy = int(inner[0]), int(inner[1])
    seen = bytearray(w * h)
    start = iy * w + ix
    queue = deque((start,))
    seen[start] = 1
    pushes = 1
    marked: list[int] = []
    touched = False
    xmax, ymax = w - 1, h - 1
    while queue:
        idx = queue.popleft()
        marked.append(idx)
        x = idx % w
        y = idx // w
        if x == 0 or y == 0 or x == xmax or y == ymax:
            touched = True
        for nidx, nx, ny in (
            (idx - 1, x - 1, y),
            (idx + 1, x + 1, y),
            (idx - w, x, y - 1),
            (idx + w, x, y + 1),
        ):
            if nx < 0 or nx > xmax or ny < 0 or ny > ymax:
                continue
            if seen[nidx] or data[nidx]:
                continue
            if (nx - ix) % m != 0 and (ny - iy) % m != 0:
                continue
            seen[nidx] = 1
            queue.append(nidx)
            pushes += 1
    return FillResult(
        frozenset(Point(i % w, i // w) for i in marked), touched, pushes
    )


def _fill_features(
    image: EdgeImage,
    inner: Point,
    cfg: EstimatorConfig,
    fill: FillResult,
    calibrated: float | None,
) -> Features:
    sx = sy = 0
    for p in fill.marked:
        sx += p.x
        sy += p.y
    count = len(fill.marked)
    centroid = FPoint(sx / count, sy / count)
    new_inner = recenter_inner_point(image, step_toward(image, inner, centroid), cfg)
    return Features(
        centroid=centroid,
        area=float(count),
        inner=new_inner,
        iterations=1,
        converged=True,
        work=fill.pushes,
        support=count,
        leak=fill.touched_border,
        calibrated_area=calibrated,
    )


def estimate_pixel_fill(image: EdgeImage, inner: Point, cfg: EstimatorConfig) -> Features:
    """Pixel-fill features: centroid and area of the marked free region.

    Any seed in the same free region produces the identical marked set, so
    centroid and area do not depend on where inside the projection the
    inner point sits.
    """
    return _fill_features(image, inner, cfg, pixel_fill(image, inner), None)


def estimate_grid_fill(image: EdgeImage, inner: Point, cfg: EstimatorConfig) -> Features:
    """Grid-fill features using cell size ``cfg.m``.

    ``area`` is the raw marked-grid-pixel count. ``calibrated_area``
    rescales it by m^2/(2m-1): an interior of area A contains one vertical
    and one horizontal grid line per m-band, roughly A*(2m-1)/m^2 grid
    pixels, so the rescaled count is comparable to a full pixel count.
    """
    fill = grid_fill(image, inner, cfg.m)
    calibrated = len(fill.marked) * cfg.m * cfg.m / (2 * cfg.m - 1)
    return _fill_features(image, inner, cfg, fill, calibrated)
