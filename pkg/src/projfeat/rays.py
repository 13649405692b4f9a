"""Ray casting and line stepping on the pixel grid.

All traversal in the package goes through one incremental line walk
(`_walk`): an integer error-accumulation stepper that visits exactly one
pixel per step with 8-connected moves. Rays, inner-point displacement, and
block rasterization therefore agree on which pixels a ray runs through.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .image import EdgeImage, Point


class PreconditionError(ValueError):
    """An operation was called with a pixel that violates its precondition."""


class RayHit(NamedTuple):
    """Terminal record of one cast ray.

    ``hit`` is the first edge pixel met, or the last in-bounds pixel when the
    ray left the image without meeting an edge (``hit_is_edge`` False).
    ``last_free`` is the final non-edge pixel traversed; ``length`` is the
    Euclidean distance from the origin to ``last_free``, so it measures free
    space only.
    """

    hit: Point
    last_free: Point
    length: float
    hit_is_edge: bool


def _walk(
    data: bytes,
    w: int,
    h: int,
    x0: int,
    y0: int,
    x1: int,
    y1: int,
    visited: list | None = None,
    blocks: set | None = None,
    m: int = 0,
    bw: int = 0,
) -> tuple[int, int, int, int, bool, bool]:
    """Step from (x0,y0) toward (x1,y1) until an edge, the border, or the target.

    Returns (hit_x, hit_y, free_x, free_y, hit_is_edge, reached_target).
    The caller guarantees (x0,y0) is in bounds and non-edge. When ``visited``
    is given, the flat indices of all traversed free pixels (origin included)
    are appended to it; when ``blocks`` is given, the flat ids (on the
    ``bw``-wide block grid of cell size ``m``) of every block a free pixel
    falls in are added to it.

    A one-pixel-wide probe cannot squeeze between two diagonally touching
    edge pixels: a diagonal step whose two orthogonal gate pixels are both
    edges terminates the walk on the gate the ideal line crosses first.
    """
    if visited is not None:
        visited.append(y0 * w + x0)
    last_b = -1
    if blocks is not None:
        last_b = x0 // m + bw * (y0 // m)
        blocks.add(last_b)
    dx = x1 - x0 if x1 > x0 else x0 - x1
    sx = 1 if x0 < x1 else -1
    dy = y0 - y1 if y1 > y0 else y1 - y0  # -abs
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    x, y = x0, y0
    fx, fy = x0, y0
    idx = y0 * w + x0
    wsy = sy * w
    while True:
        if x == x1 and y == y1:
            return x, y, x, y, False, True
        e2 = err + err
        move_x = e2 >= dy
        move_y = e2 <= dx
        if move_x:
            err += dy
            x += sx
            idx += sx
        if move_y:
            err += dx
            y += sy
            idx += wsy
        if x < 0 or x >= w or y < 0 or y >= h:
            return fx, fy, fx, fy, False, False
        if data[idx]:
            return x, y, fx, fy, True, False
        if move_x and move_y and data[idx - sx] and data[idx - wsy]:
            if e2 - dy >= dx - e2:
                return x, y - sy, fx, fy, True, False
            return x - sx, y, fx, fy, True, False
        fx, fy = x, y
        if visited is not None:
            visited.append(idx)
        if blocks is not None:
            b = x // m + bw * (y // m)
            if b != last_b:
                blocks.add(b)
                last_b = b


def _ray_target(x0: int, y0: int, cos_a: float, sin_a: float, span: int) -> tuple[int, int]:
    # span > image diagonal guarantees the target lies outside the raster,
    # so a ray always terminates at an edge or the border.
    return x0 + round(cos_a * span), y0 + round(sin_a * span)


def _ray(data, w, h, x0, y0, x1, y1):
    """Hot-path twin of :func:`_walk` for out-of-image targets (no tracking).

    Must step exactly like ``_walk``; the test suite pins the equivalence.
    """
    dx = x1 - x0 if x1 > x0 else x0 - x1
    sx = 1 if x0 < x1 else -1
    dy = y0 - y1 if y1 > y0 else y1 - y0
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    x, y = x0, y0
    fx, fy = x0, y0
    idx = y0 * w + x0
    wsy = sy * w
    while True:
        e2 = err + err
        move_x = e2 >= dy
        move_y = e2 <= dx
        if move_x:
            err += dy
            x += sx
            idx += sx
        if move_y:
            err += dx
            y += sy
            idx += wsy
        if x < 0 or x >= w or y < 0 or y >= h:
            return fx, fy, fx, fy, False
        if data[idx]:
            return x, y, fx, fy, True
        if move_x and move_y and data[idx - sx] and data[idx - wsy]:
            if e2 - dy >= dx - e2:
                return x, y - sy, fx, fy, True
            return x - sx, y, fx, fy, True
        fx, fy = x, y


def _ray_blocks(data, w, h, x0, y0, x1, y1, blocks, m, bw):
    """Like :func:`_ray` but records the m-blocks of traversed free pixels."""
    last_b = x0 // m + bw * (y0 // m)
    blocks.add(last_b)
    dx = x1 - x0 if x1 > x0 else x0 - x1
    sx = 1 if x0 < x1 else -1
    dy = y0 - y1 if y1 > y0 else y1 - y0
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    x, y = x0, y0
    fx, fy = x0, y0
    idx = y0 * w + x0
    wsy = sy * w
    while True:
        e2 = err + err
        move_x = e2 >= dy
        move_y = e2 <= dx
        if move_x:
            err += dy
            x += sx
            idx += sx
        if move_y:
            err += dx
            y += sy
            idx += wsy
        if x < 0 or x >= w or y < 0 or y >= h:
            return fx, fy, fx, fy, False
        if data[idx]:
            return x, y, fx, fy, True
        if move_x and move_y and data[idx - sx] and data[idx - wsy]:
            if e2 - dy >= dx - e2:
                return x, y - sy, fx, fy, True
            return x - sx, y, fx, fy, True
        fx, fy = x, y
        b = x // m + bw * (y // m)
        if b != last_b:
            blocks.add(b)
            last_b = b


def cast_ray(image: EdgeImage, origin: Point, angle: float) -> RayHit:
    """Cast a ray from ``origin`` in direction ``angle`` (radians, y-down).

    The ray stops at the first edge pixel, or at the image border with
    ``hit_is_edge`` False. An origin that is itself an edge pixel yields the
    degenerate zero-length hit at the origin.
    """
    x0, y0 = int(origin[0]), int(origin[1])
    w, h = image.width, image.height
    if not (0 <= x0 < w and 0 <= y0 < h):
        raise PreconditionError(f"ray origin ({x0},{y0}) is out of bounds")
    data = image.data
    if data[y0 * w + x0]:
        p = Point(x0, y0)
        return RayHit(p, p, 0.0, True)
    span = 2 * (w + h)
    tx, ty = _ray_target(x0, y0, math.cos(angle), math.sin(angle), span)
    hx, hy, fx, fy, is_edge = _ray(data, w, h, x0, y0, tx, ty)
    return RayHit(Point(hx, hy), Point(fx, fy), math.hypot(fx - x0, fy - y0), is_edge)


def ray_pixels(image: EdgeImage, origin: Point, angle: float) -> list[Point]:
    """The free pixels a ray runs through, origin first (diagnostic helper)."""
    x0, y0 = int(origin[0]), int(origin[1])
    w, h = image.width, image.height
    if not (0 <= x0 < w and 0 <= y0 < h):
        raise PreconditionError(f"ray origin ({x0},{y0}) is out of bounds")
    if image.data[y0 * w + x0]:
        return [Point(x0, y0)]
    span = 2 * (w + h)
    tx, ty = _ray_target(x0, y0, math.cos(angle), math.sin(angle), span)
    visited: list[int] = []
    _walk(image.data, w, h, x0, y0, tx, ty, visited)
    return [Point(i % w, i // w) for i in visited]


def step_toward(image: EdgeImage, start: Point, target) -> Point:
    """Walk from ``start`` toward ``target`` (rounded to the nearest pixel).

    Returns the last non-edge pixel reached before arriving at the target or
    meeting an edge. Never returns an edge pixel and never leaves the image.
    """
    x0, y0 = int(start[0]), int(start[1])
    w, h = image.width, image.height
    if not (0 <= x0 < w and 0 <= y0 < h):
        raise PreconditionError(f"start pixel ({x0},{y0}) is out of bounds")
    data = image.data
    if data[y0 * w + x0]:
        raise PreconditionError(f"start pixel ({x0},{y0}) is an edge pixel")
    tx, ty = round(target[0]), round(target[1])
    _, _, fx, fy, _, _ = _walk(data, w, h, x0, y0, int(tx), int(ty))
    return Point(fx, fy)


def check_inner(image: EdgeImage, inner: Point) -> None:
    """Raise unless ``inner`` is an in-bounds, non-edge pixel."""
    x, y = int(inner[0]), int(inner[1])
    if not (0 <= x < image.width and 0 <= y < image.height):
        raise PreconditionError(f"inner point ({x},{y}) is out of bounds")
    if image.data[y * image.width + x]:
        raise PreconditionError("inner point is an edge pixel")
