"""Ray-casting feature estimators.

Four variants share one iterative engine:

- ``estimate_n_ray``: one fan of n rays from the inner point.
- ``estimate_iterative_n_ray``: the fan repeated, re-centering the inner
  point, until the centroid and inner-point adjustments fall below epsilon.
- ``estimate_ny_ray``: each iteration fans out again from where the previous
  level's rays stopped, y levels deep (up to n^y final rays).
- ``estimate_ny_raster``: the cascade additionally marks every m-by-m block
  any ray runs through; the block set persists across iterations and the
  centroid/area come from the blocks.

All estimators are pure functions of (image, inner, config).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .image import EdgeImage, FPoint, Point
from .rays import _ray, _ray_blocks, _ray_target, check_inner, step_toward

# Cascades error out before casting anything when n**y exceeds this.
RAY_BUDGET = 65536


class ConfigError(ValueError):
    """Estimator configuration violates a bound."""


@dataclass(frozen=True)
class EstimatorConfig:
    """Shared estimator parameters.

    ``n`` rays per fan, ``y`` cascade depth, ``m`` block/grid cell size in
    pixels, ``max_iter`` iteration cap, ``epsilon`` convergence tolerance in
    pixels, ``angle_offset`` orientation of ray 0 in radians.
    """

    n: int = 32
    y: int = 2
    m: int = 8
    max_iter: int = 10
    epsilon: float = 0.5
    angle_offset: float = 0.0

    def __post_init__(self):
        if self.n < 3:
            raise ConfigError(f"n must be >= 3, got {self.n}")
        if self.y < 1:
            raise ConfigError(f"y must be >= 1, got {self.y}")
        if self.m < 1:
            raise ConfigError(f"m must be >= 1, got {self.m}")
        if self.max_iter < 1:
            raise ConfigError(f"max_iter must be >= 1, got {self.max_iter}")
        if not self.epsilon > 0:
            raise ConfigError(f"epsilon must be > 0, got {self.epsilon}")


@dataclass(frozen=True)
class Features:
    """Estimation result.

    ``area`` is the method's own measure: ray-length sum for the ray fans,
    selected-block count times m^2 for the block raster, marked-pixel count
    for the fills (``calibrated_area`` additionally rescales the grid-fill
    count for cross-method comparison). ``work`` counts rays cast for the
    ray methods and queue pushes for the fills. ``support`` is the number of
    primitive elements averaged into the centroid (hits, blocks, or pixels).
    ``leak`` reports whether the estimating mechanism reached the image
    border: a fill touching it, or a ray leaving the image without meeting
    an edge. ``block_counts`` records the cumulative selected-block count
    after each iteration (block-raster method only).
    """

    centroid: FPoint
    area: float
    inner: Point
    iterations: int
    converged: bool
    work: int
    support: int
    leak: bool
    calibrated_area: float | None = None
    block_counts: tuple[int, ...] | None = None


def _ray_table(cfg: EstimatorConfig) -> tuple[tuple[float, float], ...]:
    step = math.tau / cfg.n
    return tuple(
        (math.cos(cfg.angle_offset + k * step), math.sin(cfg.angle_offset + k * step))
        for k in range(cfg.n)
    )


def _check_epsilon(image: EdgeImage, cfg: EstimatorConfig) -> None:
    if not cfg.epsilon < min(image.width, image.height):
        raise ConfigError(
            f"epsilon {cfg.epsilon} must be smaller than the image's "
            f"shortest side {min(image.width, image.height)}"
        )


def _recenter(image: EdgeImage, p: Point, trig, span: int) -> Point:
    data, w, h = image.data, image.width, image.height
    px, py = p
    sx = sy = 0
    for c, s in trig:
        tx, ty = _ray_target(px, py, c, s, span)
        hx, hy, _, _, _ = _ray(data, w, h, px, py, tx, ty)
        sx += hx
        sy += hy
    k = len(trig)
    return step_toward(image, p, (sx / k, sy / k))


def recenter_inner_point(image: EdgeImage, p: Point, cfg: EstimatorConfig) -> Point:
    """Re-center ``p`` in its free area: cast n rays, step toward the hit average."""
    check_inner(image, p)
    return _recenter(image, Point(*p), _ray_table(cfg), 2 * (image.width + image.height))


def cascade_levels(
    image: EdgeImage, origin: Point, cfg: EstimatorConfig
) -> list[list[Point]]:
    """Origins of each cascade level for one pass (diagnostic helper).

    Level 0 is ``[origin]``; level k holds the deduplicated stop positions
    (last free pixels) of level k-1's rays, which is where level k's fans
    are cast from. The list has at most ``cfg.y`` entries and ends early if
    every ray stopped on its own origin.
    """
    check_inner(image, origin)
    _check_budget(cfg)
    trig = _ray_table(cfg)
    data, w, h = image.data, image.width, image.height
    span = 2 * (w + h)
    levels = [[Point(*origin)]]
    for _ in range(cfg.y - 1):
        nxt: dict[tuple[int, int], None] = {}
        for ox, oy in levels[-1]:
            for c, s in trig:
                tx, ty = _ray_target(ox, oy, c, s, span)
                _, _, fx, fy, _ = _ray(data, w, h, ox, oy, tx, ty)
                if fx != ox or fy != oy:
                    nxt.setdefault((fx, fy))
        if not nxt:
            break
        levels.append([Point(x, y) for x, y in nxt])
    return levels


def _check_budget(cfg: EstimatorConfig) -> None:
    if cfg.n**cfg.y > RAY_BUDGET:
        raise ConfigError(
            f"n**y = {cfg.n}**{cfg.y} exceeds the ray budget of {RAY_BUDGET}"
        )


def _estimate(
    image: EdgeImage,
    inner: Point,
    cfg: EstimatorConfig,
    levels: int,
    max_iter: int,
    block_size: int | None = None,
) -> Features:
    check_inner(image, inner)
    _check_epsilon(image, cfg)
    if levels > 1 and cfg.n**levels > RAY_BUDGET:
        raise ConfigError(
            f"n**y = {cfg.n}**{levels} exceeds the ray budget of {RAY_BUDGET}"
        )
    trig = _ray_table(cfg)
    data, w, h = image.data, image.width, image.height
    span = 2 * (w + h)
    n = cfg.n
    eps = cfg.epsilon
    # geometric series: the deduped cascade can never cast more than this
    iter_ray_cap = n * (n**levels - 1) // (n - 1)

    m = block_size
    blocks: set[int] | None = set() if m is not None else None
    bw = -(-w // m) if m is not None else 0
    block_counts: list[int] = []

    cur = Point(*inner)
    prev_cx, prev_cy = float(cur.x), float(cur.y)
    work = 0
    leak = False
    converged = False
    iterations = 0
    centroid = FPoint(prev_cx, prev_cy)
    area = 0.0
    support = 0

    for iterations in range(1, max_iter + 1):
        origins: list[tuple[int, int]] = [(cur.x, cur.y)]
        rays_this_iter = 0
        hsx = hsy = hits = 0
        len_sum = 0.0
        for level in range(levels):
            is_final = level == levels - 1
            nxt: dict[tuple[int, int], None] = {}
            hsx = hsy = hits = 0
            len_sum = 0.0
            for ox, oy in origins:
                for c, s in trig:
                    tx, ty = _ray_target(ox, oy, c, s, span)
                    if blocks is None:
                        hx, hy, fx, fy, is_edge = _ray(data, w, h, ox, oy, tx, ty)
                    else:
                        hx, hy, fx, fy, is_edge = _ray_blocks(
                            data, w, h, ox, oy, tx, ty, blocks, m, bw
                        )
                    rays_this_iter += 1
                    if not is_edge:
                        leak = True
                    hsx += hx
                    hsy += hy
                    hits += 1
                    len_sum += math.hypot(fx - ox, fy - oy)
                    if not is_final and (fx != ox or fy != oy):
                        nxt.setdefault((fx, fy))
            if is_final or not nxt:
                break  # an empty level ends the cascade; the last fan stands
            origins = list(nxt)
        assert rays_this_iter <= iter_ray_cap
        work += rays_this_iter

        if blocks is not None:
            block_counts.append(len(blocks))
            bsx = bsy = 0
            for b in blocks:
                bsx += b % bw
                bsy += b // bw
            nb = len(blocks)
            half = (m - 1) / 2.0
            centroid = FPoint(m * bsx / nb + half, m * bsy / nb + half)
            area = float(nb * m * m)
            support = nb
        else:
            centroid = FPoint(hsx / hits, hsy / hits)
            area = len_sum
            support = hits

        nxt_inner = step_toward(image, cur, centroid)
        moved_c = math.hypot(centroid.x - prev_cx, centroid.y - prev_cy)
        moved_i = math.hypot(nxt_inner.x - cur.x, nxt_inner.y - cur.y)
        prev_cx, prev_cy = centroid.x, centroid.y
        cur = nxt_inner
        if moved_c < eps and moved_i < eps:
            converged = True
            break

    final_inner = _recenter(image, cur, trig, span)
    work += n
    return Features(
        centroid=centroid,
        area=area,
        inner=final_inner,
        iterations=iterations,
        converged=converged,
        work=work,
        support=support,
        leak=leak,
        block_counts=tuple(block_counts) if blocks is not None else None,
    )


def estimate_n_ray(image: EdgeImage, inner: Point, cfg: EstimatorConfig) -> Features:
    """Single fan of n rays: centroid from the hit average, area from ray lengths."""
    return _estimate(image, inner, cfg, levels=1, max_iter=1)


def estimate_iterative_n_ray(
    image: EdgeImage, inner: Point, cfg: EstimatorConfig
) -> Features:
    """n-ray fan iterated until centroid and inner-point movement drop below epsilon."""
    return _estimate(image, inner, cfg, levels=1, max_iter=cfg.max_iter)


def estimate_ny_ray(image: EdgeImage, inner: Point, cfg: EstimatorConfig) -> Features:
    """Iterative cascade: n rays recast from every stop position, y levels deep.

    Only the final level's hits enter the centroid average and the
    ray-length area, so dense isolated pockets weigh in proportion to the
    rays that end there.
    """
    return _estimate(image, inner, cfg, levels=cfg.y, max_iter=cfg.max_iter)


def estimate_ny_raster(image: EdgeImage, inner: Point, cfg: EstimatorConfig) -> Features:
    """Cascade plus block rasterization.

    Every m-by-m block (grid anchored at the image origin) that any ray runs
    through is selected; blocks stay selected across iterations, so the
    selected set only grows and the iteration provably reaches a fixed
    point. Centroid is the mean of block centers, area is block count times
    m^2.
    """
    return _estimate(image, inner, cfg, levels=cfg.y, max_iter=cfg.max_iter, block_size=cfg.m)
