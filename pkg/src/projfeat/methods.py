"""Name registry for the six estimators, shared by CLI, benchmark, and simulator."""

from __future__ import annotations

from typing import Callable

from .image import EdgeImage, Point
from .raycast import (
    EstimatorConfig,
    Features,
    estimate_iterative_n_ray,
    estimate_n_ray,
    estimate_ny_raster,
    estimate_ny_ray,
)
from .filling import estimate_grid_fill, estimate_pixel_fill

Estimator = Callable[[EdgeImage, Point, EstimatorConfig], Features]

ESTIMATORS: dict[str, Estimator] = {
    "nray": estimate_n_ray,
    "iter-nray": estimate_iterative_n_ray,
    "ny-ray": estimate_ny_ray,
    "ny-raster": estimate_ny_raster,
    "pixel-fill": estimate_pixel_fill,
    "grid-fill": estimate_grid_fill,
}

METHOD_NAMES = tuple(ESTIMATORS)


def resolve(method: str | Estimator) -> Estimator:
    """Look up an estimator by CLI name; callables pass through."""
    if callable(method):
        return method
    try:
        return ESTIMATORS[method]
    except KeyError:
        raise ValueError(
            f"unknown method {method!r}; expected one of {', '.join(METHOD_NAMES)}"
        ) from None
