"""Object-projection feature estimation on binary edge images.

Given an edge image and a point inside an object's projection, every
estimator here returns the projection's centroid, an area measure, and an
updated inner point for the next frame. Four ray-casting variants, an
exhaustive pixel fill, and a grid-restricted fill are provided, together
with synthetic scenes, an independent ground-truth oracle, edge-dropout
noise, a tracking simulator, and a benchmark harness.
"""

from .image import EdgeImage, FPoint, PgmError, Point, load_pgm, save_pgm
from .rays import PreconditionError, RayHit, cast_ray, ray_pixels, step_toward
from .raycast import (
    ConfigError,
    EstimatorConfig,
    Features,
    cascade_levels,
    estimate_iterative_n_ray,
    estimate_n_ray,
    estimate_ny_raster,
    estimate_ny_ray,
    recenter_inner_point,
)
from .filling import FillResult, estimate_grid_fill, estimate_pixel_fill, grid_fill, pixel_fill
from .oracle import (
    GroundTruth,
    MetricsRow,
    OpenContourError,
    StabilityResult,
    centroid_error,
    comparable_area,
    compute_ground_truth,
    local_free_width,
    measure_runtime_ns,
    stability_sweep,
)
from .methods import ESTIMATORS, METHOD_NAMES, resolve
from .scenes import (
    NoiseSpec,
    Scene,
    SceneError,
    SceneSpec,
    generate,
    inject_noise,
    scene_id,
)
from .tracking import FrameRecord, MotionSpec, TrackReport, frame_seed, simulate, splitmix64
from .bench import CSV_COLUMNS, expand_rows, load_suite, run_row, run_suite, rows_to_csv, write_csv

__version__ = "0.1.0"

__all__ = [
    "CSV_COLUMNS",
    "ConfigError",
    "ESTIMATORS",
    "EdgeImage",
    "EstimatorConfig",
    "FPoint",
    "Features",
    "FillResult",
    "FrameRecord",
    "GroundTruth",
    "METHOD_NAMES",
    "MetricsRow",
    "MotionSpec",
    "NoiseSpec",
    "OpenContourError",
    "PgmError",
    "Point",
    "PreconditionError",
    "RayHit",
    "Scene",
    "SceneError",
    "SceneSpec",
    "StabilityResult",
    "TrackReport",
    "cascade_levels",
    "cast_ray",
    "centroid_error",
    "comparable_area",
    "compute_ground_truth",
    "estimate_grid_fill",
    "estimate_iterative_n_ray",
    "estimate_n_ray",
    "estimate_ny_raster",
    "estimate_ny_ray",
    "estimate_pixel_fill",
    "expand_rows",
    "frame_seed",
    "generate",
    "grid_fill",
    "inject_noise",
    "load_pgm",
    "load_suite",
    "local_free_width",
    "measure_runtime_ns",
    "pixel_fill",
    "ray_pixels",
    "recenter_inner_point",
    "resolve",
    "rows_to_csv",
    "run_row",
    "run_suite",
    "save_pgm",
    "scene_id",
    "simulate",
    "splitmix64",
    "stability_sweep",
    "step_toward",
    "write_csv",
]
