"""Benchmark sweep runner: TOML suite in, deterministic metrics CSV out.

A suite declares scenes, noise levels, methods with parameter lists, and
seeds; the runner expands the Cartesian product into one row per
combination. Every column except ``runtime_ns`` is reproducible
byte-for-byte across runs with the same suite and seeds.
"""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Sequence

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .methods import METHOD_NAMES, resolve
from .oracle import (
    MetricsRow,
    centroid_error,
    comparable_area,
    measure_runtime_ns,
    stability_sweep,
)
from .raycast import EstimatorConfig
from .scenes import NoiseSpec, SceneSpec, generate, inject_noise
from .tracking import splitmix64

CSV_COLUMNS = (
    "method",
    "n",
    "y",
    "m",
    "max_iter",
    "scene",
    "seed",
    "inner_x",
    "inner_y",
    "centroid_x",
    "centroid_y",
    "centroid_error",
    "area_raw",
    "area_comparable",
    "inner_stability",
    "leak",
    "iterations",
    "converged",
    "work_counter",
    "runtime_ns",
)

_PARAM_KEYS = ("n", "y", "m", "max_iter", "epsilon", "angle_offset")
_SCENE_KEYS = {
    "id",
    "shape",
    "width",
    "height",
    "cx",
    "cy",
    "radius",
    "half_side",
    "semi_a",
    "semi_b",
    "palm_radius",
    "fingers",
    "finger_length",
    "finger_width",
    "rotation",
    "noise_drops",
}

# Mixed into a row's seed to derive the stability-sweep sampling stream,
# keeping it independent of the noise stream that uses the seed directly.
STABILITY_SALT = 0x57AB


def load_suite(path: str) -> dict:
    """Read and validate a suite file; returns the raw table."""
    with open(path, "rb") as fh:
        suite = tomllib.load(fh)
    return validate_suite(suite)


def validate_suite(suite: dict) -> dict:
    if not suite.get("scenes"):
        raise ValueError("suite declares no [[scenes]]")
    if not suite.get("methods"):
        raise ValueError("suite declares no [[methods]]")
    if not suite.get("seeds"):
        raise ValueError("suite declares no seeds")
    for scene in suite["scenes"]:
        unknown = set(scene) - _SCENE_KEYS
        if unknown:
            raise ValueError(f"unknown scene keys: {sorted(unknown)}")
        if "id" not in scene or "shape" not in scene:
            raise ValueError("every scene needs an 'id' and a 'shape'")
    for method in suite["methods"]:
        if method.get("name") not in METHOD_NAMES:
            raise ValueError(
                f"unknown method {method.get('name')!r}; "
                f"expected one of {', '.join(METHOD_NAMES)}"
            )
        unknown = set(method) - set(_PARAM_KEYS) - {"name"}
        if unknown:
            raise ValueError(f"unknown method keys: {sorted(unknown)}")
    return suite


def _as_list(value) -> list:
    return list(value) if isinstance(value, (list, tuple)) else [value]


def expand_rows(suite: dict) -> list[dict]:
    """Cartesian expansion: scenes x noise x methods x params x seeds."""
    stability_points = int(suite.get("stability_points", 5))
    rows: list[dict] = []
    for scene in suite["scenes"]:
        drops = _as_list(scene.get("noise_drops", [0]))
        scene_fields = {
            k: v for k, v in scene.items() if k not in ("id", "noise_drops")
        }
        for drop in drops:
            for method in suite["methods"]:
                axes = [
                    _as_list(method[k]) for k in _PARAM_KEYS if k in method
                ]
                keys = [k for k in _PARAM_KEYS if k in method]
                for combo in itertools.product(*axes):
                    params = dict(zip(keys, combo))
                    for seed in suite["seeds"]:
                        rows.append(
                            {
                                "scene_id": scene["id"],
                                "scene": scene_fields,
                                "drop": int(drop),
                                "method": method["name"],
                                "params": params,
                                "seed": int(seed),
                                "stability_points": stability_points,
                            }
                        )
    return rows


def run_row(row: dict) -> MetricsRow:
    """Compute one metrics row; pure given the row dict."""
    spec = SceneSpec(**row["scene"])
    scene = generate(spec)
    image = scene.image
    if row["drop"]:
        image = inject_noise(image, NoiseSpec(row["drop"], row["seed"]))
    cfg = EstimatorConfig(**row["params"])
    estimator = resolve(row["method"])
    inner = scene.inner

    features = estimator(image, inner, cfg)
    runtime = measure_runtime_ns(lambda: estimator(image, inner, cfg))

    pool = sorted(scene.truth.interior)
    rng = np.random.default_rng(splitmix64(row["seed"] ^ STABILITY_SALT))
    k = min(row["stability_points"], len(pool))
    picks = rng.choice(len(pool), size=k, replace=False)
    seeds = [pool[i] for i in sorted(int(i) for i in picks)]
    stability = stability_sweep(image, seeds, estimator, cfg, scene.truth)

    return MetricsRow(
        method=row["method"],
        n=cfg.n,
        y=cfg.y,
        m=cfg.m,
        max_iter=cfg.max_iter,
        scene=row["scene_id"],
        seed=row["seed"],
        inner_x=inner.x,
        inner_y=inner.y,
        centroid_x=features.centroid.x,
        centroid_y=features.centroid.y,
        centroid_error=centroid_error(features, scene.truth),
        area_raw=features.area,
        area_comparable=comparable_area(
            row["method"], features.area, cfg, support=features.support
        ),
        inner_stability=stability.inner_stability,
        leak=features.leak,
        iterations=features.iterations,
        converged=features.converged,
        work_counter=features.work,
        runtime_ns=runtime,
    )


def run_suite(suite: dict, jobs: int = 1) -> list[MetricsRow]:
    """Run every expanded row; row order is deterministic regardless of jobs."""
    rows = expand_rows(validate_suite(suite))
    if jobs <= 1:
        return [run_row(r) for r in rows]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_row, rows))


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def rows_to_csv(rows: Sequence[MetricsRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([format_value(getattr(row, col)) for col in CSV_COLUMNS])
    return buf.getvalue()


def write_csv(rows: Sequence[MetricsRow], path: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(rows_to_csv(rows))
