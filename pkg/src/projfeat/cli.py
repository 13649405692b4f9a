"""Command-line interface: scene generation, single estimates, benchmark
sweeps, and tracking simulation.

Exit codes: 0 success, 1 usage error, 2 input-data error (malformed image,
violated precondition, bad scene parameters). Every run with identical
flags and seed produces byte-identical output, except for the
``runtime_ns`` benchmark column.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .bench import load_suite, run_suite, write_csv
from .image import PgmError, Point, load_pgm, save_pgm
from .methods import METHOD_NAMES, resolve
from .oracle import OpenContourError
from .raycast import ConfigError, EstimatorConfig, Features
from .rays import PreconditionError
from .scenes import NoiseSpec, SceneError, SceneSpec, generate, inject_noise, scene_id
from .tracking import MotionSpec, simulate

_DATA_ERRORS = (PgmError, PreconditionError, ConfigError, SceneError, OpenContourError)

SIMULATE_COLUMNS = (
    "frame",
    "method",
    "n",
    "y",
    "m",
    "max_iter",
    "scene",
    "seed",
    "inner_x",
    "inner_y",
    "inside_truth",
    "centroid_x",
    "centroid_y",
    "centroid_error",
    "area_raw",
    "leak",
    "iterations",
    "converged",
    "work_counter",
)


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors by default; this CLI promises 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _point_arg(text: str) -> Point:
    try:
        x, y = text.split(",")
        return Point(int(x), int(y))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected X,Y integer pair, got {text!r}"
        ) from None


def _velocity_arg(text: str) -> tuple[int, int]:
    try:
        dx, dy = text.split(",")
        return int(dx), int(dy)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected DX,DY integer pair, got {text!r}"
        ) from None


def _add_scene_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--shape", required=True, choices=("circle", "square", "ellipse", "hand"))
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--cx", type=int, required=True)
    p.add_argument("--cy", type=int, required=True)
    p.add_argument("--radius", type=float, help="circle radius")
    p.add_argument("--half-side", type=int, help="square half side")
    p.add_argument("--semi-a", type=float, help="ellipse semi-axis a")
    p.add_argument("--semi-b", type=float, help="ellipse semi-axis b")
    p.add_argument("--palm-radius", type=float, help="hand palm radius")
    p.add_argument("--fingers", type=int, default=4, help="hand finger count")
    p.add_argument("--finger-length", type=float)
    p.add_argument("--finger-width", type=float)
    p.add_argument("--rotation", type=float, default=0.0, help="radians; ellipse and hand")


def _scene_spec(args) -> SceneSpec:
    return SceneSpec(
        shape=args.shape,
        width=args.width,
        height=args.height,
        cx=args.cx,
        cy=args.cy,
        radius=args.radius,
        half_side=args.half_side,
        semi_a=args.semi_a,
        semi_b=args.semi_b,
        palm_radius=args.palm_radius,
        fingers=args.fingers,
        finger_length=args.finger_length,
        finger_width=args.finger_width,
        rotation=args.rotation,
    )


def _add_estimator_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", required=True, choices=METHOD_NAMES)
    p.add_argument("--n", type=int, default=32)
    p.add_argument("--y", type=int, default=2)
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--max-iter", type=int, default=10)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--angle-offset", type=float, default=0.0)


def _config(args) -> EstimatorConfig:
    return EstimatorConfig(
        n=args.n,
        y=args.y,
        m=args.m,
        max_iter=args.max_iter,
        epsilon=args.epsilon,
        angle_offset=args.angle_offset,
    )


def _round3(value: float) -> float:
    return round(value, 3)


def _cmd_generate(args) -> int:
    scene = generate(_scene_spec(args))
    image = scene.image
    if args.noise_drop:
        image = inject_noise(image, NoiseSpec(args.noise_drop, args.seed))
    with open(args.out, "wb") as fh:
        fh.write(save_pgm(image))
    info = {
        "inner": [scene.inner.x, scene.inner.y],
        "fingertip": [scene.fingertip.x, scene.fingertip.y] if scene.fingertip else None,
        "centroid": [_round3(scene.truth.centroid.x), _round3(scene.truth.centroid.y)],
        "area": scene.truth.area,
        "edge_count": image.edge_count,
        "scene": scene_id(scene.spec),
    }
    print(json.dumps(info, sort_keys=True))
    return 0


def _estimate_record(method: str, cfg: EstimatorConfig, feats: Features) -> dict:
    return {
        "method": method,
        "n": cfg.n,
        "y": cfg.y,
        "m": cfg.m,
        "max_iter": cfg.max_iter,
        "epsilon": cfg.epsilon,
        "angle_offset": cfg.angle_offset,
        "inner_x": feats.inner.x,
        "inner_y": feats.inner.y,
        "centroid_x": _round3(feats.centroid.x),
        "centroid_y": _round3(feats.centroid.y),
        "area_raw": _round3(feats.area),
        "area_calibrated": _round3(feats.calibrated_area)
        if feats.calibrated_area is not None
        else None,
        "iterations": feats.iterations,
        "converged": feats.converged,
        "leak": feats.leak,
        "work_counter": feats.work,
        "support": feats.support,
    }


def _record_csv(record: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(record.keys())
    writer.writerow(
        [
            ""
            if v is None
            else ("true" if v is True else "false" if v is False else v)
            for v in record.values()
        ]
    )
    return buf.getvalue()


def _cmd_estimate(args) -> int:
    with open(args.image, "rb") as fh:
        image = load_pgm(fh.read())
    cfg = _config(args)
    feats = resolve(args.method)(image, args.inner, cfg)
    record = _estimate_record(args.method, cfg, feats)
    if args.format == "json":
        print(json.dumps(record, sort_keys=True))
    else:
        sys.stdout.write(_record_csv(record))
    return 0


def _cmd_bench(args) -> int:
    suite = load_suite(args.suite)
    rows = run_suite(suite, jobs=args.jobs)
    write_csv(rows, args.out)
    print(f"{len(rows)} rows -> {args.out}")
    return 0


def _cmd_simulate(args) -> int:
    spec = _scene_spec(args)
    motion = MotionSpec(
        scene=spec,
        frames=args.frames,
        velocity=args.velocity,
        drop_count=args.noise_drop,
        master_seed=args.seed,
    )
    cfg = _config(args)
    report = simulate(motion, args.method, cfg)
    sid = scene_id(spec)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SIMULATE_COLUMNS)
        for rec in report.records:
            f = rec.features
            writer.writerow(
                [
                    rec.frame,
                    args.method,
                    cfg.n,
                    cfg.y,
                    cfg.m,
                    cfg.max_iter,
                    sid,
                    args.seed,
                    rec.inner.x,
                    rec.inner.y,
                    "true" if rec.inside_truth else "false",
                    f"{f.centroid.x:.3f}" if f else "",
                    f"{f.centroid.y:.3f}" if f else "",
                    f"{rec.centroid_error:.3f}" if rec.centroid_error is not None else "",
                    f"{f.area:.3f}" if f else "",
                    ("true" if f.leak else "false") if f else "",
                    f.iterations if f else "",
                    ("true" if f.converged else "false") if f else "",
                    f.work if f else "",
                ]
            )
    if args.dump_frames:
        os.makedirs(args.dump_frames, exist_ok=True)
        base = generate(spec)
        from .tracking import frame_seed  # local: only needed for dumps

        for rec in report.records:
            img = base.image.translate(rec.frame * args.velocity[0], rec.frame * args.velocity[1])
            if args.noise_drop:
                img = inject_noise(img, NoiseSpec(args.noise_drop, frame_seed(args.seed, rec.frame)))
            path = os.path.join(args.dump_frames, f"frame_{rec.frame:04d}.pgm")
            with open(path, "wb") as fh:
                fh.write(save_pgm(img))
    print(json.dumps({"frames": motion.frames, "survival": report.survival}, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="projfeat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="rasterize a synthetic scene to a PGM")
    _add_scene_flags(p)
    p.add_argument("--noise-drop", type=int, default=0, help="edge pixels to delete")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("estimate", help="run one estimator on an edge image")
    _add_estimator_flags(p)
    p.add_argument("--image", required=True, help="input PGM (P5)")
    p.add_argument("--inner", type=_point_arg, required=True, help="inner point X,Y")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("bench", help="run a benchmark suite to CSV")
    p.add_argument("--suite", required=True, help="suite TOML")
    p.add_argument("--out", required=True, help="output CSV")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("simulate", help="track a translating scene across frames")
    _add_scene_flags(p)
    _add_estimator_flags(p)
    p.add_argument("--velocity", type=_velocity_arg, required=True, help="DX,DY px/frame")
    p.add_argument("--frames", type=int, required=True)
    p.add_argument("--noise-drop", type=int, default=0, help="edge pixels deleted per frame")
    p.add_argument("--seed", type=int, default=0, help="master seed for per-frame noise")
    p.add_argument("--out", required=True, help="per-frame CSV")
    p.add_argument("--dump-frames", help="directory for per-frame PGM dumps")
    p.set_defaults(func=_cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
