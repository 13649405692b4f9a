"""CLI surface: subcommands, output formats, exit codes, determinism."""

from __future__ import annotations

import csv
import io
import json

import pytest

from projfeat import compute_ground_truth, load_pgm
from projfeat.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def gen_circle(tmp_path, capsys, name="c.pgm", **extra):
    args = [
        "generate", "--shape", "circle", "--width", "101", "--height", "101",
        "--cx", "50", "--cy", "50", "--radius", "30", "--out", str(tmp_path / name),
    ]
    for k, v in extra.items():
        args += [f"--{k.replace('_', '-')}", str(v)]
    code, out, err = run_cli(capsys, *args)
    assert code == 0, err
    return tmp_path / name, json.loads(out)


def test_generate_writes_pgm_and_reports_inner(tmp_path, capsys):
    path, info = gen_circle(tmp_path, capsys)
    img = load_pgm(path.read_bytes())
    assert img.width == 101
    assert info["inner"] == [50, 50]
    assert info["fingertip"] is None
    truth = compute_ground_truth(img, (50, 50))
    assert info["area"] == truth.area


def test_generate_is_byte_identical_across_runs(tmp_path, capsys):
    a, _ = gen_circle(tmp_path, capsys, "a.pgm")
    b, _ = gen_circle(tmp_path, capsys, "b.pgm")
    assert a.read_bytes() == b.read_bytes()


def test_generate_hand_reports_fingertip(tmp_path, capsys):
    code, out, err = run_cli(
        capsys,
        "generate", "--shape", "hand", "--width", "121", "--height", "121",
        "--cx", "60", "--cy", "60", "--palm-radius", "20", "--fingers", "4",
        "--finger-length", "18", "--finger-width", "12", "--rotation", "-1.5707963",
        "--out", str(tmp_path / "h.pgm"),
    )
    assert code == 0, err
    info = json.loads(out)
    assert info["fingertip"] is not None


def test_estimate_pixel_fill_matches_oracle(tmp_path, capsys):
    path, info = gen_circle(tmp_path, capsys)
    code, out, err = run_cli(
        capsys, "estimate", "--method", "pixel-fill",
        "--image", str(path), "--inner", "50,50",
    )
    assert code == 0, err
    record = json.loads(out)
    assert record["area_raw"] == info["area"]
    assert record["method"] == "pixel-fill"


def test_estimate_formats_carry_identical_values(tmp_path, capsys):
    path, _ = gen_circle(tmp_path, capsys)
    args = ["estimate", "--method", "grid-fill", "--image", str(path),
            "--inner", "50,50", "--m", "8"]
    code, out_json, _ = run_cli(capsys, *args, "--format", "json")
    assert code == 0
    code, out_csv, _ = run_cli(capsys, *args, "--format", "csv")
    assert code == 0
    record = json.loads(out_json)
    header, row = list(csv.reader(io.StringIO(out_csv)))
    as_csv = dict(zip(header, row))
    assert set(as_csv) == set(record)
    for key, value in record.items():
        text = as_csv[key]
        if value is None:
            assert text == ""
        elif isinstance(value, bool):
            assert text == ("true" if value else "false")
        elif isinstance(value, str):
            assert text == value
        else:
            assert float(text) == pytest.approx(float(value))


def test_estimate_edge_inner_exits_2(tmp_path, capsys):
    path, _ = gen_circle(tmp_path, capsys)
    code, _, err = run_cli(
        capsys, "estimate", "--method", "pixel-fill",
        "--image", str(path), "--inner", "80,50",
    )
    assert code == 2
    assert "inner point is an edge pixel" in err


def test_estimate_malformed_image_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.pgm"
    bad.write_bytes(b"P5\n3 3\n254\n" + bytes(9))
    code, _, err = run_cli(
        capsys, "estimate", "--method", "nray", "--image", str(bad), "--inner", "1,1"
    )
    assert code == 2
    assert "error" in err


def test_missing_image_exits_2(capsys):
    code, _, err = run_cli(
        capsys, "estimate", "--method", "nray", "--image", "/nonexistent.pgm",
        "--inner", "1,1",
    )
    assert code == 2


def test_usage_errors_exit_1(capsys):
    assert run_cli(capsys, "estimate", "--method", "bogus", "--image", "x",
                   "--inner", "1,1")[0] == 1
    assert run_cli(capsys, "estimate", "--method", "nray", "--image", "x",
                   "--inner", "nope")[0] == 1
    assert run_cli(capsys, "nonsense")[0] == 1
    assert run_cli(capsys, "bench", "--suite")[0] == 1


def test_scene_that_does_not_fit_exits_2(tmp_path, capsys):
    code, _, err = run_cli(
        capsys, "generate", "--shape", "circle", "--width", "41", "--height", "41",
        "--cx", "20", "--cy", "20", "--radius", "25", "--out", str(tmp_path / "x.pgm"),
    )
    assert code == 2
    assert "margin" in err


SUITE_TOML = """\
seeds = [1, 2]
stability_points = 3

[[scenes]]
id = "c14"
shape = "circle"
width = 61
height = 51
cx = 30
cy = 25
radius = 14
noise_drops = [0, 1]

[[methods]]
name = "nray"
n = [8, 16]

[[methods]]
name = "grid-fill"
m = 8
"""


def test_bench_subcommand_writes_deterministic_csv(tmp_path, capsys):
    suite = tmp_path / "suite.toml"
    suite.write_text(SUITE_TOML)
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli(capsys, "bench", "--suite", str(suite), "--out", str(out1))[0] == 0
    assert run_cli(capsys, "bench", "--suite", str(suite), "--out", str(out2))[0] == 0

    def drop_runtime(text):
        return ["," .join(line.split(",")[:-1]) for line in text.splitlines()]

    assert drop_runtime(out1.read_text()) == drop_runtime(out2.read_text())
    header = out1.read_text().splitlines()[0].split(",")
    assert header[-1] == "runtime_ns"


def test_simulate_writes_frames_and_summary(tmp_path, capsys):
    out = tmp_path / "track.csv"
    dump = tmp_path / "frames"
    code, stdout, err = run_cli(
        capsys, "simulate", "--shape", "circle", "--width", "161", "--height", "63",
        "--cx", "31", "--cy", "31", "--radius", "30", "--velocity", "2,0",
        "--frames", "10", "--method", "grid-fill", "--m", "8",
        "--out", str(out), "--dump-frames", str(dump),
    )
    assert code == 0, err
    summary = json.loads(stdout.splitlines()[-1])
    assert summary == {"frames": 10, "survival": 10}
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 10
    assert rows[0]["inside_truth"] == "true"
    assert rows[3]["frame"] == "3"
    dumped = sorted(p.name for p in dump.iterdir())
    assert dumped[0] == "frame_0000.pgm"
    assert len(dumped) == 10
    frame3 = load_pgm((dump / "frame_0003.pgm").read_bytes())
    assert frame3.edge_count > 0
