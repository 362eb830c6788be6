"""
Author: kreinframes contributors
Date: 2026-10-18 17:10:02
LastEditTime: 2026-10-18 17:10:02
Description: tests for the command line front end
FilePath: /kreinframes/tests/test_cli.py
"""

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from kreinframes import STUDY_COLUMNS, __version__, read_report, write_frame_file
from kreinframes.cli import ScenarioConfig, main, run


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def jframe_file(tmp_path):
    """a J-frame of C^3 with J = diag(1, 1, -1)"""
    path = tmp_path / "jframe.txt"
    vectors = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [0, 0, 2]]
    write_frame_file(path, np.diag([1.0, 1.0, -1.0]), vectors)
    return path


@pytest.fixture
def neutral_file(tmp_path):
    path = tmp_path / "neutral.txt"
    write_frame_file(path, np.diag([1.0, -1.0]), [[1, 1], [1, -1]])
    return path


def _invoke(runner, *args):
    return runner.invoke(main, [str(arg) for arg in args])


def test_certify_success(runner, jframe_file, tmp_path):
    out = tmp_path / "out"
    result = _invoke(runner, "--scenario", "certify", "--input", jframe_file, "--out", out)
    assert result.exit_code == 0, result.output
    report = read_report(out / "certificate.yml")
    cert = report["certificate"]
    assert cert["holds"] is True
    assert cert["definition"] == "def13"
    assert cert["A"] == pytest.approx(1.0)
    assert cert["B"] == pytest.approx(5.0)


def test_certify_negative_verdict(runner, neutral_file, tmp_path):
    out = tmp_path / "out"
    result = _invoke(runner, "--scenario", "certify", "--input", neutral_file, "--out", out)
    assert result.exit_code == 2
    assert read_report(out / "certificate.yml")["certificate"]["holds"] is False


@pytest.mark.parametrize(
    "args",
    [
        ["--scenario", "certify"],
        ["--scenario", "certify", "--input", "does-not-exist.txt"],
        ["--scenario", "mystery"],
        ["--scenario", "neutral_demo", "--definition", "def99"],
        ["--scenario", "transport", "--input", "x.txt"],
    ],
)
def test_errors_exit_one(runner, tmp_path, args):
    result = _invoke(runner, *args, "--out", tmp_path / "out")
    assert result.exit_code == 1


def test_malformed_frame_file_exits_one(runner, tmp_path):
    path = tmp_path / "broken.txt"
    path.write_text("dim 2\nJ\n1 0\n")
    result = _invoke(runner, "--scenario", "certify", "--input", path, "--out", tmp_path / "out")
    assert result.exit_code == 1


def test_reconstruct_is_deterministic(runner, jframe_file, tmp_path):
    outs = [tmp_path / "a", tmp_path / "b"]
    for out in outs:
        result = _invoke(
            runner, "--scenario", "reconstruct", "--input", jframe_file, "--out", out, "--seed", 7, "--probes", 5
        )
        assert result.exit_code == 0, result.output
    first, second = ((out / "residuals.csv").read_bytes() for out in outs)
    assert first == second
    table = pd.read_csv(outs[0] / "residuals.csv")
    assert list(table.columns) == ["formula", "vector_id", "residual"]
    assert table["residual"].max() <= 1e-8
    assert {"eq33_dual", "eq33_coeff", "eq36_hilbert1", "tilde_dual"} <= set(table["formula"])


def test_reconstruct_tolerance_breach(runner, jframe_file, tmp_path):
    result = _invoke(
        runner, "--scenario", "reconstruct", "--input", jframe_file, "--out", tmp_path / "out", "--tol-recon", 0
    )
    assert result.exit_code == 2


def test_flags_win_over_config(runner, jframe_file, tmp_path):
    config = tmp_path / "config.yml"
    config.write_text(f"scenario: reconstruct\ninput: {jframe_file}\nseed: 5\nprobes: 3\n")
    out = tmp_path / "out"
    result = _invoke(runner, "--config", config, "--probes", 4, "--out", out)
    assert result.exit_code == 0, result.output
    report = read_report(out / "certificate.yml")
    assert report["seed"] == 5
    assert report["probes"] == 4
    assert pd.read_csv(out / "residuals.csv")["vector_id"].max() == 3


def test_unknown_config_key_exits_one(runner, tmp_path):
    config = tmp_path / "config.yml"
    config.write_text("scenario: neutral_demo\ncolour: blue\n")
    assert _invoke(runner, "--config", config, "--out", tmp_path / "out").exit_code == 1


def test_transport(runner, tmp_path):
    path = tmp_path / "basis.txt"
    write_frame_file(path, np.diag([1.0, 1.0, -1.0, -1.0]), np.eye(4))
    out = tmp_path / "out"
    result = _invoke(runner, "--scenario", "transport", "--input", path, "--q-schedule", "0.5,1.0", "--out", out)
    assert result.exit_code == 0, result.output
    report = read_report(out / "certificate.yml")
    assert report["roundtrip_residual"] <= 1e-12
    assert report["jframe_bounds"] == pytest.approx([1.0, 1.0])
    assert (out / "jframe.txt").is_file()

    too_long = _invoke(runner, "--scenario", "transport", "--input", path, "--q-schedule", "1,1,1", "--out", out)
    assert too_long.exit_code == 1


def test_l2_example(runner, tmp_path):
    out = tmp_path / "out"
    result = _invoke(runner, "--scenario", "l2_example", "--out", out)
    assert result.exit_code == 0, result.output
    for name in ("l2_gram.csv", "l2_family.txt", "l2_samples.nc", "certificate.yml"):
        assert (out / name).is_file()
    report = read_report(out / "certificate.yml")
    assert report["certificate"]["A"] == pytest.approx(2 / 15, rel=1e-8)
    assert report["certificate"]["B"] == pytest.approx(2.0, rel=1e-8)


def test_truncation_study(runner, tmp_path):
    out = tmp_path / "out"
    result = _invoke(runner, "--scenario", "truncation_study", "--sizes", "2,4,8", "--out", out)
    assert result.exit_code == 0, result.output
    study = pd.read_csv(out / "study.csv")
    assert list(study.columns) == STUDY_COLUMNS
    assert study["size"].tolist() == [2, 4, 8]
    np.testing.assert_allclose(study["A_def11"], np.exp(-0.25 * study["size"]), rtol=1e-8)
    meta = read_report(out / "study_meta.yml")
    assert meta["q_schedule"] == [0.25 * k for k in range(1, 9)]
    assert meta["uncertified_sizes"] == []


def test_neutral_demo(runner, tmp_path):
    out = tmp_path / "out"
    assert _invoke(runner, "--scenario", "neutral_demo", "--out", out).exit_code == 2
    report = read_report(out / "certificate.yml")
    assert report["hypermaximal_neutral"] is True
    assert report["def11"]["holds"] is True
    assert report["def11"]["A"] == pytest.approx(1.0)
    assert report["def11"]["B"] == pytest.approx(1.0)
    assert report["def11"]["tight"] is True
    assert "M₋ trivial" in report["certificate"]["messages"]
    assert (out / "neutral_family.txt").is_file()
    result = _invoke(runner, "--scenario", "neutral_demo", "--definition", "def11", "--out", tmp_path / "o2")
    assert result.exit_code == 0


def test_run_with_config_object(tmp_path):
    config = ScenarioConfig.from_sources(overrides={"scenario": "neutral_demo", "out": str(tmp_path), "neutral": {"k": 1}})
    assert run(config) == 2


def test_version(runner):
    result = _invoke(runner, "--version")
    assert result.exit_code == 0
    assert __version__ in result.output
