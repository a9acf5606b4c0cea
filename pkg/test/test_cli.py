"""
Integration tests for the command line: exit codes, report files and determinism.
"""

from __future__ import annotations

import json
import math

import pytest

from src.cli import RunConfig, app

pytestmark = pytest.mark.integration


def _run(runner, *args: str):
    return runner.invoke(app, list(args))


def _load(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_analyze_row1_fails_r3(runner, tmp_path):
    result = _run(runner, "analyze", "--seed", "preset:row1", "--out", str(tmp_path))
    assert result.exit_code == 2, result.output

    report = _load(tmp_path / "relevance.json")
    assert report["onc"]["holds"] is True
    assert report["monc"] == {"holds": True, "sigma": pytest.approx(1.0)}
    assert report["r1"]["pass"] is True
    assert report["r3"]["pass"] is False
    assert report["r3"]["deviation"] == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-12)
    assert report["provenance"]["seed"] == "preset:row1"
    assert len(report["provenance"]["seed_md5"]) == 32

    header = (tmp_path / "overlap.csv").read_text(encoding="utf-8").splitlines()[0]
    assert header == "l1,l2,re,im,abs"
    filter_text = (tmp_path / "filter.csv").read_text(encoding="utf-8")
    assert filter_text.splitlines()[0] == "n,re,im"
    assert "np." not in filter_text


def test_analyze_haar_passes(runner, tmp_path):
    result = _run(runner, "analyze", "--seed", "preset:haar", "--out", str(tmp_path), "--format", "json")
    assert result.exit_code == 0, result.output
    rows = _load(tmp_path / "filter.json")
    taps = {row["n"]: row["re"] for row in rows if abs(row["re"]) > 1e-12}
    assert taps == {-1: pytest.approx(1 / math.sqrt(2.0)), 0: pytest.approx(1 / math.sqrt(2.0))}
    assert (tmp_path / "overlap.json").exists()
    assert _load(tmp_path / "relevance.json")["all_pass"] is True


def test_analyze_gaussian_records_failed_onc(runner, tmp_path):
    result = _run(runner, "analyze", "--seed", "preset:gaussian", "--out", str(tmp_path), "--l-max", "4")
    assert result.exit_code == 2, result.output
    report = _load(tmp_path / "relevance.json")
    assert report["onc"]["holds"] is False
    assert report["onc"]["residual"] == pytest.approx(math.exp(-math.pi), abs=1e-12)
    assert report["monc"]["sigma"] is None


def test_analyze_rejects_malformed_spec(runner, tmp_path):
    spec = tmp_path / "bad.json"
    spec.write_text('{"domain": "position", "kind": "piecewise_constant", "segments": [', encoding="utf-8")
    result = _run(runner, "analyze", "--seed", str(spec), "--out", str(tmp_path / "out"))
    assert result.exit_code == 1
    assert "SeedSpecError" in result.output


def test_analyze_rejects_unknown_format(runner, tmp_path):
    result = _run(runner, "analyze", "--seed", "preset:row1", "--out", str(tmp_path), "--format", "xml")
    assert result.exit_code == 1
    assert "ValidationError" in result.output


def test_ont_orthonormalizes_gaussian(runner, tmp_path):
    result = _run(runner, "ont", "--seed", "preset:gaussian", "--out", str(tmp_path))
    assert result.exit_code in (0, 2), result.output

    report = _load(tmp_path / "ont_relevance.json")
    assert report["onc"] is False
    assert report["provenance"] == _load(tmp_path / "f_coefficients.json")["provenance"]
    assert report["r1"]["residual"] <= 1e-6

    coeffs = _load(tmp_path / "f_coefficients.json")
    assert coeffs["symbol"]["min"] > 0
    origin = [c for c in coeffs["coefficients"] if c["n1"] == 0 and c["n2"] == 0][0]
    assert origin["re"] > 0
    assert (tmp_path / "ont_filter.csv").exists()

    assert report["provenance"]["seed"] == "preset:gaussian"
    assert report["ont_seed"] == {"span": 24.0, "step": 0.005, "nodes": 9601}
    assert report["vi2"] is None
    assert report["vi3_min"] > 0
    lines = (tmp_path / "ont_seed.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x,re,im"
    assert len(lines) == 1 + 9601
    assert lines[1].split(",")[0] == "-24.0"


def test_ont_on_onc_seed_notes_identity(runner, tmp_path):
    result = _run(runner, "ont", "--seed", "preset:row7", "--out", str(tmp_path))
    assert result.exit_code in (0, 2), result.output
    notes = _load(tmp_path / "ont_relevance.json")["notes"]
    assert any("H_n = h_n" in note for note in notes)


def test_ont_zero_seed_is_singular(runner, tmp_path):
    spec = tmp_path / "zero.json"
    spec.write_text(json.dumps({"domain": "position", "kind": "gaussian", "amplitude_re": 0.0}), encoding="utf-8")
    result = _run(runner, "ont", "--seed", str(spec), "--out", str(tmp_path / "out"))
    assert result.exit_code == 1
    assert "SingularSymbolError" in result.output


def test_cascade_haar_coefficients(runner, tmp_path):
    c = repr(1.0 / math.sqrt(2.0))
    result = _run(runner, "cascade", "--coeffs", f"{c},{c}", "--out", str(tmp_path), "--level", "6")
    assert result.exit_code == 0, result.output

    report = _load(tmp_path / "orthonormality.json")
    assert report["phi"]["translates"]["pass"] is True
    assert report["psi"]["phi_cross"]["pass"] is True
    assert report["phi"]["integral"]["re"] == pytest.approx(1.0, abs=1e-12)
    lines = (tmp_path / "phi.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x,re,im"
    assert len(lines) == 1 + 2**6 + 1


def test_cascade_from_filter_csv(runner, tmp_path):
    assert _run(runner, "analyze", "--seed", "preset:haar", "--out", str(tmp_path)).exit_code == 0
    result = _run(runner, "cascade", "--filter", str(tmp_path / "filter.csv"), "--out", str(tmp_path / "c"))
    assert result.exit_code == 0, result.output
    report = _load(tmp_path / "c" / "orthonormality.json")
    assert report["filter"]["shift"] == -1


def test_cascade_diverges(runner, tmp_path):
    result = _run(runner, "cascade", "--coeffs", "2,2", "--iterations", "20", "--out", str(tmp_path))
    assert result.exit_code == 1
    assert "DivergedError" in result.output


def test_cascade_rejects_truncated_filter(runner, tmp_path):
    result = _run(runner, "cascade", "--seed", "preset:row3", "--out", str(tmp_path))
    assert result.exit_code == 1
    assert "FilterTruncatedError" in result.output


def test_cascade_needs_exactly_one_source(runner, tmp_path):
    result = _run(runner, "cascade", "--seed", "preset:haar", "--coeffs", "1,1", "--out", str(tmp_path))
    assert result.exit_code == 1
    assert "SeedSpecError" in result.output


@pytest.mark.slow
def test_crosscheck_single_cell(runner, tmp_path):
    result = _run(runner, "crosscheck", "--l-max", "0", "--out", str(tmp_path))
    assert result.exit_code == 0, result.output
    report = _load(tmp_path / "crosscheck.json")
    assert len(report["rows"]) == 3
    assert report["max_error"] <= 1e-4
    assert report["pass"] is True


def test_crosscheck_indicator_seed_fails(runner, tmp_path):
    args = ["crosscheck", "--seed", "preset:row1", "--model", "ex2", "--l-max", "0"]
    result = _run(runner, *args, "--out", str(tmp_path))
    assert result.exit_code == 1
    assert "QuadratureDivergenceError" in result.output


def test_crosscheck_unknown_model(runner, tmp_path):
    result = _run(runner, "crosscheck", "--model", "ex7", "--out", str(tmp_path))
    assert result.exit_code == 1


def test_presets_listing(runner):
    result = _run(runner, "presets")
    assert result.exit_code == 0
    assert "preset:row1" in result.output
    assert "preset:gaussian" in result.output


@pytest.mark.parametrize(
    "args, files",
    [
        (["analyze", "--seed", "preset:row3"], ["overlap.csv", "filter.csv", "relevance.json"]),
        (
            ["ont", "--seed", "preset:gaussian", "--l-max", "4", "--grid", "64"],
            ["f_coefficients.json", "ont_filter.csv", "ont_seed.csv"],
        ),
        (["cascade", "--seed", "preset:row7", "--level", "5"], ["phi.csv", "psi.csv", "orthonormality.json"]),
    ],
)
def test_reruns_are_byte_identical(runner, tmp_path, args, files):
    first, second = tmp_path / "first", tmp_path / "second"
    code_a = _run(runner, *args, "--out", str(first)).exit_code
    code_b = _run(runner, *args, "--out", str(second)).exit_code
    assert code_a == code_b
    assert code_a in (0, 2)
    for name in files:
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_run_config_validation(tmp_path):
    run = RunConfig(command="analyze", out_dir=tmp_path / "reports")
    assert run.out_dir.is_dir()
    assert "out_dir" not in run.settings()
    assert run.tolerances().r1_tol == run.r1_tol
    with pytest.raises(ValueError):
        RunConfig(command="analyze", out_dir=tmp_path, r1_tol=0.0)
