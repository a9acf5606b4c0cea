"""
Unit tests for the CSV / JSON report writers.
"""

from __future__ import annotations

import json

import numpy as np
import pytest

from src.filters import FilterSequence
from src.utils.report_io import provenance, write_csv, write_json, write_table


def test_numpy_scalars_are_written_as_plain_numbers(tmp_path):
    path = write_csv(tmp_path / "t.csv", ["x", "n", "ok"], [[np.float64(0.5), np.int64(3), np.bool_(True)]])
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines == ["x,n,ok", "0.5,3,true"]


def test_complex_cells_are_rejected(tmp_path):
    with pytest.raises(TypeError):
        write_csv(tmp_path / "t.csv", ["z"], [[np.complex128(1 + 2j)]])


def test_json_accepts_numpy_scalars(tmp_path):
    path = write_json(tmp_path / "r.json", {"n": np.int64(7), "ok": np.bool_(False), "x": np.float64(0.25)})
    assert json.loads(path.read_text(encoding="utf-8")) == {"n": 7, "ok": False, "x": 0.25}


def test_json_rejects_unknown_objects(tmp_path):
    with pytest.raises(TypeError):
        write_json(tmp_path / "r.json", {"obj": object()})


def test_filter_rows_load_back(tmp_path):
    f = FilterSequence(-2, [0.1 + 0.2j, -0.3, 1.0 / 3.0, 0.0, 2.5j])
    path = write_table(tmp_path / "filter", ["n", "re", "im"], f.to_rows())
    text = path.read_text(encoding="utf-8")
    assert "np." not in text

    rows = np.loadtxt(path, delimiter=",", skiprows=1)
    np.testing.assert_array_equal(rows[:, 0], np.arange(-2, 3))
    np.testing.assert_array_equal(rows[:, 1] + 1j * rows[:, 2], f.coeffs)


def test_json_table_records(tmp_path):
    path = write_table(tmp_path / "t", ["n", "re"], [[np.int64(1), np.float64(0.5)]], fmt="json")
    assert path.suffix == ".json"
    assert json.loads(path.read_text(encoding="utf-8")) == [{"n": 1, "re": 0.5}]


def test_unknown_table_format(tmp_path):
    with pytest.raises(ValueError):
        write_table(tmp_path / "t", ["n"], [[1]], fmt="xml")


def test_provenance_block_omits_missing_seed():
    block = provenance("cascade", None, None, level=6)
    assert block == {"command": "cascade", "settings": {"level": 6}}
