"""
Tests for the TOML backed configuration.
"""

from __future__ import annotations

import tomli

from src.config.app import Config


def test_defaults(monkeypatch, tmp_path):
    monkeypatch.setenv("SAVE_DIR", str(tmp_path))
    cfg = Config()
    assert cfg.lattice_radius == 8
    assert cfg.n_range == 64
    assert cfg.symbol_grid == 256
    assert cfg.r4_grid == 4096
    assert cfg.crosscheck_tol == 1e-4
    assert (cfg.ont_seed_span, cfg.ont_seed_step) == (24.0, 0.005)
    assert "save_dir" not in cfg.dump_config()
    assert not hasattr(cfg, "_user_modified_fields")


def test_save_only_writes_modified_fields(monkeypatch, tmp_path):
    monkeypatch.setenv("SAVE_DIR", str(tmp_path))
    cfg = Config()
    cfg.update({"symbol_grid": 128, "r1_tol": 1e-8, "no_such_key": 1})
    cfg.save()

    path = tmp_path / "config" / "base.toml"
    with open(path, "rb") as f:
        saved = tomli.load(f)
    assert saved["symbol_grid"] == 128
    assert saved["r1_tol"] == 1e-8
    assert "n_range" not in saved
    assert "no_such_key" not in saved

    reloaded = Config()
    assert reloaded.symbol_grid == 128
    assert reloaded.r1_tol == 1e-8
    assert reloaded.n_range == 64


def test_broken_config_file_falls_back_to_defaults(monkeypatch, tmp_path):
    monkeypatch.setenv("SAVE_DIR", str(tmp_path))
    path = tmp_path / "config" / "base.toml"
    path.parent.mkdir(parents=True)
    path.write_text("symbol_grid = [", encoding="utf-8")
    assert Config().symbol_grid == 256
