"""
Unit tests for the Gram symbol, the f coefficients and the orthonormalization trick.
"""

from __future__ import annotations

import numpy as np
import pytest

from src.exceptions import SingularSymbolError, UnsupportedError
from src.filters import check_r1, extract_filter
from src.ortho import (
    FCoefficients,
    default_ont_grid,
    f_coefficients,
    inverse_sqrt,
    ont_filter,
    ont_seed,
    slice_weight_coefficients,
    symbol,
)
from src.overlap import check_monc, check_onc, overlap_lattice
from src.seedfn import LatticeParams, cell_seed, evaluate, fourier, sample_seed, scaled

# (Σ_l e^{-π l²})²
GAUSSIAN_SYMBOL_AT_ORIGIN = 1.1803406


def _pipeline(seed, grid: int = 64, L: int = 8):
    lat = overlap_lattice(seed, LatticeParams(L=L))
    return lat, symbol(lat, grid, grid)


def test_row1_symbol_is_constant(preset):
    _, sym = _pipeline(preset("row1"))
    np.testing.assert_allclose(sym.values, 1.0, atol=1e-14)
    assert sym.imag_residue <= 1e-14


def test_gaussian_symbol_at_origin(gaussian_seed):
    _, sym = _pipeline(gaussian_seed)
    assert sym.values[0, 0] == pytest.approx(GAUSSIAN_SYMBOL_AT_ORIGIN, abs=1e-7)
    assert sym.max_value == pytest.approx(GAUSSIAN_SYMBOL_AT_ORIGIN, abs=1e-7)
    assert 0.0 < sym.min_value < 1.0
    meta = sym.metadata()
    assert meta["n1"] == 64 and meta["L"] == 8
    assert meta["singular_eps"] == pytest.approx(1e-8 * sym.max_value)


def test_symbol_grid_must_cover_lattice(preset):
    lat = overlap_lattice(preset("row1"), LatticeParams(L=8))
    with pytest.raises(ValueError):
        symbol(lat, 8, 64)


def test_scaled_onc_seed_gives_half_delta(preset):
    _, sym = _pipeline(scaled(preset("row1"), 2.0))
    f = f_coefficients(sym)
    assert f.get(0, 0) == pytest.approx(0.5, abs=1e-14)
    others = f.values.copy()
    others[f.L, f.L] = 0
    assert np.max(np.abs(others)) <= 1e-14


@pytest.mark.parametrize("name", ["row3", "row7", "haar"])
def test_ont_is_identity_on_onc_seeds(preset, name):
    seed = preset(name)
    lat, sym = _pipeline(seed)
    H = ont_filter(seed, lat, sym, 64)
    h = extract_filter(seed, 64)
    assert np.max(np.abs(H.coeffs - h.coeffs)) <= 1e-10


def test_ont_rescales_monc_seed(preset):
    seed = scaled(preset("row3"), 2.0)
    lat, sym = _pipeline(seed)
    ok, sigma = check_monc(lat, 1e-10)
    assert ok and sigma == pytest.approx(4.0)
    H = ont_filter(seed, lat, sym, 64)
    h = extract_filter(seed, 64)
    assert np.max(np.abs(H.coeffs - h.coeffs / np.sqrt(sigma))) <= 1e-8


def test_ont_orthonormalizes_gaussian(gaussian_seed):
    lat, sym = _pipeline(gaussian_seed, grid=256)
    H = ont_filter(gaussian_seed, lat, sym, 64)
    ok, residual = check_r1(H, 4, 1e-6)
    assert ok, residual
    before = check_r1(extract_filter(gaussian_seed, 64), 4, 1e-6)
    assert not before[0]


def test_f_coefficients_for_gaussian(gaussian_seed):
    _, sym = _pipeline(gaussian_seed, grid=128)
    f = f_coefficients(sym)
    f00 = f.get(0, 0)
    assert f00.real > 0
    assert abs(f00.imag) <= 1e-12
    # the inverse root is even in p, so f is symmetric
    assert f.get(1, 0) == pytest.approx(f.get(-1, 0), abs=1e-12)


def test_zero_seed_is_singular(preset):
    _, sym = _pipeline(scaled(preset("row3"), 0.0))
    with pytest.raises(SingularSymbolError, match="zero seed"):
        inverse_sqrt(sym)
    with pytest.raises(SingularSymbolError):
        f_coefficients(sym)


def test_vanishing_symbol_is_singular(preset):
    _, sym = _pipeline(preset("haar_cell"))
    assert sym.min_value == pytest.approx(1.0, abs=1e-12)

    # S(p) = 1 + cos(p1) vanishes at p1 = π
    seed = cell_seed([1.0 / np.sqrt(2.0), 0.0, 1.0 / np.sqrt(2.0)])
    lat, sym = _pipeline(seed)
    assert sym.min_value == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(SingularSymbolError, match="Riesz"):
        inverse_sqrt(sym)
    with pytest.raises(SingularSymbolError):
        ont_filter(seed, lat, sym, 16)


def test_slice_weight_for_onc_seed(preset):
    _, sym = _pipeline(preset("row1"))
    w_hat = slice_weight_coefficients(sym)
    assert w_hat[0] == pytest.approx(1.0, abs=1e-14)
    assert max((abs(w) for k, w in w_hat.items() if k != 0), default=0.0) <= 1e-14


def test_ont_seed_with_single_term(preset):
    seed = preset("row3")
    grid = np.linspace(-1.0, 5.0, 601)
    same = ont_seed(seed, {(0, 0): 1.0}, grid)
    half = ont_seed(seed, {(0, 0): 0.5}, grid)
    np.testing.assert_allclose(same.samples, evaluate(seed, grid), atol=1e-15)
    np.testing.assert_allclose(half.samples, 0.5 * np.asarray(evaluate(seed, grid)), atol=1e-15)
    assert same.name == "ont[row3]"


def test_ont_seed_satisfies_onc_for_gaussian(gaussian_seed):
    _, sym = _pipeline(gaussian_seed, grid=128)
    f = f_coefficients(sym)
    H = ont_seed(gaussian_seed, f, default_ont_grid(24.0, 0.01), rel_cut=1e-14)
    ok, residual = check_onc(overlap_lattice(H, LatticeParams(L=2)), 1e-4)
    assert ok, residual


def test_ont_seed_of_frequency_seed_uses_inverse_transform(preset):
    grid = np.linspace(-2.0, 2.0, 41)
    H = ont_seed(preset("row5"), {(0, 0): 1.0}, grid)
    assert H.domain.value == "position"
    assert np.max(np.abs(H.samples)) > 0


def test_sampled_frequency_seed_is_unsupported(preset, gaussian_seed):
    spectrum = sample_seed(fourier(gaussian_seed), np.linspace(-12.0, 12.0, 2401))
    with pytest.raises(UnsupportedError):
        ont_seed(spectrum, {(0, 0): 1.0}, np.linspace(-1, 1, 11))
    lat, sym = _pipeline(gaussian_seed)
    with pytest.raises(UnsupportedError):
        ont_filter(spectrum, lat, sym, 8)


def test_ont_filter_on_sampled_seed(gaussian_seed):
    lat, sym = _pipeline(gaussian_seed, grid=128)
    sampled = sample_seed(gaussian_seed, np.linspace(-14.0, 14.0, 5601))
    symbolic = ont_filter(gaussian_seed, lat, sym, 8)
    numeric = ont_filter(sampled, lat, sym, 8)
    assert np.max(np.abs(numeric.coeffs - symbolic.coeffs)) <= 1e-3


def test_f_coefficient_rows():
    f = FCoefficients.from_mapping({(0, 0): 1.0, (1, -1): 0.25j})
    assert f.L == 1
    rows = f.to_rows()
    assert {"n1": 1, "n2": -1, "re": 0.0, "im": 0.25} in rows
    assert len(rows) == 2
    assert len(list(f.items(rel_cut=0.5))) == 1


def test_default_ont_grid_is_symmetric():
    grid = default_ont_grid(2.0, 0.5)
    assert grid.tolist() == [-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0]
