"""
Unit tests for seed functions: evaluation, closed-form transforms, presets and spec files.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import quad, trapezoid

from src.exceptions import SeedSpecError, UnsupportedError
from src.seedfn import (
    A,
    Domain,
    LatticeParams,
    SeedFunction,
    SeedKind,
    SeedPresetFactory,
    Segment,
    evaluate,
    evaluate_units,
    fourier,
    l2_norm_sq,
    load_seed_spec,
    parse_seed_spec,
    resolve_seed,
    sample_seed,
    scaled,
    seed_digest,
)

PI_QUARTER = math.pi**-0.25
TABLE_PRESETS = ["row1", "row2_corrected", "row3", "row4", "row5", "row6_corrected", "row7", "row8"]


def test_lattice_spacing_squares_to_four_pi():
    params = LatticeParams()
    assert params.a * params.a == pytest.approx(4.0 * math.pi, abs=1e-14)
    assert params.L == 8
    assert list(params.indices())[0] == -8


@pytest.mark.parametrize("kwargs", [{"L": 0}, {"a": 2.0}])
def test_lattice_params_rejects_invalid(kwargs):
    with pytest.raises(SeedSpecError):
        LatticeParams(**kwargs)


def test_eval_row1_mid_cell(preset):
    assert evaluate(preset("row1"), A / 2.0) == pytest.approx(0.53112596, abs=1e-8)


def test_eval_half_open_and_outside(preset):
    row1 = preset("row1")
    assert evaluate(row1, 0.0) == pytest.approx(1.0 / math.sqrt(A))
    assert evaluate(row1, A) == 0
    assert evaluate(row1, -0.1) == 0
    values = evaluate(row1, np.array([-1.0, 1.0, 10.0]))
    assert values.shape == (3,)
    assert values[0] == 0 and values[2] == 0


def test_eval_gaussian_at_origin(gaussian_seed):
    assert evaluate(gaussian_seed, 0.0) == pytest.approx(0.7511255, abs=1e-7)


def test_evaluate_units_is_exact_on_lattice(preset):
    row2 = preset("row2_corrected")
    # e^{-i·a/2}/√a
    expected = complex(np.exp(-0.5j * A)) / math.sqrt(A)
    assert evaluate_units(row2, Fraction(1, 2)) == pytest.approx(expected, abs=1e-15)
    assert evaluate_units(preset("row4"), Fraction(1)) == 0


def test_gaussian_is_self_dual(gaussian_seed):
    spectrum = fourier(gaussian_seed)
    assert spectrum.domain is Domain.FREQUENCY
    p = np.linspace(-4.0, 4.0, 17)
    np.testing.assert_allclose(evaluate(spectrum, p), PI_QUARTER * np.exp(-0.5 * p**2), atol=1e-15)


def test_shifted_modulated_gaussian_transform_matches_quadrature():
    seed = SeedFunction(
        domain=Domain.POSITION, kind=SeedKind.GAUSSIAN, center=0.5, width=1.3, mu=0.7, amplitude=0.8 - 0.6j
    )
    spectrum = fourier(seed)
    for p in (-1.2, 0.0, 0.4, 2.5):

        def integrand(x, part):
            value = complex(evaluate(seed, x)) * np.exp(-1j * p * x) / math.sqrt(2.0 * math.pi)
            return value.real if part == 0 else value.imag

        re = quad(integrand, -20, 20, args=(0,), limit=200)[0]
        im = quad(integrand, -20, 20, args=(1,), limit=200)[0]
        assert complex(evaluate(spectrum, p)) == pytest.approx(complex(re, im), abs=1e-10)


def test_fourier_round_trip_returns_same_function(gaussian_seed, preset):
    back = fourier(fourier(gaussian_seed))
    x = np.linspace(-3, 3, 13)
    np.testing.assert_allclose(evaluate(back, x), evaluate(gaussian_seed, x), atol=1e-14)

    row3 = preset("row3")
    again = fourier(fourier(row3))
    assert again.kind is SeedKind.PIECEWISE_CONSTANT
    assert again.segments == row3.segments


def test_row1_transform_closed_form(preset):
    spectrum = fourier(preset("row1"))
    assert spectrum.kind is SeedKind.SEGMENT_TRANSFORM
    assert complex(evaluate(spectrum, 0.0)) == pytest.approx(math.sqrt(A / (2.0 * math.pi)), abs=1e-12)
    for p in (0.3, -1.0, 2.7):
        expected = (1.0 - np.exp(-1j * p * A)) / (1j * p) / math.sqrt(2.0 * math.pi * A)
        assert complex(evaluate(spectrum, p)) == pytest.approx(complex(expected), abs=1e-12)


@pytest.mark.parametrize("name", ["row1", "row2_corrected", "row3", "gaussian", "e1"])
def test_transform_at_zero_is_scaled_integral(preset, name):
    h = preset(name)
    grid = np.linspace(-20.0, 20.0, 400001)
    integral = trapezoid(evaluate(h, grid), grid)
    spectrum = fourier(h)
    # 分段函数在网格上有跳变，梯形误差 ~ 步长
    assert complex(evaluate(spectrum, 0.0)) == pytest.approx(integral / math.sqrt(2.0 * math.pi), abs=1e-3)


@pytest.mark.parametrize("name", ["row1", "row7", "gaussian"])
def test_unit_norms(preset, name):
    assert l2_norm_sq(preset(name)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("name", [*TABLE_PRESETS, "gaussian", "e1", "e2", "haar_cell"])
def test_parseval_for_symbolic_kinds(preset, name):
    seed = preset(name)
    assert l2_norm_sq(fourier(seed)) == pytest.approx(l2_norm_sq(seed), abs=1e-12)


def test_parseval_against_dense_quadrature(preset):
    spectrum = fourier(preset("row1"))
    p = np.linspace(-4000.0, 4000.0, 800001)
    assert trapezoid(np.abs(evaluate(spectrum, p)) ** 2, p) == pytest.approx(1.0, abs=1e-3)


def test_zero_amplitude_seed_has_zero_transform(preset):
    zero = scaled(preset("row3"), 0.0)
    assert zero.is_zero
    assert np.all(evaluate(fourier(zero), np.linspace(-5, 5, 11)) == 0)
    assert l2_norm_sq(zero) == 0.0


def test_sampled_seed_has_no_closed_transform(gaussian_seed):
    sampled = sample_seed(gaussian_seed, np.linspace(-8, 8, 161))
    assert sampled.kind is SeedKind.SAMPLED
    assert l2_norm_sq(sampled) == pytest.approx(1.0, abs=1e-8)
    with pytest.raises(UnsupportedError):
        fourier(sampled)


def test_segment_endpoints_stay_rational():
    seg = Segment("1/3", "2/3", 1.0)
    assert seg.start_a == Fraction(1, 3)
    assert seg.end_a - seg.start_a == Fraction(1, 3)


@pytest.mark.parametrize(
    "segments",
    [
        (Segment(0, "1/2", 1.0), Segment("1/4", 1, 1.0)),
        (Segment(0, 1, 1.0, mu=0.5),),
    ],
)
def test_invalid_piecewise_constant_segments(segments):
    with pytest.raises(SeedSpecError):
        SeedFunction(domain=Domain.POSITION, kind=SeedKind.PIECEWISE_CONSTANT, segments=segments)


def test_segment_requires_start_before_end():
    with pytest.raises(SeedSpecError):
        Segment(1, 1, 1.0)


def test_gaussian_rejects_non_positive_width():
    with pytest.raises(SeedSpecError):
        SeedFunction(domain=Domain.POSITION, kind=SeedKind.GAUSSIAN, width=0.0)


def test_presets_cover_all_rows():
    available = SeedPresetFactory.get_available_presets()
    for name in [*TABLE_PRESETS, "row2_literal", "row6_literal", "haar", "gaussian", "e1", "e2", "haar_cell"]:
        assert name in available
        assert SeedPresetFactory.is_preset_supported(name)


def test_unknown_preset_raises():
    with pytest.raises(SeedSpecError, match="Unknown preset"):
        SeedPresetFactory.create("row9")


def test_parse_seed_spec_piecewise():
    seed = parse_seed_spec(
        {
            "domain": "position",
            "kind": "piecewise_constant",
            "segments": [{"start_a": "0", "end_a": "1/2", "re": math.sqrt(2.0 / A)}],
        }
    )
    assert seed.segments[0].end_a == Fraction(1, 2)
    assert seed_digest(seed) == seed_digest(parse_seed_spec(seed_to_dict_spec(seed)))
    assert seed_digest(seed) != seed_digest(SeedPresetFactory.create("row3"))


def seed_to_dict_spec(seed: SeedFunction) -> dict:
    seg = seed.segments[0]
    return {
        "domain": seed.domain.value,
        "kind": seed.kind.value,
        "segments": [{"start_a": str(seg.start_a), "end_a": str(seg.end_a), "re": seg.amplitude.real}],
    }


def test_parse_seed_spec_sampled_grid():
    seed = parse_seed_spec(
        {"domain": "position", "kind": "sampled", "grid": [0.0, 0.5, 1.0], "samples_re": [0.0, 1.0, 0.0]}
    )
    assert seed.grid_step == 0.5
    assert complex(evaluate(seed, 0.25)) == pytest.approx(0.5)


@pytest.mark.parametrize(
    "data",
    [
        {"domain": "position", "kind": "piecewise_constant", "segments": [{"start_a": "0", "end_a": "x"}]},
        {"domain": "position", "kind": "gaussian", "unknown": 1},
        {"domain": "momentum", "kind": "gaussian"},
        {"domain": "position", "kind": "sampled", "grid": [0.0, 0.5, 2.0], "samples_re": [0.0, 1.0, 0.0]},
        {"domain": "position", "kind": "segment_transform"},
    ],
)
def test_parse_seed_spec_rejects_malformed(data):
    with pytest.raises(SeedSpecError):
        parse_seed_spec(data)


def test_load_seed_spec_file(tmp_path):
    path = tmp_path / "gauss.json"
    path.write_text(json.dumps({"domain": "position", "kind": "gaussian", "center": 0.25}), encoding="utf-8")
    seed = load_seed_spec(path)
    assert seed.center == 0.25
    assert resolve_seed(str(path)).center == 0.25


def test_load_seed_spec_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(SeedSpecError):
        load_seed_spec(path)
    with pytest.raises(SeedSpecError):
        load_seed_spec(tmp_path / "missing.json")


def test_resolve_preset():
    assert resolve_seed("preset:row5").domain is Domain.FREQUENCY
