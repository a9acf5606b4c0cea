"""
种子函数的求值、Fourier 变换和范数

Fourier 约定：ĥ(p) = (1/√2π)∫e^{-ipx}h(x)dx。
"""

import dataclasses
import math
from collections.abc import Sequence
from fractions import Fraction

import numpy as np
from scipy.integrate import trapezoid

from src.exceptions import UnsupportedError
from src.seedfn.base import A, SEGMENT_KINDS, Domain, SeedFunction, SeedKind, Segment
from src.seedfn.closed_form import (
    segment_correlation,
    segment_transform_at_lattice,
    segment_transform_values,
    unit_root,
)

_PI_QUARTER = math.pi**-0.25


def _as_output(out: np.ndarray):
    return complex(out) if out.ndim == 0 else out


def evaluate(seed: SeedFunction, x):
    """在 x 处求值（标量返回 complex，数组返回同形状的复数数组）

    分段类型采用半开区间 [start, end) 约定，支撑外为 0。
    """
    x = np.asarray(x, dtype=float)

    if seed.kind in (SeedKind.PIECEWISE_CONSTANT, SeedKind.PIECEWISE_MODULATED):
        u = x / A
        out = np.zeros(x.shape, dtype=complex)
        for seg in seed.segments:
            inside = (u >= float(seg.start_a)) & (u < float(seg.end_a))
            if seg.is_modulated:
                freq = seg.mu + seg.harmonic * A / 2.0
                out += np.where(inside, seg.amplitude * np.exp(1j * freq * x), 0.0)
            else:
                out += np.where(inside, seg.amplitude, 0.0)
        return _as_output(out)

    if seed.kind is SeedKind.SEGMENT_TRANSFORM:
        return _as_output(segment_transform_values(seed.segments, x, inverse=seed.inverse))

    if seed.kind is SeedKind.GAUSSIAN:
        sigma = seed.width
        out = seed.amplitude * _PI_QUARTER / math.sqrt(sigma)
        out = out * np.exp(-((x - seed.center) ** 2) / (2.0 * sigma * sigma) + 1j * seed.mu * x)
        return _as_output(np.asarray(out, dtype=complex))

    grid = seed.grid
    re = np.interp(x, grid, seed.samples.real, left=0.0, right=0.0)
    im = np.interp(x, grid, seed.samples.imag, left=0.0, right=0.0)
    return _as_output(np.asarray(re + 1j * im, dtype=complex))


def evaluate_units(seed: SeedFunction, u) -> complex:
    """在 x = u·a 处求值，u 为有理数；分段类型与格点上的解析变换给出精确值"""
    u = Fraction(u)

    if seed.kind in (SeedKind.PIECEWISE_CONSTANT, SeedKind.PIECEWISE_MODULATED):
        total = 0.0 + 0.0j
        for seg in seed.segments:
            if seg.start_a <= u < seg.end_a:
                value = seg.amplitude * unit_root(seg.harmonic * u)
                if seg.mu != 0.0:
                    value *= complex(np.exp(1j * seg.mu * float(u) * A))
                total += value
        return total

    # x = u·a = 2u·ω0
    if seed.kind is SeedKind.SEGMENT_TRANSFORM and (2 * u).denominator == 1:
        return segment_transform_at_lattice(seed.segments, int(2 * u), inverse=seed.inverse)

    return complex(evaluate(seed, float(u) * A))


def fourier(seed: SeedFunction) -> SeedFunction:
    """闭式 Fourier 变换，返回对偶域上描述同一个 h 的种子

    位置域种子返回 ĥ（频率域）；频率域种子返回逆变换得到的 h（位置域）。

    Raises:
        UnsupportedError: 采样类型没有闭式变换
    """
    target = seed.domain.toggled()
    inverse = seed.domain is Domain.FREQUENCY

    if seed.kind in (SeedKind.PIECEWISE_CONSTANT, SeedKind.PIECEWISE_MODULATED):
        return SeedFunction(
            domain=target,
            kind=SeedKind.SEGMENT_TRANSFORM,
            segments=seed.segments,
            inverse=inverse,
            name=f"F[{seed.name}]" if seed.name else "",
        )

    if seed.kind is SeedKind.SEGMENT_TRANSFORM:
        # 变换的变换回到生成它的分段函数
        modulated = any(seg.is_modulated for seg in seed.segments)
        kind = SeedKind.PIECEWISE_MODULATED if modulated else SeedKind.PIECEWISE_CONSTANT
        name = seed.name[2:-1] if seed.name.startswith("F[") else seed.name
        return SeedFunction(domain=target, kind=kind, segments=seed.segments, name=name)

    if seed.kind is SeedKind.GAUSSIAN:
        phase = complex(np.exp(1j * seed.mu * seed.center))
        center, mu = (-seed.mu, seed.center) if inverse else (seed.mu, -seed.center)
        return SeedFunction(
            domain=target,
            kind=SeedKind.GAUSSIAN,
            center=center,
            width=1.0 / seed.width,
            amplitude=seed.amplitude * phase,
            mu=mu,
            name=seed.name,
        )

    raise UnsupportedError("Fourier transform of a sampled seed is not available", stage="seedfn")


def l2_norm_sq(seed: SeedFunction) -> float:
    """∫|h|²：符号类型用闭式，采样类型用梯形公式"""
    if seed.kind in SEGMENT_KINDS:
        return segment_correlation(seed.segments, 0, 0).real
    if seed.kind is SeedKind.GAUSSIAN:
        return abs(seed.amplitude) ** 2
    return float(trapezoid(np.abs(seed.samples) ** 2, dx=seed.grid_step))


def scaled(seed: SeedFunction, c: complex) -> SeedFunction:
    """返回 c·seed"""
    if seed.kind in SEGMENT_KINDS:
        return dataclasses.replace(seed, segments=tuple(seg.scaled(c) for seg in seed.segments))
    if seed.kind is SeedKind.GAUSSIAN:
        return dataclasses.replace(seed, amplitude=seed.amplitude * c)
    return dataclasses.replace(seed, samples=np.asarray(seed.samples) * c)


def cell_seed(coeffs: Sequence[complex], n_min: int = 0, name: str = "") -> SeedFunction:
    """由有限序列 c 构造单元支撑种子 h(s) = (1/√a)·Σ c_n e^{-isna/2}, s ∈ [0, a)

    对该种子做 extract_filter 精确返回 c。
    """
    inv_sqrt_a = 1.0 / math.sqrt(A)
    segments = tuple(
        Segment(Fraction(0), Fraction(1), complex(c) * inv_sqrt_a, harmonic=-(n_min + i))
        for i, c in enumerate(coeffs)
        if c != 0
    )
    return SeedFunction(domain=Domain.POSITION, kind=SeedKind.PIECEWISE_MODULATED, segments=segments, name=name)


def sample_seed(seed: SeedFunction, grid: np.ndarray, name: str = "") -> SeedFunction:
    """把任意种子采样到均匀网格上，得到 SAMPLED 类型"""
    grid = np.asarray(grid, dtype=float)
    step = float(grid[1] - grid[0])
    values = np.asarray(evaluate(seed, grid), dtype=complex)
    return SeedFunction(
        domain=seed.domain,
        kind=SeedKind.SAMPLED,
        grid_start=float(grid[0]),
        grid_step=step,
        samples=values,
        name=name or seed.name,
    )
