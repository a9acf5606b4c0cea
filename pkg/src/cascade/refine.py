"""
级联算法：由滤波器系数重建尺度函数 φ 与母小波 ψ

φ(x) = √2·Σ h_n·φ(2x − n)
ψ(x) = √2·Σ (−1)^{n−1}·conj(h_{−n−1})·φ(2x − n)

迭代前把滤波器平移到 n_min = 0，平移量记录在结果中；所有函数都采样在
步长 2^{-level} 的二进网格上，2x − n 仍落在网格上，无需插值。
"""

import math
from dataclasses import dataclass

import numpy as np

from src.exceptions import DivergedError, FilterTruncatedError
from src.filters import FilterSequence
from src.utils import logger

DIVERGENCE_BOUND = 1e6
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """二进网格 x_min + i·2^{-level} 上的复数采样

    shift 为滤波器的下标平移量：原始下标下的函数是 x ↦ g(x − shift)。
    """

    x_min: float
    level: int
    values: np.ndarray
    shift: int = 0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def step(self) -> float:
        return 2.0**-self.level

    @property
    def x_max(self) -> float:
        return self.x_min + (self.values.size - 1) * self.step

    @property
    def grid(self) -> np.ndarray:
        return self.x_min + self.step * np.arange(self.values.size)

    @property
    def start_index(self) -> int:
        return int(round(self.x_min * 2**self.level))

    def integral(self) -> complex:
        """矩形公式（与半开区间采样一致）"""
        return complex(np.sum(self.values) * self.step)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.step)

    def translated(self) -> "SampledFunction":
        """回到原始下标：整体平移 shift"""
        return SampledFunction(self.x_min + self.shift, self.level, self.values, shift=0)

    def to_rows(self) -> list[list[float]]:
        """CSV 行：x, re, im"""
        return [[float(x), float(v.real), float(v.imag)] for x, v in zip(self.grid, self.values)]


@dataclass(frozen=True)
class CascadeResult:
    phi: SampledFunction
    residual: float
    iterations: int

    @property
    def shift(self) -> int:
        return self.phi.shift


def _normalized_taps(f: FilterSequence) -> tuple[np.ndarray, int]:
    if f.tail:
        raise FilterTruncatedError(
            f"Filter on [{f.n_min}, {f.n_max}] is a truncated infinite sequence", stage="cascade"
        )
    g = f.trimmed()
    return g.coeffs, g.n_min


def _refine(taps: np.ndarray, phi: np.ndarray, scale: int) -> np.ndarray:
    """φ 在 [0, W] 网格上的一次细化"""
    size = phi.size
    idx = np.arange(size)
    out = np.zeros(size, dtype=complex)
    for k, tap in enumerate(taps):
        if tap == 0:
            continue
        src = 2 * idx - k * scale
        valid = (src >= 0) & (src < size)
        out[valid] += (SQRT2 * tap) * phi[src[valid]]
    return out


def cascade_scaling(f: FilterSequence, iterations: int, level: int) -> CascadeResult:
    """
    从 [0, 1) 的示性函数出发迭代细化方程

    Args:
        f: 有限支撑的滤波器
        iterations: 迭代次数（>= 1）
        level: 网格分辨率 2^{-level}

    Returns:
        CascadeResult：最后一次迭代的 φ 与最后两次迭代之差的上确界

    Raises:
        FilterTruncatedError: 滤波器是截断的无穷序列
        DivergedError: 迭代的上确界超过 1e6
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if level < 1:
        raise ValueError("level must be >= 1")

    taps, shift = _normalized_taps(f)
    scale = 2**level
    width = max(taps.size - 1, 1)
    phi = (np.arange(width * scale + 1) < scale).astype(complex)

    residual = float("inf")
    for iteration in range(1, iterations + 1):
        refined = _refine(taps, phi, scale)
        sup = float(np.max(np.abs(refined)))
        if not np.isfinite(sup) or sup > DIVERGENCE_BOUND:
            raise DivergedError(f"Cascade sup-norm {sup:.3e} exceeds {DIVERGENCE_BOUND:.0e} at iteration {iteration}")
        residual = float(np.max(np.abs(refined - phi)))
        phi = refined

    logger.debug(f"Cascade: {taps.size} taps, shift {shift}, level {level}, residual {residual:.3e}")
    total = np.sum(taps)
    if abs(total - SQRT2) > 1e-6:
        logger.warning(f"Filter sum {complex(total):.6g} differs from sqrt(2); the cascade does not conserve mass")
    return CascadeResult(
        phi=SampledFunction(x_min=0.0, level=level, values=phi, shift=shift),
        residual=residual,
        iterations=iterations,
    )


def refinement_residual(f: FilterSequence, phi: SampledFunction) -> float:
    """sup |φ − √2·Σ h_n·φ(2· − n)|"""
    taps, _ = _normalized_taps(f)
    return float(np.max(np.abs(_refine(taps, np.asarray(phi.values), 2**phi.level) - phi.values)))


def mother_wavelet(f: FilterSequence, phi: SampledFunction) -> SampledFunction:
    """在同一二进网格上直接求 ψ；复滤波器取共轭系数

    下标平移 s 只让 ψ 变号 (−1)^s，返回的 ψ 已处于原始下标（shift = 0）。
    """
    taps, shift = _normalized_taps(f)
    if shift != phi.shift:
        raise ValueError("phi was not computed from this filter")

    scale = 2**phi.level
    n_taps = taps.size - 1
    width = phi.values.size // scale
    x_start = -(n_taps + 1) * scale // 2
    size = (width + n_taps) * scale // 2 + 1

    idx = np.arange(size)
    psi = np.zeros(size, dtype=complex)
    phi_values = np.asarray(phi.values)
    for n in range(-n_taps - 1, 0):
        tap = taps[-n - 1]
        if tap == 0:
            continue
        sign = -1.0 if (n - 1) % 2 else 1.0
        # 2x − n 在 φ 网格上的下标
        src = 2 * (x_start + idx) - n * scale
        valid = (src >= 0) & (src < phi_values.size)
        psi[valid] += (SQRT2 * sign * np.conj(tap)) * phi_values[src[valid]]

    if shift % 2:
        psi = -psi
    return SampledFunction(x_min=x_start / scale, level=phi.level, values=psi)


def cross_translate_overlap(g1: SampledFunction, g2: SampledFunction, k: int) -> complex:
    """∫ g1(x)·conj(g2(x − k)) dx，两函数在同一层级的二进网格上"""
    if g1.level != g2.level:
        raise ValueError("functions must share the dyadic level")
    scale = 2**g1.level
    start1 = g1.start_index
    start2 = g2.start_index + k * scale
    lo = max(start1, start2)
    hi = min(start1 + g1.values.size, start2 + g2.values.size)
    if lo >= hi:
        return 0.0 + 0.0j
    a = g1.values[lo - start1 : hi - start1]
    b = g2.values[lo - start2 : hi - start2]
    return complex(np.sum(a * np.conj(b)) * g1.step)


def check_translate_orthonormality(g: SampledFunction, k_max: int, tol: float) -> tuple[bool, float]:
    """max_{|k|<=k_max} |∫ g(x)·conj(g(x − k)) dx − δ_{k,0}|"""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    residual = 0.0
    for k in range(-k_max, k_max + 1):
        value = cross_translate_overlap(g, g, k)
        residual = max(residual, abs(value - (1.0 if k == 0 else 0.0)))
    return residual <= tol, residual
