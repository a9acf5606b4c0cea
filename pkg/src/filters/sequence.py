"""
滤波器系数序列与从种子提取系数

h_n = (1/√a)·∫ h(s)·e^{i·s·n·a/2} ds，频率域种子直接取 h_n = √(2π/a)·ĥ(−a·n/2)。
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy.integrate import trapezoid

from src.seedfn import A, OMEGA0, Domain, SeedFunction, SeedKind, evaluate, evaluate_units, fourier
from src.seedfn.closed_form import modulated_integral
from src.utils import logger

TAIL_EPS = 1e-12
_SQRT_2PI_OVER_A = math.sqrt(2.0 * math.pi / A)


class Provenance(str, Enum):
    EXTRACTED = "extracted"
    ONT = "ont"
    MANUAL = "manual"


@dataclass(frozen=True, eq=False)
class FilterSequence:
    """下标窗口 [n_min, n_max] 上的复系数 h_n

    tail 为 True 表示这是截断的无穷序列（窗口两端仍有非零系数）。
    """

    n_min: int
    coeffs: np.ndarray
    provenance: Provenance = Provenance.MANUAL
    tail: bool = False

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("Filter window must be a nonempty 1D sequence")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "n_min", int(self.n_min))
        object.__setattr__(self, "provenance", Provenance(self.provenance))

    @classmethod
    def truncated(cls, n_min: int, coeffs, provenance: Provenance) -> "FilterSequence":
        """窗口截断得到的序列：两端各看最外两个系数（奇偶子列可能整体为零）"""
        coeffs = np.asarray(coeffs, dtype=complex)
        edge = np.concatenate([coeffs[:2], coeffs[-2:]])
        return cls(n_min, coeffs, provenance, tail=bool(np.max(np.abs(edge)) > TAIL_EPS))

    @property
    def n_max(self) -> int:
        return self.n_min + self.coeffs.size - 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    @property
    def radius(self) -> int:
        return max(abs(self.n_min), abs(self.n_max))

    def get(self, n: int) -> complex:
        if self.n_min <= n <= self.n_max:
            return complex(self.coeffs[n - self.n_min])
        return 0.0 + 0.0j

    def window(self, n_min: int, n_max: int) -> np.ndarray:
        """取 [n_min, n_max] 上的系数，窗口外补零"""
        return np.array([self.get(n) for n in range(n_min, n_max + 1)], dtype=complex)

    def trimmed(self, rel_tol: float = 1e-14) -> "FilterSequence":
        """去掉两端可以忽略的系数；全零序列保留单个 0"""
        scale = float(np.max(np.abs(self.coeffs)))
        keep = np.nonzero(np.abs(self.coeffs) > rel_tol * scale)[0] if scale > 0 else np.array([], dtype=int)
        if keep.size == 0:
            return FilterSequence(0, [0.0], self.provenance, tail=False)
        lo, hi = int(keep[0]), int(keep[-1])
        return FilterSequence(self.n_min + lo, self.coeffs[lo : hi + 1], self.provenance, tail=self.tail)

    def shifted(self, m: int) -> "FilterSequence":
        """下标平移 h_n → h_{n+m}"""
        return FilterSequence(self.n_min - m, self.coeffs, self.provenance, tail=self.tail)

    def to_rows(self) -> list[list]:
        """CSV 行：n, re, im"""
        return [[int(n), float(c.real), float(c.imag)] for n, c in zip(self.indices, self.coeffs)]


def _segments_in_position(seed: SeedFunction) -> bool:
    """分段数据是否描述位置域的 h（可以直接做调制积分）"""
    if seed.kind in (SeedKind.PIECEWISE_CONSTANT, SeedKind.PIECEWISE_MODULATED):
        return seed.domain is Domain.POSITION
    if seed.kind is SeedKind.SEGMENT_TRANSFORM:
        return seed.domain is Domain.FREQUENCY
    return False


def extract_filter(seed: SeedFunction, n_range: int) -> FilterSequence:
    """
    从种子提取窗口 [-n_range, n_range] 上的滤波器系数

    Args:
        seed: 种子函数
        n_range: 窗口半径（>= 1）

    Returns:
        FilterSequence，provenance 为 extracted
    """
    if n_range < 1:
        raise ValueError("n_range must be >= 1")

    n = np.arange(-n_range, n_range + 1)

    if _segments_in_position(seed):
        coeffs = np.zeros(n.size, dtype=complex)
        for seg in seed.segments:
            coeffs += modulated_integral(seg.amplitude, seg.mu, seg.harmonic + n, seg.start_a, seg.end_a)
        coeffs /= math.sqrt(A)

    elif seed.kind in (SeedKind.PIECEWISE_CONSTANT, SeedKind.PIECEWISE_MODULATED, SeedKind.SEGMENT_TRANSFORM):
        # 频率域分段函数：在 p = −n·a/2 处精确点值
        spectrum = seed if seed.domain is Domain.FREQUENCY else fourier(seed)
        values = [evaluate_units(spectrum, Fraction(-int(k), 2)) for k in n]
        coeffs = _SQRT_2PI_OVER_A * np.asarray(values, dtype=complex)

    elif seed.kind is SeedKind.GAUSSIAN:
        spectrum = seed if seed.domain is Domain.FREQUENCY else fourier(seed)
        coeffs = _SQRT_2PI_OVER_A * np.asarray(evaluate(spectrum, -n * OMEGA0), dtype=complex)

    elif seed.domain is Domain.FREQUENCY:
        coeffs = _SQRT_2PI_OVER_A * np.asarray(evaluate(seed, -n * OMEGA0), dtype=complex)

    else:
        coeffs = sampled_coefficients(seed, n)

    logger.debug(f"Extracted filter on [-{n_range}, {n_range}] from {seed.kind.value} seed")
    return FilterSequence.truncated(-n_range, coeffs, Provenance.EXTRACTED)


def sampled_coefficients(seed: SeedFunction, n: np.ndarray, weight: np.ndarray | None = None) -> np.ndarray:
    """位置域采样种子的梯形积分 (1/√a)·∫ h(s)·w(s)·e^{i·s·n·a/2} ds"""
    grid = seed.grid
    values = np.asarray(seed.samples, dtype=complex)
    if weight is not None:
        values = values * weight
    coeffs = np.empty(n.size, dtype=complex)
    for start in range(0, n.size, 64):
        block = n[start : start + 64]
        kernel = np.exp(1j * OMEGA0 * np.outer(block, grid))
        coeffs[start : start + 64] = trapezoid(kernel * values, dx=seed.grid_step, axis=1)
    return coeffs / math.sqrt(A)


def reflect(f: FilterSequence) -> FilterSequence:
    """h̃_n = h_{−n}"""
    return FilterSequence(-f.n_max, f.coeffs[::-1].copy(), f.provenance, tail=f.tail)
