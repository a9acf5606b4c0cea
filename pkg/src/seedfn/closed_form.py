"""
分段调制指数与高斯函数的闭式积分

格点相位 e^{2πi·q}（q 为有理数）用整数运算求余后再取指数，
四分之一圆周的整数倍直接返回精确值，保证表格种子的系数没有舍入误差。
"""

import math
from collections.abc import Sequence
from fractions import Fraction

import numpy as np

from src.seedfn.base import A, OMEGA0, SeedFunction, Segment

_QUARTER_TURNS = np.array([1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j])
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def unit_roots(num, den: int) -> np.ndarray:
    """e^{2πi·num/den}，num 为整数数组"""
    num = np.asarray(num, dtype=np.int64)
    rem = np.mod(num, den)
    out = np.exp(2j * np.pi * rem / den)
    quarter = (4 * rem) % den == 0
    if np.any(quarter):
        out = np.where(quarter, _QUARTER_TURNS[(4 * rem // den) % 4], out)
    return out


def unit_root(q: Fraction) -> complex:
    q = Fraction(q)
    return complex(unit_roots(q.numerator, q.denominator))


def modulated_integral(c: complex, mu: float, m, lo: Fraction, hi: Fraction) -> np.ndarray:
    """∫_{lo·a}^{hi·a} c·e^{i(mu + m·ω0)s} ds，对整数数组 m 向量化

    mu == 0 时 sin(π·m·(hi-lo)) 由精确单位根给出，整周期积分严格为 0。
    """
    m = np.asarray(m, dtype=np.int64)
    width = hi - lo
    mid = (hi + lo) / 2
    length = float(width) * A

    phase = unit_roots(m * mid.numerator, mid.denominator)
    if mu == 0.0:
        half_turn = unit_roots(m * width.numerator, 2 * width.denominator)
        q = m * float(width)
        safe = np.where(q == 0, 1.0, q)
        sinc = np.where(q == 0, 1.0, half_turn.imag / (np.pi * safe))
    else:
        x = 0.5 * mu * length + np.pi * m * float(width)
        safe = np.where(x == 0, 1.0, x)
        sinc = np.where(np.abs(x) < 1e-8, 1.0 - x * x / 6.0, np.sin(x) / safe)
        phase = phase * np.exp(1j * mu * float(mid) * A)
    return c * length * phase * sinc


def segment_correlation(segments: Sequence[Segment], shift: int, m: int) -> complex:
    """∫ f(s)·conj(f(s + shift·a))·e^{i·m·ω0·s} ds，f 为各段之和

    按段对求交集，再用 modulated_integral 积分；整数调制部分在平移 shift·a 下相位为 1。
    """
    total = 0.0 + 0.0j
    for seg_j in segments:
        for seg_k in segments:
            lo = max(seg_j.start_a, seg_k.start_a - shift)
            hi = min(seg_j.end_a, seg_k.end_a - shift)
            if lo >= hi:
                continue
            coeff = seg_j.amplitude * seg_k.amplitude.conjugate()
            if seg_k.mu != 0.0:
                coeff *= complex(np.exp(-1j * seg_k.mu * shift * A))
            harmonic = m + seg_j.harmonic - seg_k.harmonic
            total += complex(modulated_integral(coeff, seg_j.mu - seg_k.mu, harmonic, lo, hi))
    return total


def gaussian_correlation(seed: SeedFunction, shift: int, m: int) -> complex:
    """高斯种子的 ∫ g(s)·conj(g(s + shift·a))·e^{i·m·ω0·s} ds（配方后的闭式）"""
    b = shift * A
    kappa = -m * OMEGA0
    sigma = seed.width
    value = abs(seed.amplitude) ** 2
    value *= math.exp(-b * b / (4.0 * sigma * sigma) - sigma * sigma * kappa * kappa / 4.0)
    value *= complex(np.exp(-1j * (seed.mu * b + kappa * seed.center)))
    # e^{iκb/2} = e^{-iπ·m·shift}
    return complex(value * unit_root(Fraction(-m * shift, 2)))


def segment_transform_values(segments: Sequence[Segment], p: np.ndarray, inverse: bool = False) -> np.ndarray:
    """(1/√2π)·Σ ∫ c·e^{i(mu + harmonic·ω0)s}·e^{∓ips} ds 在任意频率 p 上的值"""
    p = np.asarray(p, dtype=float)
    sign = 1.0 if inverse else -1.0
    out = np.zeros(p.shape, dtype=complex)
    for seg in segments:
        length = float(seg.end_a - seg.start_a) * A
        mid = float(seg.start_a + seg.end_a) / 2.0 * A
        nu = seg.mu + seg.harmonic * OMEGA0 + sign * p
        out += seg.amplitude * length * np.exp(1j * nu * mid) * np.sinc(nu * length / (2.0 * np.pi))
    return out / _SQRT_2PI


def segment_transform_at_lattice(segments: Sequence[Segment], k: int, inverse: bool = False) -> complex:
    """在 p = k·ω0 处精确求 segment_transform_values"""
    total = 0.0 + 0.0j
    for seg in segments:
        m = seg.harmonic + (k if inverse else -k)
        total += complex(modulated_integral(seg.amplitude, seg.mu, m, seg.start_a, seg.end_a))
    return total / _SQRT_2PI
