"""
正交化技巧（ONT）

H_n = (1/√a)·∫ h(s)·e^{i·a·s·n/2} / √S(a·s, 0) ds
H(s) = Σ f_n·e^{i·s·a·n1}·h(s + a·n2)
"""

import numpy as np

from src.exceptions import UnsupportedError
from src.filters import FilterSequence, Provenance, extract_filter
from src.filters.sequence import sampled_coefficients
from src.ortho.symbol import DEFAULT_SINGULAR_REL_EPS, FCoefficients, SymbolGrid, inverse_sqrt
from src.overlap import OverlapLattice
from src.seedfn import A, Domain, SeedFunction, SeedKind, evaluate, fourier
from src.utils import logger


def slice_weight_coefficients(sym: SymbolGrid, rel_eps: float = DEFAULT_SINGULAR_REL_EPS) -> dict[int, complex]:
    """1/√S(p, 0) = Σ_k ŵ_k·e^{i·p·k} 的系数，丢弃相对最大值低于 1e-16 的项"""
    inverse_sqrt(sym, rel_eps)
    weight = 1.0 / np.sqrt(sym.slice)
    w_hat = np.fft.fft(weight) / sym.n1
    cut = 1e-16 * float(np.max(np.abs(w_hat)))
    ks = range(-((sym.n1 - 1) // 2), sym.n1 // 2 + 1)
    return {k: complex(w_hat[k % sym.n1]) for k in ks if abs(w_hat[k % sym.n1]) > cut}


def _periodic_slice_weight(sym: SymbolGrid, s: np.ndarray) -> np.ndarray:
    """在 p = a·s 处线性插值 1/√S(p, 0)，周期 2π"""
    nodes = 2.0 * np.pi * np.arange(sym.n1 + 1) / sym.n1
    weight = 1.0 / np.sqrt(sym.slice)
    weight = np.append(weight, weight[0])
    return np.interp(np.mod(A * s, 2.0 * np.pi), nodes, weight)


def ont_filter(
    seed: SeedFunction,
    lat: OverlapLattice,
    sym: SymbolGrid,
    n_range: int,
    rel_eps: float = DEFAULT_SINGULAR_REL_EPS,
) -> FilterSequence:
    """
    正交化后的滤波器系数 H_n，|n| <= n_range

    符号类型：H_n = Σ_k ŵ_k·h_{n+2k}，ŵ 为 1/√S(p, 0) 的 Fourier 系数（精确的格点恒等式）；
    采样类型：梯形积分，权重由 slice 周期线性插值。

    Raises:
        SingularSymbolError: 符号奇异
        UnsupportedError: 频率域采样种子
    """
    if n_range < 1:
        raise ValueError("n_range must be >= 1")
    logger.debug(f"ONT on lattice L={lat.L}, symbol {sym.n1}x{sym.n2}, window {n_range}")

    if seed.is_symbolic:
        w_hat = slice_weight_coefficients(sym, rel_eps)
        k_max = max(abs(k) for k in w_hat)
        wide = extract_filter(seed, n_range + 2 * k_max)
        offset = n_range + 2 * k_max
        n = np.arange(-n_range, n_range + 1)
        coeffs = np.zeros(n.size, dtype=complex)
        for k, w in w_hat.items():
            coeffs += w * wide.coeffs[n + 2 * k + offset]
        return FilterSequence.truncated(-n_range, coeffs, Provenance.ONT)

    if seed.domain is Domain.FREQUENCY:
        raise UnsupportedError("ONT of a frequency-domain sampled seed is not available", stage="ortho")

    inverse_sqrt(sym, rel_eps)
    n = np.arange(-n_range, n_range + 1)
    weight = _periodic_slice_weight(sym, seed.grid)
    coeffs = sampled_coefficients(seed, n, weight)
    return FilterSequence.truncated(-n_range, coeffs, Provenance.ONT)


def _position_view(seed: SeedFunction) -> SeedFunction:
    if seed.domain is Domain.POSITION:
        return seed
    if seed.kind is SeedKind.SAMPLED:
        raise UnsupportedError("ont_seed needs h(s); a frequency-domain sampled seed has no closed form", stage="ortho")
    return fourier(seed)


def ont_seed(seed: SeedFunction, f: FCoefficients | dict, grid: np.ndarray, rel_cut: float = 0.0) -> SeedFunction:
    """
    在均匀网格上组装 H(s) = Σ f_n·e^{i·s·a·n1}·h(s + a·n2)

    Args:
        seed: 种子函数
        f: f 系数（FCoefficients 或 {(n1, n2): f} 映射）
        grid: 均匀输出网格
        rel_cut: 相对最大 |f| 低于该值的项忽略

    Returns:
        SAMPLED 类型的位置域种子
    """
    if isinstance(f, dict):
        f = FCoefficients.from_mapping(f)
    grid = np.asarray(grid, dtype=float)
    h = _position_view(seed)

    values = np.zeros(grid.size, dtype=complex)
    for (n1, n2), coeff in f.items(rel_cut):
        values += coeff * np.exp(1j * A * n1 * grid) * evaluate(h, grid + A * n2)

    return SeedFunction(
        domain=Domain.POSITION,
        kind=SeedKind.SAMPLED,
        grid_start=float(grid[0]),
        grid_step=float(grid[1] - grid[0]),
        samples=values,
        name=f"ont[{seed.name}]" if seed.name else "ont",
    )


def default_ont_grid(span: float, step: float) -> np.ndarray:
    count = int(round(2.0 * span / step)) + 1
    return np.linspace(-span, span, count)
