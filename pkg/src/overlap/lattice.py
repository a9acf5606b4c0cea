"""
格点重叠 S_{l1,l2} 与正交条件

位置域：S_{l1,l2} = ∫ h(s)·conj(h(s + a·l2))·e^{-i·s·a·l1} ds
频率域：S_{l1,l2} = ∫ ĥ(p)·conj(ĥ(p − a·l1))·e^{-i·p·a·l2} dp
"""

from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from src.exceptions import NonSummableError, QuadratureDivergenceError
from src.seedfn import A, OMEGA0, Domain, LatticeParams, SeedFunction, SeedKind, evaluate
from src.seedfn.closed_form import gaussian_correlation, segment_correlation
from src.utils import logger

DEFAULT_TAIL_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class OverlapLattice:
    """截断格点 [-L, L]² 上的重叠值，values[l1 + L, l2 + L] = S_{l1,l2}"""

    params: LatticeParams
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.params.size, self.params.size):
            raise ValueError(f"Overlap values must have shape {(self.params.size,) * 2}, got {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def L(self) -> int:
        return self.params.L

    def get(self, l1: int, l2: int) -> complex:
        if max(abs(l1), abs(l2)) > self.L:
            raise KeyError(f"({l1}, {l2}) outside the truncated lattice of radius {self.L}")
        return complex(self.values[l1 + self.L, l2 + self.L])

    def items(self) -> Iterator[tuple[tuple[int, int], complex]]:
        for l1 in self.params.indices():
            for l2 in self.params.indices():
                yield (l1, l2), self.get(l1, l2)

    def to_rows(self) -> list[list]:
        """CSV 行：l1, l2, re, im, abs"""
        return [[int(l1), int(l2), float(v.real), float(v.imag), float(abs(v))] for (l1, l2), v in self.items()]


def _roles(domain: Domain, l1: int, l2: int) -> tuple[int, int]:
    """(平移, 调制) 参数：积分为 ∫ f(x)·conj(f(x + shift·a))·e^{i·m·ω0·x} dx"""
    if domain is Domain.POSITION:
        return l2, -2 * l1
    return -l1, -2 * l2


def _sampled_correlation(seed: SeedFunction, shift: int, m: int) -> complex:
    grid = seed.grid
    b = shift * A
    nodes = np.union1d(grid, grid - b)
    values = evaluate(seed, nodes) * np.conj(evaluate(seed, nodes + b))
    if m:
        values = values * np.exp(1j * m * OMEGA0 * nodes)
    return complex(trapezoid(values, nodes))


def check_sampled_window(seed: SeedFunction, tail_tol: float = DEFAULT_TAIL_TOL):
    """采样窗口两端必须已经衰减，否则截断的支撑会污染格点积分"""
    peak = np.max(np.abs(seed.samples))
    if peak == 0:
        return
    edge = max(abs(seed.samples[0]), abs(seed.samples[-1]))
    if edge > tail_tol * peak:
        raise QuadratureDivergenceError(
            f"Sampled grid [{seed.grid[0]:.6g}, {seed.grid[-1]:.6g}] does not cover the support: "
            f"edge/peak = {edge / peak:.3e} > {tail_tol:.1e}",
            stage="overlap",
        )


def overlap_lattice(
    seed: SeedFunction, params: LatticeParams | None = None, tail_tol: float = DEFAULT_TAIL_TOL
) -> OverlapLattice:
    """
    计算截断格点上的全部 S_{l1,l2}

    Args:
        seed: 种子函数
        params: 格点参数，默认 L = 8
        tail_tol: 采样种子窗口边界的相对阈值

    Returns:
        OverlapLattice

    Raises:
        QuadratureDivergenceError: 采样网格没有覆盖支撑
    """
    params = params or LatticeParams()

    if seed.kind is SeedKind.SEGMENT_TRANSFORM:
        # 与生成它的分段函数描述同一个 h
        domain = seed.domain.toggled()

        def cell(shift, m):
            return segment_correlation(seed.segments, shift, m)

    elif seed.kind in (SeedKind.PIECEWISE_CONSTANT, SeedKind.PIECEWISE_MODULATED):
        domain = seed.domain

        def cell(shift, m):
            return segment_correlation(seed.segments, shift, m)

    elif seed.kind is SeedKind.GAUSSIAN:
        domain = seed.domain

        def cell(shift, m):
            return gaussian_correlation(seed, shift, m)

    else:
        domain = seed.domain
        check_sampled_window(seed, tail_tol)

        def cell(shift, m):
            return _sampled_correlation(seed, shift, m)

    values = np.zeros((params.size, params.size), dtype=complex)
    for l1 in params.indices():
        for l2 in params.indices():
            values[l1 + params.L, l2 + params.L] = cell(*_roles(domain, l1, l2))

    logger.debug(f"Filled overlap lattice L={params.L} for {seed.kind.value} seed ({domain.value} form)")
    return OverlapLattice(params=params, values=values)


def check_onc(lat: OverlapLattice, tol: float) -> tuple[bool, float]:
    """ONC：S_l = δ_{l,0}，返回 (判定, max|S_l − δ_{l,0}|)"""
    if tol <= 0:
        raise ValueError("tol must be positive")
    deviation = np.array(lat.values, dtype=complex)
    deviation[lat.L, lat.L] -= 1.0
    residual = float(np.max(np.abs(deviation)))
    return residual <= tol, residual


def check_monc(lat: OverlapLattice, tol: float) -> tuple[bool, float | None]:
    """
    弱正交条件 S_{l1,l2} = δ_{l1,0}·s_{l2}

    Returns:
        (判定, sigma = Σ_{l2} S_{0,l2})；判定失败时 sigma 为 None

    Raises:
        NonSummableError: |S_{0,±L}| 超过 tol，序列 s_{l2} 没有衰减
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    L = lat.L
    column = lat.values[L, :]
    tail = max(abs(column[0]), abs(column[-1]))
    if tail > tol:
        raise NonSummableError(f"|S_(0,±{L})| = {tail:.3e} exceeds {tol:.1e}", stage="overlap")

    off_axis = np.delete(lat.values, L, axis=0)
    off_max = float(np.max(np.abs(off_axis))) if off_axis.size else 0.0
    sigma = complex(np.sum(column))
    verdict = off_max <= tol and abs(sigma.imag) <= tol
    return verdict, (sigma.real if verdict else None)
