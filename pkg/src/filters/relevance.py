"""
相关性条件 (r1)-(r4) 与种子层面的条件

(r1) Σ_n h_n·conj(h_{n+2l}) = δ_{l,0}
(r2) h_n = O(1/(1+n²))
(r3) Σ_n h_n = √2（对称部分和）
(r4) H(ω) = (1/√2)·Σ h_n e^{−iωn} 在 [−π/2, π/2] 上不为零
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.exceptions import UnsupportedError
from src.filters.sequence import FilterSequence
from src.seedfn import A, Domain, SeedFunction, SeedKind, evaluate, evaluate_units, fourier
from src.utils import logger

SQRT2 = math.sqrt(2.0)


class RelevanceTolerances(BaseModel):
    """相关性检验使用的容差与网格"""

    model_config = ConfigDict(frozen=True)

    r1_lmax: int = Field(default=8, ge=1)
    r1_tol: float = Field(default=1e-10, gt=0)
    r3_tol: float = Field(default=1e-10, gt=0)
    r4_grid: int = Field(default=4096, ge=2)
    r4_delta: float = Field(default=1e-6, gt=0)
    omega_grid: int = Field(default=1025, ge=2)
    seed_n_range: int = Field(default=64, ge=1, description="种子条件中格点求和的截断 |n|")
    seed_lattice: int = Field(default=8, ge=1, description="种子条件中 (l1, l2) 求和的截断")

    @classmethod
    def from_config(cls, cfg, **overrides) -> "RelevanceTolerances":
        values = {
            "r1_lmax": cfg.r1_lmax,
            "r1_tol": cfg.r1_tol,
            "r3_tol": cfg.r3_tol,
            "r4_grid": cfg.r4_grid,
            "r4_delta": cfg.r4_delta,
            "omega_grid": cfg.omega_grid,
            "seed_n_range": cfg.n_range,
            "seed_lattice": cfg.lattice_radius,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


def _odd_grid(count: int) -> np.ndarray:
    """[−π/2, π/2] 上的奇数个均匀节点，保证 ω = 0 被采样"""
    count = max(3, count | 1)
    return np.linspace(-np.pi / 2.0, np.pi / 2.0, count)


def r1_values(f: FilterSequence, l_max: int) -> np.ndarray:
    """Σ_n h_n·conj(h_{n+2l})，l = −l_max..l_max"""
    c = f.coeffs
    size = c.size
    out = np.zeros(2 * l_max + 1, dtype=complex)
    for i, l in enumerate(range(-l_max, l_max + 1)):
        s = 2 * l
        if abs(s) >= size:
            continue
        if s >= 0:
            out[i] = np.sum(c[: size - s] * np.conj(c[s:]))
        else:
            out[i] = np.sum(c[-s:] * np.conj(c[: size + s]))
    return out


def check_r1(f: FilterSequence, l_max: int, tol: float) -> tuple[bool, float]:
    if l_max < 1:
        raise ValueError("l_max must be >= 1")
    values = r1_values(f, l_max)
    values[l_max] -= 1.0
    residual = float(np.max(np.abs(values)))
    return residual <= tol, residual


def check_r2(f: FilterSequence) -> tuple[bool, float]:
    """
    r2_sup = max |h_n|·(1+n²)

    有限支撑序列（tail 为 False）平凡满足；截断序列用稳定性判据：
    最后四分之一窗口 (3N/4 < |n| <= N) 的最大值不超过中段 (|n| <= N/2) 最大值的 1.05 倍。
    """
    n = f.indices
    weighted = np.abs(f.coeffs) * (1.0 + n.astype(float) ** 2)
    sup = float(np.max(weighted))
    if not f.tail:
        return True, sup

    radius = f.radius
    mid = weighted[np.abs(n) <= radius / 2.0]
    last = weighted[np.abs(n) > 3.0 * radius / 4.0]
    if last.size == 0:
        return True, sup
    mid_max = float(np.max(mid)) if mid.size else 0.0
    return bool(np.max(last) <= 1.05 * mid_max), sup


def check_r3(f: FilterSequence, tol: float) -> tuple[bool, float]:
    """Σ h_n 与 √2 的偏差

    有限支撑序列直接求和；截断序列取窗口内最大的对称部分和 Σ_{|n|<=N}，N = min(−n_min, n_max)。
    """
    if f.tail:
        half = min(-f.n_min, f.n_max)
        total = complex(np.sum(f.coeffs[np.abs(f.indices) <= half])) if half >= 0 else 0j
    else:
        total = complex(np.sum(f.coeffs))
    deviation = abs(total - SQRT2)
    return deviation <= tol, deviation


def transfer_function(f: FilterSequence, omega: np.ndarray) -> np.ndarray:
    """H(ω) = (1/√2)·Σ h_n e^{−iωn}"""
    n = f.indices.astype(float)
    out = np.empty(omega.size, dtype=complex)
    for start in range(0, omega.size, 64):
        block = omega[start : start + 64]
        out[start : start + 64] = np.exp(-1j * np.outer(block, n)) @ f.coeffs
    return out / SQRT2


def check_r4(f: FilterSequence, grid: int, delta: float) -> tuple[bool, float]:
    if grid < 2:
        raise ValueError("grid must be >= 2")
    r4_min = float(np.min(np.abs(transfer_function(f, _odd_grid(grid)))))
    return r4_min > delta, r4_min


@dataclass(frozen=True)
class SeedConditions:
    """种子层面的条件：vi1、vi2 的两边，vi3 的最小值，以及 (r3) 的必要条件

    采样种子没有闭式变换，vi2 为 None。
    """

    vi1: tuple[complex, complex]
    vi2: tuple[complex, complex] | None
    vi3_min: float
    r3_necessary: tuple[complex, float]

    def to_dict(self) -> dict[str, Any]:
        vi2 = None
        if self.vi2 is not None:
            vi2 = {"lhs": _complex_dict(self.vi2[0]), "rhs": _complex_dict(self.vi2[1])}
        return {
            "vi1": {"lhs": _complex_dict(self.vi1[0]), "rhs": _complex_dict(self.vi1[1])},
            "vi2": vi2,
            "vi3_min": self.vi3_min,
            "r3_necessary": {"lhs": _complex_dict(self.r3_necessary[0]), "target": self.r3_necessary[1]},
        }


def _complex_dict(z: complex) -> dict[str, float]:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _domain_view(seed: SeedFunction, domain: Domain) -> SeedFunction:
    if seed.domain is domain:
        return seed
    return fourier(seed)


def seed_conditions(
    seed: SeedFunction, omega_grid: int, n_range: int = 64, lattice_radius: int = 8
) -> SeedConditions:
    """
    种子层面的条件

    符号种子在格点上精确求值；位置域的采样种子（例如 ont_seed 的输出）用线性插值求值，
    此时 vi2 需要 ĥ，返回 None。

    Args:
        seed: 种子
        omega_grid: vi3 的频率网格点数
        n_range: Σ_n 的截断
        lattice_radius: Σ_{l1,l2} 的截断

    Raises:
        UnsupportedError: 频率域的采样种子（没有逆变换）
    """
    if seed.kind is SeedKind.SAMPLED:
        if seed.domain is not Domain.POSITION:
            raise UnsupportedError("Seed conditions of a sampled spectrum need an inverse transform", stage="filters")
        return _sampled_seed_conditions(seed, omega_grid, n_range, lattice_radius)

    h = _domain_view(seed, Domain.POSITION)
    h_hat = _domain_view(seed, Domain.FREQUENCY)
    ns = range(-n_range, n_range + 1)
    ls = range(-lattice_radius, lattice_radius + 1)

    # vi1（位置域）：Σ h(na) 与 sqrt(Σ h(a·l1/2)·conj(h(a·l1/2 + a·l2)))
    vi1_lhs = sum((evaluate_units(h, Fraction(n)) for n in ns), 0j)
    vi1_sq = 0j
    for l1 in ls:
        head = evaluate_units(h, Fraction(l1, 2))
        if head == 0:
            continue
        for l2 in ls:
            vi1_sq += head * evaluate_units(h, Fraction(l1, 2) + l2).conjugate()
    vi1_rhs = complex(np.sqrt(vi1_sq))

    # vi2（频率域）：Σ ĥ(a·n/2) 与 sqrt(2·Σ ĥ(a·l2/2)·conj(ĥ(a·l2/2 + a·l1)))
    vi2_lhs = sum((evaluate_units(h_hat, Fraction(n, 2)) for n in ns), 0j)
    vi2_sq = 0j
    for l2 in ls:
        head = evaluate_units(h_hat, Fraction(l2, 2))
        if head == 0:
            continue
        for l1 in ls:
            vi2_sq += head * evaluate_units(h_hat, Fraction(l2, 2) + l1).conjugate()
    vi2_rhs = complex(np.sqrt(2.0 * vi2_sq))

    vi3_min = _vi3_min(seed, omega_grid, n_range)
    return SeedConditions(
        vi1=(vi1_lhs, vi1_rhs),
        vi2=(vi2_lhs, vi2_rhs),
        vi3_min=vi3_min,
        r3_necessary=(vi1_lhs, math.sqrt(2.0 / A)),
    )


def _sampled_seed_conditions(h: SeedFunction, omega_grid: int, n_range: int, lattice_radius: int) -> SeedConditions:
    ns = np.arange(-n_range, n_range + 1)
    ls = np.arange(-lattice_radius, lattice_radius + 1)

    vi1_lhs = complex(np.sum(evaluate(h, A * ns)))
    heads = np.asarray(evaluate(h, A * ls / 2.0), dtype=complex)
    tails = np.asarray(evaluate(h, A * (ls[:, None] / 2.0 + ls[None, :])), dtype=complex)
    vi1_rhs = complex(np.sqrt(np.sum(heads[:, None] * np.conj(tails))))

    return SeedConditions(
        vi1=(vi1_lhs, vi1_rhs),
        vi2=None,
        vi3_min=_vi3_min(h, omega_grid, n_range),
        r3_necessary=(vi1_lhs, math.sqrt(2.0 / A)),
    )


def _piecewise_spectrum(h: SeedFunction) -> SeedFunction | None:
    """紧支撑的分段 ĥ（频率域分段种子本身，或其逆变换的闭式）"""
    if h.domain is Domain.FREQUENCY and h.kind in (SeedKind.PIECEWISE_CONSTANT, SeedKind.PIECEWISE_MODULATED):
        return h
    if h.domain is Domain.POSITION and h.kind is SeedKind.SEGMENT_TRANSFORM:
        return fourier(h)
    return None


def periodized_seed(h: SeedFunction, omega: np.ndarray, n_range: int) -> np.ndarray:
    """
    Σ_n h(a·(n + ω/2π))，h 可以在任一域中给出

    ĥ 为分段函数时按对偶格点求和：(√(2π)/a)·Σ_k ĥ(a·k/2)·e^{ikω}，ĥ 取半开区间 [start, end) 的值，
    与 extract_filter 的约定一致，于是 H(ω) = √(a/2)·Σ_n h(a·(n + ω/2π)) 逐点成立。
    直接在位置域求和会在 ĥ 的跳跃点收敛到左右极限的平均值。

    Raises:
        UnsupportedError: 频率域的采样种子
    """
    omega = np.asarray(omega, dtype=float)
    spectrum = _piecewise_spectrum(h)
    if spectrum is not None:
        lo, hi = spectrum.support_units()
        ks = np.arange(2 * math.floor(lo) - 1, 2 * math.ceil(hi) + 2)
        values = np.array([evaluate_units(spectrum, Fraction(int(k), 2)) for k in ks], dtype=complex)
        return math.sqrt(2.0 * math.pi) / A * (np.exp(1j * np.outer(omega, ks)) @ values)

    if h.domain is Domain.FREQUENCY:
        h = fourier(h)
    support = h.support_units()
    if support is not None:
        ns = np.arange(math.floor(support[0]) - 1, math.ceil(support[1]) + 2)
    else:
        ns = np.arange(-n_range, n_range + 1)
    u = ns[:, None] + omega[None, :] / (2.0 * np.pi)
    return np.sum(np.asarray(evaluate(h, A * u), dtype=complex), axis=0)


def _vi3_min(h: SeedFunction, omega_grid: int, n_range: int) -> float:
    if h.is_zero:
        return 0.0
    return float(np.min(np.abs(periodized_seed(h, _odd_grid(omega_grid), n_range))))


@dataclass(frozen=True)
class RelevanceReport:
    """(r1)-(r4) 的残差与判定，可选附带种子层面的条件"""

    r1_residual: float
    r1_pass: bool
    r2_sup: float
    r2_pass: bool
    r3_deviation: float
    r3_pass: bool
    r4_min: float
    r4_pass: bool
    tolerances: RelevanceTolerances
    n_min: int
    n_max: int
    tail: bool
    provenance: str
    seed: SeedConditions | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def verdicts(self) -> dict[str, bool]:
        return {"r1": self.r1_pass, "r2": self.r2_pass, "r3": self.r3_pass, "r4": self.r4_pass}

    @property
    def all_pass(self) -> bool:
        return all(self.verdicts.values())

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "r1": {"residual": self.r1_residual, "pass": self.r1_pass, "l_max": self.tolerances.r1_lmax},
            "r2": {"sup": self.r2_sup, "pass": self.r2_pass},
            "r3": {"deviation": self.r3_deviation, "pass": self.r3_pass},
            "r4": {"min": self.r4_min, "pass": self.r4_pass, "grid": self.tolerances.r4_grid},
            "all_pass": self.all_pass,
            "window": {"n_min": self.n_min, "n_max": self.n_max, "tail": self.tail},
            "filter_provenance": self.provenance,
            "tolerances": self.tolerances.model_dump(),
        }
        if self.seed is not None:
            data.update(self.seed.to_dict())
        if self.notes:
            data["notes"] = list(self.notes)
        return data


def relevance_report(
    f: FilterSequence, seed: SeedFunction | None = None, tols: RelevanceTolerances | None = None
) -> RelevanceReport:
    """运行全部检验并汇总；给出种子时附带种子层面的条件"""
    tols = tols or RelevanceTolerances()
    r1_pass, r1_residual = check_r1(f, tols.r1_lmax, tols.r1_tol)
    r2_pass, r2_sup = check_r2(f)
    r3_pass, r3_deviation = check_r3(f, tols.r3_tol)
    r4_pass, r4_min = check_r4(f, tols.r4_grid, tols.r4_delta)

    conditions = None
    notes = []
    if seed is not None:
        if seed.is_symbolic or seed.domain is Domain.POSITION:
            conditions = seed_conditions(seed, tols.omega_grid, tols.seed_n_range, tols.seed_lattice)
            if not seed.is_symbolic:
                notes.append("vi2 skipped: sampled seed has no closed-form transform")
        else:
            notes.append("seed-level conditions skipped: sampled spectrum")
    if f.tail:
        notes.append("window truncates an infinite sequence; residuals are window-dependent")

    logger.debug(
        f"Relevance r1={r1_residual:.3e} r2={r2_sup:.3e} r3={r3_deviation:.3e} r4={r4_min:.3e} "
        f"on [{f.n_min}, {f.n_max}]"
    )
    return RelevanceReport(
        r1_residual=r1_residual,
        r1_pass=r1_pass,
        r2_sup=r2_sup,
        r2_pass=r2_pass,
        r3_deviation=r3_deviation,
        r3_pass=r3_pass,
        r4_min=r4_min,
        r4_pass=r4_pass,
        tolerances=tols,
        n_min=f.n_min,
        n_max=f.n_max,
        tail=f.tail,
        provenance=f.provenance.value,
        seed=conditions,
        notes=notes,
    )
