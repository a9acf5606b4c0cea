"""
二维重叠积分 ⟨Ψ_{l1,l2}, Ψ_{0,0}⟩ 与模型无关性的交叉验证

三种核给出不同的 Ψ 与不同的平移作用，但重叠的模都应等于一维公式给出的 |S_l|。
"""

import math
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.exceptions import QuadratureDivergenceError, UnsupportedError
from src.overlap import overlap_lattice
from src.qmcheck.kernels import BaseKernel, Evaluator, KernelFactory, KernelVariant
from src.seedfn import Domain, LatticeParams, SeedFunction, SeedKind, evaluate, fourier, l2_norm_sq
from src.utils import logger

NORM_TOL = 1e-10


class QuadSettings(BaseModel):
    """截断的张量梯形积分：[-radius, radius] 上每个方向 nodes 个节点"""

    model_config = ConfigDict(frozen=True)

    radius: float = Field(default=8.0, gt=0, description="积分截断半径")
    nodes: int = Field(default=257, ge=3, description="每个方向的节点数")
    tail_tol: float = Field(default=1e-5, gt=0, description="边界与峰值之比的阈值")

    @classmethod
    def from_config(cls, cfg, **overrides) -> "QuadSettings":
        values = {"radius": cfg.quad_radius, "nodes": cfg.quad_nodes, "tail_tol": cfg.quad_tail_tol}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def grid(self) -> np.ndarray:
        return np.linspace(-self.radius, self.radius, self.nodes)

    def weights(self) -> np.ndarray:
        step = 2.0 * self.radius / (self.nodes - 1)
        w = np.full(self.nodes, step)
        w[0] = w[-1] = 0.5 * step
        return w


def ground_state() -> SeedFunction:
    """π^{-1/4}·e^{-s²/2}"""
    return SeedFunction(domain=Domain.POSITION, kind=SeedKind.GAUSSIAN, name="ground")


def hermite_state(order: int, nodes: np.ndarray) -> SeedFunction:
    """
    归一化的 Hermite 函数（0 阶或 1 阶），采样在均匀节点上

    Raises:
        ValueError: 不支持的阶数
    """
    nodes = np.asarray(nodes, dtype=float)
    gauss = math.pi**-0.25 * np.exp(-0.5 * nodes**2)
    if order == 0:
        values = gauss
    elif order == 1:
        values = math.sqrt(2.0) * nodes * gauss
    else:
        raise ValueError(f"Hermite order must be 0 or 1, got {order}")
    return SeedFunction(
        domain=Domain.POSITION,
        kind=SeedKind.SAMPLED,
        grid_start=float(nodes[0]),
        grid_step=float(nodes[1] - nodes[0]),
        samples=values.astype(complex),
        name=f"hermite{order}",
    )


@dataclass(frozen=True)
class KernelModel:
    """核变换 + 辅助函数 φ（默认高斯基态）"""

    variant: KernelVariant
    phi0: SeedFunction = field(default_factory=ground_state)

    def __post_init__(self):
        object.__setattr__(self, "variant", KernelVariant(self.variant))
        if self.phi0.domain is not Domain.POSITION:
            raise ValueError("phi0 must be given in the position domain")
        norm = l2_norm_sq(self.phi0)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"phi0 must have unit L2 norm, got {norm:.12g}")

    @property
    def impl(self) -> BaseKernel:
        return KernelFactory.create(self.variant)

    @property
    def label(self) -> str:
        return f"{self.variant.value}/{self.phi0.name or 'phi0'}"


def kernel(model: KernelModel, x, y, s, t):
    """K(x, y; s, t)"""
    return model.impl.kernel(x, y, s, t)


def _position_seed(seed: SeedFunction) -> SeedFunction:
    if seed.domain is Domain.POSITION:
        return seed
    if seed.kind is SeedKind.SAMPLED:
        raise UnsupportedError(
            "Wavefunctions need h(s); a frequency-domain sampled seed has no closed form", stage="qmcheck"
        )
    return fourier(seed)


def _full_quadrature(model: KernelModel, h: SeedFunction, x, y, quad: QuadSettings) -> np.ndarray:
    """直接对 (s, t) 做二维梯形积分"""
    nodes, weights = quad.grid(), quad.weights()
    phi_w = weights * np.asarray(evaluate(model.phi0, nodes), dtype=complex)
    h_w = weights * np.asarray(evaluate(h, nodes), dtype=complex)
    s, t = nodes[:, None], nodes[None, :]
    impl = model.impl
    out = np.empty((x.size, y.size), dtype=complex)
    for i, xi in enumerate(x):
        for j, yj in enumerate(y):
            out[i, j] = phi_w @ impl.kernel(xi, yj, s, t) @ h_w
    return out


def wavefunction(
    model: KernelModel,
    seed: SeedFunction,
    x,
    y,
    quad: QuadSettings | None = None,
    method: Literal["reduced", "full"] = "reduced",
) -> np.ndarray:
    """
    Ψ(x, y) = ∬ K(x, y; s, t)·φ(s)·h(t) ds dt 在张量网格 x × y 上的值

    Args:
        model: 核模型
        seed: 种子（频率域符号类型会先变换到位置域）
        x, y: 坐标（标量或一维数组）
        quad: 积分设置
        method: reduced 用约化的一维积分，full 直接做二维积分

    Returns:
        形状 (len(x), len(y)) 的复数数组
    """
    quad = quad or QuadSettings()
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    h = _position_seed(seed)
    if h.is_zero:
        return np.zeros((x.size, y.size), dtype=complex)
    if method == "full":
        return _full_quadrature(model, h, x, y, quad)
    if method != "reduced":
        raise ValueError(f"Unknown method: {method}")
    return model.impl.reduced(model.phi0, h, x, y, quad.grid(), quad.weights())


def wavefunction_evaluator(model: KernelModel, seed: SeedFunction, quad: QuadSettings | None = None) -> Evaluator:
    quad = quad or QuadSettings()

    def psi(x, y):
        return wavefunction(model, seed, x, y, quad)

    return psi


def translate_wavefunction(model: KernelModel, psi: Evaluator, l1: int, l2: int) -> Evaluator:
    """T1^{l1}·T2^{l2} 作用在求值器上"""
    if l1 == 0 and l2 == 0:
        return psi
    return model.impl.translate(psi, int(l1), int(l2))


def grid_inner(f: np.ndarray, g: np.ndarray, weights: np.ndarray) -> complex:
    """∬ conj(f)·g 的张量梯形公式"""
    return complex(weights @ (np.conj(f) * g) @ weights)


def _check_tail(psi: np.ndarray, quad: QuadSettings) -> float:
    peak = float(np.max(np.abs(psi)))
    if peak == 0.0:
        return 0.0
    edge = max(
        float(np.max(np.abs(psi[0, :]))),
        float(np.max(np.abs(psi[-1, :]))),
        float(np.max(np.abs(psi[:, 0]))),
        float(np.max(np.abs(psi[:, -1]))),
    )
    ratio = edge / peak
    if ratio > quad.tail_tol:
        raise QuadratureDivergenceError(
            f"Wavefunction does not decay inside radius {quad.radius:g}: edge/peak = {ratio:.3e} > {quad.tail_tol:.1e}",
            stage="qmcheck",
        )
    return ratio


def overlap2d(model: KernelModel, seed: SeedFunction, l1: int, l2: int, quad: QuadSettings | None = None) -> complex:
    """
    ⟨Ψ_{l1,l2}, Ψ_{0,0}⟩ 的截断二维梯形积分

    Raises:
        QuadratureDivergenceError: Ψ_{0,0} 在截断边界处没有衰减
    """
    quad = quad or QuadSettings()
    nodes, weights = quad.grid(), quad.weights()
    psi = wavefunction_evaluator(model, seed, quad)

    base = psi(nodes, nodes)
    ratio = _check_tail(base, quad)
    if not np.any(base):
        return 0.0 + 0.0j

    shifted = base if l1 == 0 and l2 == 0 else translate_wavefunction(model, psi, l1, l2)(nodes, nodes)
    value = grid_inner(shifted, base, weights)
    logger.debug(f"overlap2d[{model.label}] l=({l1},{l2}) = {value:.6e}, edge/peak {ratio:.1e}")
    return value


def crosscheck(
    models: list[KernelModel], seed: SeedFunction, l_max: int, quad: QuadSettings | None = None
) -> list[dict[str, Any]]:
    """
    对每个模型与 |l1|, |l2| <= l_max 比较 |overlap2d| 与一维公式的 |S_l|

    Returns:
        按 (model, l1, l2) 排序的行，包含计算值、参考值与绝对误差
    """
    if l_max < 0:
        raise ValueError("l_max must be >= 0")
    quad = quad or QuadSettings()
    lattice = overlap_lattice(seed, LatticeParams(L=max(l_max, 1)))

    rows = []
    for model in models:
        model_rows = []
        for l1 in range(-l_max, l_max + 1):
            for l2 in range(-l_max, l_max + 1):
                value = overlap2d(model, seed, l1, l2, quad)
                oracle = abs(lattice.get(l1, l2))
                model_rows.append(
                    {
                        "model": model.variant.value,
                        "phi0": model.phi0.name,
                        "l1": l1,
                        "l2": l2,
                        "re": value.real,
                        "im": value.imag,
                        "abs": abs(value),
                        "oracle": oracle,
                        "error": abs(abs(value) - oracle),
                    }
                )
        logger.info(f"Cross-check {model.label}: max error {max(r['error'] for r in model_rows):.3e}")
        rows.extend(model_rows)
    return rows
