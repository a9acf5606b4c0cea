"""
三种核变换及其磁平移作用

Ψ(x, y) = ∬ K(x, y; s, t)·φ(s)·h(t) ds dt，φ 为辅助的归一化函数，h 为种子。
每个核给出约化的一维积分形式以及平移 T1^{l1}T2^{l2} 的作用。
"""

import math
from abc import ABC, abstractmethod
from collections.abc import Callable
from enum import Enum

import numpy as np

from src.seedfn import A, SeedFunction, evaluate, fourier

# 张量网格求值器：(x[nx], y[ny]) -> Ψ[nx, ny]
Evaluator = Callable[[np.ndarray, np.ndarray], np.ndarray]

_INV_2PI = 1.0 / (2.0 * math.pi)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


class KernelVariant(str, Enum):
    EXAMPLE1 = "ex1"
    EXAMPLE2 = "ex2"
    EXAMPLE3 = "ex3"


def inverse_transform(fn: SeedFunction, u: np.ndarray, nodes: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """ȟ(u) = (1/√2π)·∫ e^{iut}·h(t) dt；符号类型用闭式 ĥ(−u)，采样类型在积分节点上求和"""
    u = np.asarray(u, dtype=float)
    if fn.is_symbolic:
        return np.asarray(evaluate(fourier(fn), -u), dtype=complex)
    return _inverse_transform_quadrature(fn, u, nodes, weights)


def _inverse_transform_quadrature(
    fn: SeedFunction, u: np.ndarray, nodes: np.ndarray, weights: np.ndarray
) -> np.ndarray:
    values = weights * np.asarray(evaluate(fn, nodes), dtype=complex)
    flat = u.ravel()
    out = np.empty(flat.size, dtype=complex)
    for start in range(0, flat.size, 2048):
        block = flat[start : start + 2048]
        out[start : start + 2048] = np.exp(1j * np.outer(block, nodes)) @ values
    return (out * _INV_SQRT_2PI).reshape(u.shape)


def _chirp_transform(fn: SeedFunction, u: np.ndarray, nodes, weights, chirp: float, sign: float) -> np.ndarray:
    """∫ e^{sign·i·u·s + i·chirp·s²/2}·f(s) ds 的节点求和"""
    values = weights * np.asarray(evaluate(fn, nodes), dtype=complex) * np.exp(0.5j * chirp * nodes**2)
    return np.exp(sign * 1j * np.outer(u, nodes)) @ values


class BaseKernel(ABC):
    """核变换基类"""

    variant: KernelVariant

    @abstractmethod
    def kernel(self, x, y, s, t):
        """
        核函数 K(x, y; s, t)

        Args:
            x, y, s, t: 可广播的实数或数组

        Returns:
            复数值（模恒为 1/2π）
        """
        pass

    @abstractmethod
    def reduced(
        self, phi0: SeedFunction, h: SeedFunction, x: np.ndarray, y: np.ndarray, nodes: np.ndarray, weights: np.ndarray
    ) -> np.ndarray:
        """
        约化的一维积分形式，在张量网格 x × y 上求 Ψ

        Args:
            phi0: 辅助函数 φ
            h: 位置域种子
            x, y: 一维坐标数组
            nodes, weights: 一维积分节点与梯形权重

        Returns:
            形状 (len(x), len(y)) 的复数数组
        """
        pass

    @abstractmethod
    def translate(self, psi: Evaluator, l1: int, l2: int) -> Evaluator:
        """
        磁平移 T1^{l1}·T2^{l2} 的作用

        Args:
            psi: 张量网格求值器
            l1, l2: 格点下标

        Returns:
            平移后的求值器
        """
        pass


class Example1Kernel(BaseKernel):
    """K = (1/2π)·exp{i(xt + ys − st − xy/2)}"""

    variant = KernelVariant.EXAMPLE1

    def kernel(self, x, y, s, t):
        return _INV_2PI * np.exp(1j * (x * t + y * s - s * t - x * y / 2.0))

    def reduced(self, phi0, h, x, y, nodes, weights):
        # Ψ = (1/√2π)·e^{-ixy/2}·∫ e^{iys}·φ(s)·ȟ(x − s) ds
        phi_w = weights * np.asarray(evaluate(phi0, nodes), dtype=complex)
        h_check = inverse_transform(h, x[:, None] - nodes[None, :], nodes, weights)
        inner = (h_check * phi_w[None, :]) @ np.exp(1j * np.outer(nodes, y))
        return _INV_SQRT_2PI * np.exp(-0.5j * np.outer(x, y)) * inner

    def translate(self, psi, l1, l2):
        sign = -1.0 if (l1 * l2) % 2 else 1.0

        def shifted(x, y):
            phase = np.exp(0.5j * A * (l1 * y[None, :] - l2 * x[:, None]))
            return sign * phase * psi(x + l1 * A, y + l2 * A)

        return shifted


class Example2Kernel(BaseKernel):
    """K = (1/2π)·exp{ix(s − t) + iyt}，可分离"""

    variant = KernelVariant.EXAMPLE2

    def kernel(self, x, y, s, t):
        return _INV_2PI * np.exp(1j * (x * (s - t) + y * t))

    def reduced(self, phi0, h, x, y, nodes, weights):
        # Ψ = φ̌(x)·ȟ(y − x)
        phi_check = inverse_transform(phi0, x, nodes, weights)
        h_check = inverse_transform(h, y[None, :] - x[:, None], nodes, weights)
        return phi_check[:, None] * h_check

    def translate(self, psi, l1, l2):
        def shifted(x, y):
            phase = np.exp(1j * A * l2 * (x[:, None] - y[None, :]))
            return phase * psi(x, y + l1 * A)

        return shifted


class Example3Kernel(BaseKernel):
    """K = (1/2π)·exp{(i/2)(x² + 2(yt − xs) + s² − t²)}"""

    variant = KernelVariant.EXAMPLE3

    def kernel(self, x, y, s, t):
        return _INV_2PI * np.exp(0.5j * (x * x + 2.0 * (y * t - x * s) + s * s - t * t))

    def reduced(self, phi0, h, x, y, nodes, weights):
        # Ψ = (1/2π)·e^{ix²/2}·∫ e^{−ixs + is²/2}φ(s) ds·∫ e^{iyt − it²/2}h(t) dt
        a_part = _chirp_transform(phi0, x, nodes, weights, chirp=1.0, sign=-1.0)
        b_part = _chirp_transform(h, y, nodes, weights, chirp=-1.0, sign=1.0)
        return _INV_2PI * np.exp(0.5j * x * x)[:, None] * np.outer(a_part, b_part)

    def translate(self, psi, l1, l2):
        def shifted(x, y):
            phase = np.exp(-1j * A * l2 * y)[None, :]
            return phase * psi(x, y + (l1 + l2) * A)

        return shifted


class KernelFactory:
    """核变换工厂"""

    # 注册的核类型映射 {variant: kernel_class}
    _kernels: dict[KernelVariant, type[BaseKernel]] = {
        KernelVariant.EXAMPLE1: Example1Kernel,
        KernelVariant.EXAMPLE2: Example2Kernel,
        KernelVariant.EXAMPLE3: Example3Kernel,
    }

    @classmethod
    def create(cls, variant: KernelVariant | str) -> BaseKernel:
        """
        创建核实例

        Raises:
            ValueError: 未知的核类型
        """
        try:
            variant = KernelVariant(variant)
        except ValueError as e:
            available = [v.value for v in cls._kernels]
            raise ValueError(f"Unknown kernel variant: {variant}. Available variants: {available}") from e
        return cls._kernels[variant]()

    @classmethod
    def get_available_variants(cls) -> list[str]:
        return [variant.value for variant in cls._kernels]
