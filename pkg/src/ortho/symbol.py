"""
Gram 符号 S(p) = Σ_l S_l·e^{i·p·l} 与其逆平方根的 Fourier 系数
"""

from dataclasses import dataclass
from typing import Any

import numpy as np

from src.exceptions import SingularSymbolError
from src.overlap import OverlapLattice
from src.utils import logger

IMAG_RESIDUE_TOL = 1e-10
DEFAULT_SINGULAR_REL_EPS = 1e-8


@dataclass(frozen=True, eq=False)
class SymbolGrid:
    """[0, 2π)² 上 n1 × n2 均匀网格的符号采样（实部），slice 为 S(p1, 0)"""

    n1: int
    n2: int
    values: np.ndarray
    slice: np.ndarray
    imag_residue: float
    L: int

    @property
    def min_value(self) -> float:
        return float(np.min(self.values))

    @property
    def max_value(self) -> float:
        return float(np.max(self.values))

    def singular_eps(self, rel_eps: float = DEFAULT_SINGULAR_REL_EPS) -> float:
        return rel_eps * float(np.max(np.abs(self.values)))

    def metadata(self, rel_eps: float = DEFAULT_SINGULAR_REL_EPS) -> dict[str, Any]:
        return {
            "n1": self.n1,
            "n2": self.n2,
            "L": self.L,
            "min": self.min_value,
            "max": self.max_value,
            "imag_residue": self.imag_residue,
            "singular_eps": self.singular_eps(rel_eps),
        }


def symbol(lat: OverlapLattice, n1: int, n2: int) -> SymbolGrid:
    """在网格 p = 2π·(j1/n1, j2/n2) 上直接求截断 Fourier 级数"""
    size = lat.params.size
    if n1 < size or n2 < size:
        raise ValueError(f"Symbol grid {n1}x{n2} must be at least {size}x{size} for L={lat.L}")

    ls = np.arange(-lat.L, lat.L + 1)
    coeff = np.zeros((n1, n2), dtype=complex)
    np.add.at(coeff, (np.mod(ls, n1)[:, None], np.mod(ls, n2)[None, :]), lat.values)

    samples = n1 * n2 * np.fft.ifft2(coeff)
    residue = float(np.max(np.abs(samples.imag)))
    values = np.ascontiguousarray(samples.real)
    values.setflags(write=False)
    logger.debug(f"Symbol on {n1}x{n2} grid: min={values.min():.6g}, imag residue={residue:.2e}")
    return SymbolGrid(n1=n1, n2=n2, values=values, slice=values[:, 0].copy(), imag_residue=residue, L=lat.L)


def inverse_sqrt(sym: SymbolGrid, rel_eps: float = DEFAULT_SINGULAR_REL_EPS) -> np.ndarray:
    """
    1/√S（正实根）

    Raises:
        SingularSymbolError: 符号的最小值不超过 rel_eps·max，或虚部残差超出容差
    """
    scale = float(np.max(np.abs(sym.values)))
    if scale == 0.0:
        raise SingularSymbolError("Symbol vanishes identically (zero seed)", stage="ortho")
    if sym.imag_residue > IMAG_RESIDUE_TOL * max(1.0, scale):
        raise SingularSymbolError(f"Symbol is not real: imaginary residue {sym.imag_residue:.3e}", stage="ortho")
    eps = sym.singular_eps(rel_eps)
    if sym.min_value <= eps:
        raise SingularSymbolError(
            f"Symbol minimum {sym.min_value:.3e} <= singular_eps {eps:.3e}; the lattice is not a Riesz basis",
            stage="ortho",
        )
    return 1.0 / np.sqrt(sym.values)


@dataclass(frozen=True, eq=False)
class FCoefficients:
    """f_n，|n1|, |n2| <= L；values[n1 + L, n2 + L]"""

    L: int
    values: np.ndarray

    def get(self, n1: int, n2: int) -> complex:
        return complex(self.values[n1 + self.L, n2 + self.L])

    def items(self, rel_cut: float = 0.0):
        """非零项 ((n1, n2), f)；rel_cut 以最大模为基准截去小项"""
        cut = rel_cut * float(np.max(np.abs(self.values)))
        for n1 in range(-self.L, self.L + 1):
            for n2 in range(-self.L, self.L + 1):
                value = self.get(n1, n2)
                if value != 0 and abs(value) > cut:
                    yield (n1, n2), value

    @classmethod
    def from_mapping(cls, mapping: dict[tuple[int, int], complex]) -> "FCoefficients":
        L = max((max(abs(n1), abs(n2)) for n1, n2 in mapping), default=0)
        values = np.zeros((2 * L + 1, 2 * L + 1), dtype=complex)
        for (n1, n2), value in mapping.items():
            values[n1 + L, n2 + L] = value
        return cls(L=L, values=values)

    def to_rows(self) -> list[dict[str, Any]]:
        return [
            {"n1": int(n1), "n2": int(n2), "re": float(v.real), "im": float(v.imag)} for (n1, n2), v in self.items()
        ]


def f_coefficients(sym: SymbolGrid, rel_eps: float = DEFAULT_SINGULAR_REL_EPS) -> FCoefficients:
    """f_n = (1/(2π)²)∬ e^{−i·p·n}/√S(p) d²p 的网格离散 Fourier 系数"""
    inv = inverse_sqrt(sym, rel_eps)
    coeff = np.fft.fft2(inv) / (sym.n1 * sym.n2)
    ls = np.arange(-sym.L, sym.L + 1)
    values = coeff[np.mod(ls, sym.n1)[:, None], np.mod(ls, sym.n2)[None, :]]
    return FCoefficients(L=sym.L, values=values)
