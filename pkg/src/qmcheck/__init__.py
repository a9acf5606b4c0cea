from src.qmcheck.kernels import BaseKernel, Evaluator, KernelFactory, KernelVariant, inverse_transform
from src.qmcheck.overlap2d import (
    KernelModel,
    QuadSettings,
    crosscheck,
    grid_inner,
    ground_state,
    hermite_state,
    kernel,
    overlap2d,
    translate_wavefunction,
    wavefunction,
    wavefunction_evaluator,
)

__all__ = [
    "BaseKernel",
    "Evaluator",
    "KernelFactory",
    "KernelModel",
    "KernelVariant",
    "QuadSettings",
    "crosscheck",
    "grid_inner",
    "ground_state",
    "hermite_state",
    "inverse_transform",
    "kernel",
    "overlap2d",
    "translate_wavefunction",
    "wavefunction",
    "wavefunction_evaluator",
]
