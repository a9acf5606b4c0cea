from src.ortho.ont import default_ont_grid, ont_filter, ont_seed, slice_weight_coefficients
from src.ortho.symbol import FCoefficients, SymbolGrid, f_coefficients, inverse_sqrt, symbol

__all__ = [
    "FCoefficients",
    "SymbolGrid",
    "default_ont_grid",
    "f_coefficients",
    "inverse_sqrt",
    "ont_filter",
    "ont_seed",
    "slice_weight_coefficients",
    "symbol",
]
