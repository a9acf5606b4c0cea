from src.cascade.refine import (
    CascadeResult,
    SampledFunction,
    cascade_scaling,
    check_translate_orthonormality,
    cross_translate_overlap,
    mother_wavelet,
    refinement_residual,
)

__all__ = [
    "CascadeResult",
    "SampledFunction",
    "cascade_scaling",
    "check_translate_orthonormality",
    "cross_translate_overlap",
    "mother_wavelet",
    "refinement_residual",
]
