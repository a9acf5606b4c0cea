from src.seedfn.base import A, OMEGA0, Domain, LatticeParams, SeedFunction, SeedKind, Segment
from src.seedfn.ops import cell_seed, evaluate, evaluate_units, fourier, l2_norm_sq, sample_seed, scaled
from src.seedfn.presets import SeedPresetFactory
from src.seedfn.spec import load_seed_spec, parse_seed_spec, resolve_seed, seed_digest, seed_to_dict

__all__ = [
    "A",
    "OMEGA0",
    "Domain",
    "LatticeParams",
    "SeedFunction",
    "SeedKind",
    "SeedPresetFactory",
    "Segment",
    "cell_seed",
    "evaluate",
    "evaluate_units",
    "fourier",
    "l2_norm_sq",
    "load_seed_spec",
    "parse_seed_spec",
    "resolve_seed",
    "sample_seed",
    "scaled",
    "seed_digest",
    "seed_to_dict",
]
