from src.overlap.lattice import OverlapLattice, check_monc, check_onc, check_sampled_window, overlap_lattice

__all__ = ["OverlapLattice", "check_monc", "check_onc", "check_sampled_window", "overlap_lattice"]
