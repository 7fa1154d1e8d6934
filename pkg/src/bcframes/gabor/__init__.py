"""Discrete Weyl-Heisenberg systems, hyperbolic lattices and the hyperbolic-plane psi system."""

from .weyl import GaborSystem, gabor_frame_bounds, heil_walnut_check, weyl_apply
from .lattice import BcGaborSystem, HyperbolicLattice, bc_gabor_system, critical_density_exactness
from .plane import HyperbolicPlaneSystem, LineGabor, psi_system_analysis

__all__ = [
    "GaborSystem",
    "gabor_frame_bounds",
    "heil_walnut_check",
    "weyl_apply",
    "BcGaborSystem",
    "HyperbolicLattice",
    "bc_gabor_system",
    "critical_density_exactness",
    "HyperbolicPlaneSystem",
    "LineGabor",
    "psi_system_analysis",
]
