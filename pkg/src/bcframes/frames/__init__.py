"""Bicomplex numbers, the bc Hilbert module, frame analysis and frame operators."""

from .bicomplex import Bicomplex, Hyperbolic, E_MINUS, E_PLUS
from .hilbert import BcVector, inner_bc, norm_bc
from .analysis import FrameFamily, FrameReport, bc_frame_report, n_exact
from .operator import BcFrameOperator, canonical_dual, frame_operator

__all__ = [
    "Bicomplex",
    "Hyperbolic",
    "E_PLUS",
    "E_MINUS",
    "BcVector",
    "inner_bc",
    "norm_bc",
    "FrameFamily",
    "FrameReport",
    "bc_frame_report",
    "n_exact",
    "BcFrameOperator",
    "canonical_dual",
    "frame_operator",
]
