"""Named families and system specs used by the demo, the selftest and the tests."""

import logging
import math
from typing import Any, Callable

import numpy as np

from .exceptions import ParseError
from .frames.analysis import (
    FrameFamily,
    WeightedFamily,
    counterexample_cexp,
    embed_classical,
    embedded_onb,
    standard_basis,
    weighted_onb_family,
)
from .frames.hilbert import BcVector


logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)


def doubled_onb(dim: int) -> FrameFamily:
    """Every basis vector twice in both components: tight with d = 2."""
    basis = standard_basis(dim)
    return embed_classical(basis + basis)


def mixed_tight(dim: int) -> FrameFamily:
    """e_k e+ + sqrt(2) e_k e-: S = 1 e+ + 2 e- is a non-real multiple of the identity."""
    return FrameFamily(tuple(BcVector(e, SQRT2 * e) for e in standard_basis(dim)))


def weighted_onb(dim: int = 4) -> WeightedFamily:
    """Weighted ONB family with a = 2 and b = 3."""
    if dim < 3:
        raise ParseError(f"the weighted example needs dim >= 3, got {dim}")
    a_seq = [SQRT2] + [0.0] * (dim - 1)
    b_seq = [1.0, 1.0, 1.0] + [0.0] * (dim - 3)
    return weighted_onb_family(np.eye(dim, dtype=complex), a_seq, b_seq)


def riesz_family(rng: np.random.Generator, dim: int) -> FrameFamily:
    """n = d random components; nonsingular with probability one."""
    parts = rng.standard_normal((4, dim, dim))
    return FrameFamily.from_components(list(parts[0] + 1j * parts[1]), list(parts[2] + 1j * parts[3]))


def random_family(rng: np.random.Generator, dim: int, size: int) -> FrameFamily:
    parts = rng.standard_normal((4, size, dim))
    return FrameFamily.from_components(list(parts[0] + 1j * parts[1]), list(parts[2] + 1j * parts[3]))


def rank_deficient(dim: int) -> FrameFamily:
    """Plus component spans C^d, minus component misses the last axis."""
    basis = standard_basis(dim)
    minus = basis[:-1] + [basis[0]]
    return FrameFamily.from_components(basis, minus)


FRAME_FIXTURES: dict[str, Callable[[], FrameFamily]] = {
    "embedded_onb": lambda: embedded_onb(3),
    "doubled_onb": lambda: doubled_onb(3),
    "mixed_tight": lambda: mixed_tight(3),
    "weighted_onb": lambda: weighted_onb(4).family,
    "cexp": lambda: counterexample_cexp(3),
    "riesz": lambda: riesz_family(np.random.default_rng(7), 3),
    "rank_deficient": lambda: rank_deficient(3),
}


def _gabor(N: int, plus: tuple[int, int, Any], minus: tuple[int, int, Any]) -> dict[str, Any]:
    return {
        "N": N,
        "plus": {"a": plus[0], "M": plus[1], "window": plus[2]},
        "minus": {"a": minus[0], "M": minus[1], "window": minus[2]},
    }


HALF = 1 / SQRT2

GABOR_FIXTURES: dict[str, dict[str, Any]] = {
    # G = 2 everywhere, S = 8 Id
    "painless": _gabor(8, (2, 4, "indicator:4"), (2, 4, "indicator:4")),
    # min G = 0 on t = 3 mod 4
    "gap": _gabor(8, (4, 4, "indicator:3"), (4, 4, "indicator:3")),
    "delta": _gabor(8, (1, 8, "delta"), (1, 8, "delta")),
    "critical": _gabor(8, (4, 4, "indicator:4"), (4, 4, [1, 2, 1, 2, 0, 0, 0, 0])),
    # K = 32 on Z_8: leverage 1/4, plus tight at 16, minus tight at 8
    "oversampled": _gabor(8, (1, 4, "indicator:4"), (1, 4, "indicator:2")),
    # plus tight at 8, minus tight at 4
    "tight_mixed": _gabor(8, (2, 4, "indicator:4"), (2, 4, [HALF, HALF, HALF, HALF, 0, 0, 0, 0])),
    "classical": _gabor(8, (2, 4, "gaussian:1.5"), (2, 4, "gaussian:1.5")),
}

PSI_FIXTURES: dict[str, dict[str, Any]] = {
    "gaussian": {
        "plus": {"a": 1.0, "M": 2, "window": "gaussian:1"},
        "minus": {"a": 1.0, "M": 2, "window": "gaussian:1"},
    },
    "hermite": {
        "plus": {"a": 1.0, "M": 2, "window": "gaussian:1"},
        "minus": {"a": 0.5, "M": 4, "window": "hermite:1"},
    },
}


def frame_fixture(name: str) -> FrameFamily:
    try:
        builder = FRAME_FIXTURES[name]
    except KeyError:
        raise ParseError(f"unknown frame fixture {name!r}; choose from {sorted(FRAME_FIXTURES)}")
    return builder()


def gabor_fixture(name: str) -> dict[str, Any]:
    if name not in GABOR_FIXTURES:
        raise ParseError(f"unknown Gabor fixture {name!r}; choose from {sorted(GABOR_FIXTURES)}")
    return GABOR_FIXTURES[name]


def psi_fixture(name: str) -> dict[str, Any]:
    if name not in PSI_FIXTURES:
        raise ParseError(f"unknown psi fixture {name!r}; choose from {sorted(PSI_FIXTURES)}")
    return PSI_FIXTURES[name]
