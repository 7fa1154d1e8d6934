"""Discrete Weyl-Heisenberg (Gabor) systems on the cyclic group Z_N.

The Weyl operator with time step a and M modulations acts by

    W(n, m) g (t) = exp(2 pi i m t / M) g((t - n a) mod N),

for 0 <= n < N/a and 0 <= m < M. The system G(a, M, g) has (N/a) M elements.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, NamedTuple, Optional

import numpy as np

from ..exceptions import IncompatibleLattice, IndexOutOfRange
from ..frames.analysis import FRAME_RANK_TOL, TIGHT_REL_TOL, component_frame_operator, is_frame_bounds
from ..frames.eigen import DEFAULT_JACOBI, Eigensystem, JacobiSettings, jacobi_eigh
from ..utils.windows import describe


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GaborSystem:
    """Window g on Z_N with time step a and M modulations."""

    N: int
    a: int
    M: int
    window: np.ndarray
    solver: JacobiSettings = DEFAULT_JACOBI

    def __post_init__(self) -> None:
        window = np.asarray(self.window, dtype=complex).reshape(-1)
        if self.N < 1 or window.size != self.N:
            raise IncompatibleLattice(f"window has {window.size} samples but N={self.N}")
        if self.a < 1 or self.N % self.a:
            raise IncompatibleLattice(f"time step a={self.a} does not divide N={self.N}")
        if self.M < 1 or self.N % self.M:
            raise IncompatibleLattice(f"modulation count M={self.M} does not divide N={self.N}")
        object.__setattr__(self, "window", window)

    @property
    def shifts(self) -> int:
        """N / a."""
        return self.N // self.a

    @property
    def size(self) -> int:
        return self.shifts * self.M

    @property
    def density(self) -> float:
        """Elements per dimension, (N/a) M / N = M / a."""
        return self.M / self.a

    @property
    def is_critical(self) -> bool:
        return self.M == self.a

    def index(self, n: int, m: int) -> int:
        """Row of W(n, m) g in `matrix`."""
        return n * self.M + m

    @cached_property
    def matrix(self) -> np.ndarray:
        """size x N array with rows W(n, m) g ordered by (n, m)."""
        t = np.arange(self.N)
        rows = np.empty((self.size, self.N), dtype=complex)
        for n in range(self.shifts):
            shifted = np.roll(self.window, n * self.a)
            for m in range(self.M):
                rows[self.index(n, m)] = np.exp(2j * np.pi * m * t / self.M) * shifted
        return rows

    @cached_property
    def frame_operator(self) -> np.ndarray:
        return component_frame_operator(self.matrix)

    @cached_property
    def eigensystem(self) -> Eigensystem:
        return jacobi_eigh(self.frame_operator, *self.solver)

    def to_dict(self) -> dict[str, Any]:
        return {
            "N": self.N,
            "a": self.a,
            "M": self.M,
            "window": describe(self.window),
        }


def weyl_operator(sys: GaborSystem, n: int, m: int, vector: np.ndarray) -> np.ndarray:
    """Apply W(n, m) to an arbitrary vector; n is taken mod N/a and m mod M."""
    t = np.arange(sys.N)
    shift = (n % sys.shifts) * sys.a
    return np.exp(2j * np.pi * (m % sys.M) * t / sys.M) * np.roll(np.asarray(vector, dtype=complex), shift)


def weyl_apply(sys: GaborSystem, n: int, m: int) -> np.ndarray:
    """
    W(n, m) g.

    Raises:
        IndexOutOfRange: Unless 0 <= n < N/a and 0 <= m < M
    """
    if not (0 <= n < sys.shifts and 0 <= m < sys.M):
        raise IndexOutOfRange(f"(n, m)=({n}, {m}) outside [0, {sys.shifts}) x [0, {sys.M})")
    return weyl_operator(sys, n, m, sys.window)


def weyl_matrix(sys: GaborSystem, n: int, m: int) -> np.ndarray:
    """N x N unitary matrix of W(n, m)."""
    return np.column_stack([weyl_operator(sys, n, m, e) for e in np.eye(sys.N)])


def commutation_phase(sys: GaborSystem, n: int, m: int, n2: int, m2: int) -> complex:
    """The unit scalar c with W(n2, m2) W(n, m) = c W(n + n2, m + m2)."""
    return complex(np.exp(-2j * np.pi * m * n2 * sys.a / sys.M))


def gabor_frame_bounds(sys: GaborSystem) -> tuple[float, float]:
    """Optimal bounds: extreme eigenvalues of the N x N frame operator."""
    values = sys.eigensystem.values
    return max(float(values[0]), 0.0), max(float(values[-1]), 0.0)


def coverage(sys: GaborSystem) -> np.ndarray:
    """G(t) = sum_n |g(t - n a)|^2."""
    power = np.abs(sys.window) ** 2
    return np.sum([np.roll(power, n * sys.a) for n in range(sys.shifts)], axis=0)


def cyclic_support_length(window: np.ndarray, tol: float = 0.0) -> int:
    """Length of the shortest cyclic interval containing the support of the window."""
    support = np.flatnonzero(np.abs(window) > tol)
    if support.size == 0:
        return 0
    N = np.asarray(window).size
    gaps = np.diff(np.concatenate([support, [support[0] + N]]))
    return int(N - gaps.max() + 1)


@dataclass
class HeilWalnutCheck:
    """The painless sufficient condition next to the eigenvalue answer."""

    applicable: bool
    support_length: int
    alpha: float
    beta: float
    predicted: Optional[tuple[float, float]]
    computed: tuple[float, float]
    matches: Optional[bool]
    diagonal_residual: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "applicable": self.applicable,
            "support_length": self.support_length,
            "alpha": self.alpha,
            "beta": self.beta,
            "predicted": list(self.predicted) if self.predicted else None,
            "computed": list(self.computed),
            "matches": self.matches,
            "diagonal_residual": self.diagonal_residual,
        }


def heil_walnut_check(sys: GaborSystem, rel_tol: float = 1e-10) -> HeilWalnutCheck:
    """
    Discrete painless condition.

    When the cyclic support of g has length at most M, the frame operator is
    diagonal with entries M G(t), so the optimal bounds are M min G and M max G.
    """
    G = coverage(sys)
    alpha, beta = float(G.min()), float(G.max())
    support = cyclic_support_length(sys.window)
    applicable = support <= sys.M
    computed = gabor_frame_bounds(sys)

    S = sys.frame_operator
    off = S - np.diag(np.diag(S))
    trace = float(np.real(np.trace(S))) or 1.0
    diagonal_residual = float(np.sum(np.abs(off)) / trace)

    predicted = None
    matches = None
    if applicable:
        predicted = (sys.M * alpha, sys.M * beta)
        scale = max(computed[1], 1.0)
        matches = (
            abs(predicted[0] - computed[0]) <= rel_tol * scale
            and abs(predicted[1] - computed[1]) <= rel_tol * scale
        )
    logger.debug(
        f"Heil-Walnut N={sys.N} a={sys.a} M={sys.M}: support={support} "
        f"G in [{alpha:.6g}, {beta:.6g}] computed={computed}"
    )
    return HeilWalnutCheck(applicable, support, alpha, beta, predicted, computed, matches, diagonal_residual)


class GaborClassification(NamedTuple):
    bounds: tuple[float, float]
    is_frame: bool
    is_tight: bool


def classify(
    sys: GaborSystem,
    frame_tol: float = FRAME_RANK_TOL,
    tight_tol: float = TIGHT_REL_TOL,
) -> GaborClassification:
    lo, hi = gabor_frame_bounds(sys)
    frame = is_frame_bounds(lo, hi, frame_tol)
    return GaborClassification((lo, hi), frame, frame and abs(hi - lo) <= tight_tol * hi)
