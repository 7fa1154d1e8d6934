"""Bicomplex Weyl-Heisenberg systems on hyperbolic lattices.

The plus component runs a Gabor system with time step a and M+ modulations on
window g, the minus component one with time step c and M- modulations on
window h. Both are enumerated over one common (n, m) grid sized by the finer
lattice; the coarser component repeats cyclically along it.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Optional

import numpy as np

from ..exceptions import IncompatibleLattice, NotAFrame
from ..frames.analysis import (
    FRAME_RANK_TOL,
    TIGHT_REL_TOL,
    FrameFamily,
    FrameReport,
    bc_frame_report,
    counterexample_cexp,
    leverages,
    n_exact,
)
from ..frames.bicomplex import Bicomplex, Hyperbolic, modulus
from ..frames.eigen import DEFAULT_JACOBI, JacobiSettings
from ..utils.windows import WindowSpec, discrete_window
from .weyl import GaborSystem, classify, coverage, heil_walnut_check


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HyperbolicLattice:
    """
    Gamma(A, B) = Z A + Z B with A = a e+ + c e- (time steps) and
    B = b e+ + d e- (frequency steps, in DFT bins of Z_N).
    """

    A: Hyperbolic
    B: Hyperbolic

    def __post_init__(self) -> None:
        for value in (self.A.p, self.A.m, self.B.p, self.B.m):
            if not value > 0:
                raise IncompatibleLattice(f"lattice generators must lie in D+ with positive parts, got {self}")

    @classmethod
    def from_counts(cls, N: int, a: int, m_plus: int, c: int, m_minus: int) -> "HyperbolicLattice":
        """Lattice with time steps (a, c) and modulation counts (M+, M-) on Z_N."""
        for count in (m_plus, m_minus):
            if count < 1 or N % count:
                raise IncompatibleLattice(f"modulation count {count} does not divide N={N}")
        return cls(Hyperbolic(a, c), Hyperbolic(N // m_plus, N // m_minus))

    def modulations(self, N: int) -> tuple[int, int]:
        """(M+, M-) = (N / b, N / d)."""
        counts = []
        for step in (self.B.p, self.B.m):
            count = N / step
            if abs(count - round(count)) > 1e-12 or round(count) < 1:
                raise IncompatibleLattice(f"frequency step {step} does not divide N={N}")
            counts.append(int(round(count)))
        return counts[0], counts[1]

    def time_steps(self) -> tuple[int, int]:
        steps = []
        for step in (self.A.p, self.A.m):
            if abs(step - round(step)) > 1e-12:
                raise IncompatibleLattice(f"time step {step} is not an integer")
            steps.append(int(round(step)))
        return steps[0], steps[1]

    def to_dict(self) -> dict[str, Any]:
        return {"A": self.A.to_dict(), "B": self.B.to_dict()}


def _repeat_factor(coarse: int, fine: int, what: str) -> int:
    if fine % coarse:
        raise IncompatibleLattice(f"{what}: {coarse} does not divide {fine}, components cannot share one index grid")
    return fine // coarse


@dataclass(frozen=True, eq=False)
class BcGaborSystem:
    """f_{n,m} = [W(n, m) g] e+ + [W(n, m) h] e- over a common index grid."""

    plus: GaborSystem
    minus: GaborSystem
    lattice: HyperbolicLattice

    def __post_init__(self) -> None:
        if self.plus.N != self.minus.N:
            raise IncompatibleLattice(f"components live on Z_{self.plus.N} and Z_{self.minus.N}")
        # validates divisibility
        self.repetition

    @property
    def N(self) -> int:
        return self.plus.N

    @property
    def grid_shape(self) -> tuple[int, int]:
        return (
            max(self.plus.shifts, self.minus.shifts),
            max(self.plus.M, self.minus.M),
        )

    @property
    def repetition(self) -> tuple[int, int]:
        """How often each component's elements appear along the common grid."""
        shifts, mods = self.grid_shape
        plus = _repeat_factor(self.plus.shifts, shifts, "shifts") * _repeat_factor(self.plus.M, mods, "modulations")
        minus = _repeat_factor(self.minus.shifts, shifts, "shifts") * _repeat_factor(self.minus.M, mods, "modulations")
        return plus, minus

    def component_rows(self, component: GaborSystem) -> np.ndarray:
        shifts, mods = self.grid_shape
        rows = [
            component.matrix[component.index(n % component.shifts, m % component.M)]
            for n in range(shifts)
            for m in range(mods)
        ]
        return np.array(rows)

    @cached_property
    def family(self) -> FrameFamily:
        return FrameFamily.from_components(
            list(self.component_rows(self.plus)),
            list(self.component_rows(self.minus)),
            self.plus.solver,
        )

    @property
    def size(self) -> int:
        shifts, mods = self.grid_shape
        return shifts * mods

    def to_dict(self) -> dict[str, Any]:
        return {
            "N": self.N,
            "plus": self.plus.to_dict(),
            "minus": self.minus.to_dict(),
            "lattice": self.lattice.to_dict(),
            "grid_shape": list(self.grid_shape),
            "repetition": list(self.repetition),
        }


def bc_gabor_system(
    lattice: HyperbolicLattice,
    g: WindowSpec,
    h: WindowSpec,
    N: int,
    frame_tol: float = FRAME_RANK_TOL,
    tight_tol: float = TIGHT_REL_TOL,
    solver: JacobiSettings = DEFAULT_JACOBI,
) -> tuple[BcGaborSystem, FrameReport]:
    """
    Build the bc W-H system on Z_N and classify it under the given tolerances.

    Raises:
        IncompatibleLattice: When steps do not divide N or the two lattices cannot share an index grid
    """
    a, c = lattice.time_steps()
    m_plus, m_minus = lattice.modulations(N)
    plus = GaborSystem(N, a, m_plus, discrete_window(g, N), solver)
    minus = GaborSystem(N, c, m_minus, discrete_window(h, N), solver)
    sys = BcGaborSystem(plus, minus, lattice)
    report = bc_frame_report(sys.family, frame_tol, tight_tol)
    logger.info(
        f"bc Gabor system N={N} grid={sys.grid_shape}: A={report.A:.6g} B={report.B:.6g} frame={report.is_frame}"
    )
    return sys, report


@dataclass
class CombinedCoverage:
    """alpha', beta' of the combined translate sum next to the component constants."""

    alpha_prime: float
    beta_prime: float
    plus: tuple[float, float]
    minus: tuple[float, float]

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha_prime": self.alpha_prime,
            "beta_prime": self.beta_prime,
            "plus": list(self.plus),
            "minus": list(self.minus),
        }


def combined_coverage(sys: BcGaborSystem) -> CombinedCoverage:
    """min/max over t of sum_n |(T_{na} g e+ + T_{nc} h e-)(t)|^2 along the common shift grid."""
    shifts, _ = sys.grid_shape
    total = np.zeros(sys.N)
    for n in range(shifts):
        g_shift = np.roll(sys.plus.window, (n % sys.plus.shifts) * sys.plus.a)
        h_shift = np.roll(sys.minus.window, (n % sys.minus.shifts) * sys.minus.a)
        total += np.array([modulus(Bicomplex(p, m)) ** 2 for p, m in zip(g_shift, h_shift)])
    G_plus = coverage(sys.plus)
    G_minus = coverage(sys.minus)
    return CombinedCoverage(
        float(total.min()),
        float(total.max()),
        (float(G_plus.min()), float(G_plus.max())),
        (float(G_minus.min()), float(G_minus.max())),
    )


@dataclass
class GaborReport:
    """Everything the gabor command reports for one bc system."""

    system: BcGaborSystem
    frame: FrameReport
    plus_bounds: tuple[float, float]
    minus_bounds: tuple[float, float]
    bounds_compose: bool
    density_plus: float
    density_minus: float
    combined: CombinedCoverage
    heil_walnut_plus: Any
    heil_walnut_minus: Any
    critical: Optional["CriticalDensityReport"] = None

    @property
    def density_ok(self) -> bool:
        return self.density_plus >= 1 and self.density_minus >= 1

    @property
    def some_critical(self) -> bool:
        return self.system.plus.is_critical or self.system.minus.is_critical

    def to_dict(self) -> dict[str, Any]:
        return {
            "system": self.system.to_dict(),
            "frame": self.frame.to_dict(),
            "plus_bounds": list(self.plus_bounds),
            "minus_bounds": list(self.minus_bounds),
            "bounds_compose": self.bounds_compose,
            "density_plus": self.density_plus,
            "density_minus": self.density_minus,
            "density_ok": self.density_ok,
            "some_critical": self.some_critical,
            "combined_coverage": self.combined.to_dict(),
            "heil_walnut_plus": self.heil_walnut_plus.to_dict(),
            "heil_walnut_minus": self.heil_walnut_minus.to_dict(),
            "critical_density": self.critical.to_dict() if self.critical else None,
        }


def gabor_report(
    sys: BcGaborSystem,
    frame: Optional[FrameReport] = None,
    rel_tol: float = 1e-10,
    frame_tol: float = FRAME_RANK_TOL,
    tight_tol: float = TIGHT_REL_TOL,
) -> GaborReport:
    """Component bounds, their composition, densities and the painless checks."""
    frame = frame or bc_frame_report(sys.family, frame_tol, tight_tol)
    rep_plus, rep_minus = sys.repetition
    plus = classify(sys.plus, frame_tol, tight_tol).bounds
    minus = classify(sys.minus, frame_tol, tight_tol).bounds

    # enumerated components carry the repetition factor
    A = min(rep_plus * plus[0], rep_minus * minus[0])
    B = max(rep_plus * plus[1], rep_minus * minus[1])
    scale = max(B, 1.0)
    holds = abs(A - frame.A) <= rel_tol * scale and abs(B - frame.B) <= rel_tol * scale

    report = GaborReport(
        system=sys,
        frame=frame,
        plus_bounds=plus,
        minus_bounds=minus,
        bounds_compose=holds,
        density_plus=sys.plus.density,
        density_minus=sys.minus.density,
        combined=combined_coverage(sys),
        heil_walnut_plus=heil_walnut_check(sys.plus),
        heil_walnut_minus=heil_walnut_check(sys.minus),
    )
    if frame.is_frame:
        report.critical = critical_density_exactness(sys, frame, frame_tol)
    return report


@dataclass
class CriticalDensityReport:
    """Exactness of a bc W-H system against the critical-density criterion."""

    plus_critical: bool
    minus_critical: bool
    plus_basis: bool
    minus_basis: bool
    n_exact: list[int]
    is_exact: bool
    proposition_holds: Optional[bool]
    leverage_plus: tuple[float, float]
    leverage_minus: tuple[float, float]
    predicted_leverage: tuple[float, float]
    converse_failure_possible: bool
    converse_witness: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {
            "plus_critical": self.plus_critical,
            "minus_critical": self.minus_critical,
            "plus_basis": self.plus_basis,
            "minus_basis": self.minus_basis,
            "n_exact": self.n_exact,
            "is_exact": self.is_exact,
            "proposition_holds": self.proposition_holds,
            "leverage_plus": list(self.leverage_plus),
            "leverage_minus": list(self.leverage_minus),
            "predicted_leverage": list(self.predicted_leverage),
            "converse_failure_possible": self.converse_failure_possible,
            "converse_witness": self.converse_witness,
        }


def _leverage_range(rows: np.ndarray, tol: float, solver: JacobiSettings) -> tuple[float, float]:
    values = leverages(rows, tol, solver)
    return float(values.min()), float(values.max())


def _converse_witness() -> dict[str, Any]:
    family = counterexample_cexp(3)
    report = bc_frame_report(family)
    return {
        "family": "counterexample_cexp(3)",
        "is_exact": report.is_exact,
        "n_exact_plus": report.n_exact_plus,
        "n_exact_minus": report.n_exact_minus,
        "components_redundant": bool(report.n_exact_plus) and bool(report.n_exact_minus),
    }


def critical_density_exactness(
    sys: BcGaborSystem,
    frame: Optional[FrameReport] = None,
    frame_tol: float = FRAME_RANK_TOL,
) -> CriticalDensityReport:
    """
    Decide exactness by deletion and compare with critical density.

    On Z_N the frame operator of a lattice system commutes with the lattice, so
    every element has the same leverage <S^-1 g_l, g_l> = N / K. An oversampled
    component (K > N) therefore has every index removable, and the bc system is
    exact exactly when some enumerated component is a basis. A bc W-H system
    with both components redundant cannot be exact; the converse failure is
    exhibited on a general bc-frame instead.

    The criterion applies only when a critical component is enumerated once
    along the common grid; `proposition_holds` is None otherwise, in particular
    when a critical component is repeated and so is no longer a basis.

    Raises:
        NotAFrame: When the system is not a bc-frame
    """
    frame = frame or bc_frame_report(sys.family, frame_tol)
    if not frame.is_frame:
        raise NotAFrame("critical density exactness needs a bc-frame")

    rep_plus, rep_minus = sys.repetition
    plus_critical = sys.plus.is_critical
    minus_critical = sys.minus.is_critical
    plus_basis = plus_critical and rep_plus == 1
    minus_basis = minus_critical and rep_minus == 1

    removable = sorted(n_exact(sys.family, frame_tol))
    exact = not removable
    K = sys.size
    lev_plus = _leverage_range(sys.family.plus_matrix, frame_tol, sys.family.solver)
    lev_minus = _leverage_range(sys.family.minus_matrix, frame_tol, sys.family.solver)
    applicable = plus_basis or minus_basis

    logger.debug(f"critical density: removable={removable} leverage+={lev_plus} leverage-={lev_minus}")
    return CriticalDensityReport(
        plus_critical=plus_critical,
        minus_critical=minus_critical,
        plus_basis=plus_basis,
        minus_basis=minus_basis,
        n_exact=removable,
        is_exact=exact,
        proposition_holds=exact if applicable else None,
        leverage_plus=lev_plus,
        leverage_minus=lev_minus,
        predicted_leverage=(sys.N / K, sys.N / K),
        converse_failure_possible=False,
        converse_witness=_converse_witness(),
    )

