"""The psi_M system on the hyperbolic plane: Bessel but not a bc-frame.

Points of the hyperbolic plane are x e+ + y e-, identified with (x, y) in R^2.
Given line Gabor systems W_{na, mb} g and W_{nc, md} h, the system is

    psi_M(x e+ + y e-) = exp(-y^2/2) [W_{na, mb} g](x) e+ + exp(-x^2/2) [W_{nc, md} h](y) e-

over a common index grid M = (n, m). Every plus element is a multiple of
exp(-y^2/2) in y, so any Phi whose plus part is orthogonal to that Gaussian in
y (and likewise for the minus part in x) has all coefficients zero: the lower
frame inequality fails. The upper (Bessel) inequality holds with a finite
constant.

Test functions are finite sums of separable terms p(x) q(y), so every inner
product factors into 1-D trapezoid quadratures.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Any, Optional, Sequence

import numpy as np

from ..exceptions import ParseError, QuadratureTooCoarse
from ..frames.bicomplex import Bicomplex, modulus
from ..frames.hilbert import WeightedGrid
from ..utils.quadrature import gaussian_half_width, tensor_grid, trapezoid_rule
from ..utils.windows import WindowSpec, line_window
from .hermite import HERMITE_ORDER_CAP, hermite_function, orthonormality_residual


logger = logging.getLogger(__name__)

ORTHONORMALITY_LIMIT = 1e-6
SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class LineGabor:
    """Line Gabor parameters: time step a, redundancy M (frequency step 2 pi / (M a)), window."""

    a: float
    M: int
    window: WindowSpec = "gaussian:1"

    def __post_init__(self) -> None:
        if not self.a > 0 or self.M < 1:
            raise ParseError(f"line Gabor system needs a > 0 and M >= 1, got a={self.a}, M={self.M}")
        if not isinstance(self.window, str):
            raise ParseError("line windows must be presets such as 'gaussian:1' or 'hermite:2'")

    @property
    def frequency_step(self) -> float:
        return 2 * math.pi / (self.M * self.a)

    def to_dict(self) -> dict[str, Any]:
        return {"a": self.a, "M": self.M, "b": self.frequency_step, "window": self.window}


@dataclass(frozen=True)
class SeparableTerm:
    """coef * p(x) * q(y), with p and q sampled on the 1-D grid."""

    p: np.ndarray
    q: np.ndarray
    coef: complex = 1.0


@dataclass(frozen=True)
class PlaneFunction:
    """Phi = Phi+ e+ + Phi- e-, each part a sum of separable terms."""

    plus: tuple[SeparableTerm, ...]
    minus: tuple[SeparableTerm, ...]
    label: str = ""


@dataclass(frozen=True, eq=False)
class HyperbolicPlaneSystem:
    """psi_M over [-T, T]^2 with trapezoid quadrature."""

    plus: LineGabor
    minus: LineGabor
    half_width: float = 8.0
    points: int = 257
    frequency_cutoff: float = 10.0
    hermite_order_cap: int = HERMITE_ORDER_CAP

    def __post_init__(self) -> None:
        # exp(-x^2/2) must fall below 1e-8 inside the box
        needed = gaussian_half_width(0.5, 1e-8)
        if self.half_width < needed:
            raise QuadratureTooCoarse(
                f"half width {self.half_width} leaves a Gaussian tail above 1e-8 (need >= {needed:.3f})"
            )

    @cached_property
    def rule(self) -> tuple[np.ndarray, np.ndarray]:
        return trapezoid_rule(-self.half_width, self.half_width, self.points)

    @property
    def x(self) -> np.ndarray:
        return self.rule[0]

    @property
    def w(self) -> np.ndarray:
        return self.rule[1]

    @cached_property
    def grid(self) -> WeightedGrid:
        nodes, weights = tensor_grid(-self.half_width, self.half_width, self.points, 2)
        return WeightedGrid(nodes, weights, 0.0, "plane")

    @cached_property
    def gaussian(self) -> np.ndarray:
        return np.exp(-(self.x ** 2) / 2)

    @cached_property
    def indices(self) -> list[tuple[int, int]]:
        T, omega = self.half_width, self.frequency_cutoff
        n_max = max(int(T // self.plus.a), int(T // self.minus.a))
        m_max = max(int(omega // self.plus.frequency_step), int(omega // self.minus.frequency_step))
        return [(n, m) for n in range(-n_max, n_max + 1) for m in range(-m_max, m_max + 1)]

    def _atoms(self, line: LineGabor) -> np.ndarray:
        b = line.frequency_step
        rows = [
            np.exp(1j * m * b * self.x) * line_window(line.window, self.x - n * line.a)
            for n, m in self.indices
        ]
        return np.array(rows)

    @cached_property
    def atoms_plus(self) -> np.ndarray:
        """K x P samples of W_{na, mb} g on the x grid."""
        return self._atoms(self.plus)

    @cached_property
    def atoms_minus(self) -> np.ndarray:
        """K x P samples of W_{nc, md} h on the y grid."""
        return self._atoms(self.minus)

    def hermite(self, u: int) -> np.ndarray:
        return hermite_function(u, self.x, self.hermite_order_cap)

    def refined(self) -> "HyperbolicPlaneSystem":
        """Same system with the grid spacing halved."""
        return replace(self, points=2 * (self.points - 1) + 1)

    def to_dict(self) -> dict[str, Any]:
        return {
            "plus": self.plus.to_dict(),
            "minus": self.minus.to_dict(),
            "half_width": self.half_width,
            "points": self.points,
            "frequency_cutoff": self.frequency_cutoff,
            "hermite_order_cap": self.hermite_order_cap,
            "elements": len(self.indices),
        }


def _line_inner(sys: HyperbolicPlaneSystem, u: np.ndarray, v: np.ndarray) -> complex:
    return complex(np.sum(sys.w * u * np.conj(v)))


def coefficients(sys: HyperbolicPlaneSystem, phi: PlaneFunction) -> tuple[np.ndarray, np.ndarray]:
    """Idempotent parts of <Phi, psi_M> for every index M."""
    weighted_plus = (sys.atoms_plus.conj() * sys.w)
    weighted_minus = (sys.atoms_minus.conj() * sys.w)
    plus = np.zeros(len(sys.indices), dtype=complex)
    for term in phi.plus:
        # <p, W g>_x <q, exp(-y^2/2)>_y
        plus += term.coef * (weighted_plus @ term.p) * _line_inner(sys, term.q, sys.gaussian)
    minus = np.zeros(len(sys.indices), dtype=complex)
    for term in phi.minus:
        minus += term.coef * _line_inner(sys, term.p, sys.gaussian) * (weighted_minus @ term.q)
    return plus, minus


def _part_norm_squared(sys: HyperbolicPlaneSystem, terms: Sequence[SeparableTerm]) -> float:
    total = 0.0 + 0.0j
    for s in terms:
        for t in terms:
            total += s.coef * np.conj(t.coef) * _line_inner(sys, s.p, t.p) * _line_inner(sys, s.q, t.q)
    return float(total.real)


def plane_norm_squared(sys: HyperbolicPlaneSystem, phi: PlaneFunction) -> float:
    """||Phi||^2 = (||Phi+||^2 + ||Phi-||^2) / 2."""
    return (_part_norm_squared(sys, phi.plus) + _part_norm_squared(sys, phi.minus)) / 2


def coefficient_sum(sys: HyperbolicPlaneSystem, phi: PlaneFunction) -> float:
    """sum_M |<Phi, psi_M>|^2 with the bicomplex modulus."""
    plus, minus = coefficients(sys, phi)
    return float(sum(modulus(Bicomplex(p, m)) ** 2 for p, m in zip(plus, minus)))


def probe_panel(sys: HyperbolicPlaneSystem) -> list[PlaneFunction]:
    """Separable test functions for the Bessel estimate."""
    h = sys.hermite
    x = sys.x
    bump = np.exp(-((x - 1) ** 2) / 2) * np.exp(1j * x)
    shifted = np.exp(-((x + 1) ** 2) / 2)
    return [
        PlaneFunction((SeparableTerm(h(0), h(0)),), (SeparableTerm(h(0), h(0)),), "h0*h0"),
        PlaneFunction((SeparableTerm(h(1), h(0)),), (SeparableTerm(h(0), h(2)),), "h1*h0 | h0*h2"),
        PlaneFunction(
            (SeparableTerm(h(2), h(1)), SeparableTerm(h(0), h(0), 0.5)),
            (SeparableTerm(h(3), h(0)),),
            "h2*h1 + h0*h0/2 | h3*h0",
        ),
        PlaneFunction((SeparableTerm(bump, h(0)),), (SeparableTerm(h(0), shifted),), "modulated bumps"),
    ]


def witness(sys: HyperbolicPlaneSystem, u: int) -> PlaneFunction:
    """(h_u * h_1) e+ + (h_1 * h_u) e-: orthogonal to every psi_M."""
    return PlaneFunction(
        (SeparableTerm(sys.hermite(u), sys.hermite(1)),),
        (SeparableTerm(sys.hermite(1), sys.hermite(u)),),
        f"witness u={u}",
    )


def bessel_constant(sys: HyperbolicPlaneSystem, panel: Optional[list[PlaneFunction]] = None) -> tuple[float, list[float]]:
    """max over the panel of sum_M |<Phi, psi_M>|^2 / ||Phi||^2."""
    panel = panel or probe_panel(sys)
    ratios = [coefficient_sum(sys, phi) / plane_norm_squared(sys, phi) for phi in panel]
    return max(ratios), ratios


@dataclass
class IdentityRow:
    """sum_M |<h_u * h_v, exp(-y^2/2) W g>|^2 by 2-D quadrature against sqrt(pi) delta_v0 sum |<h_u, W g>|^2."""

    u: int
    v: int
    left: float
    right: float
    right_pi_convention: float
    rel_error: float
    closed_form: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "u": self.u,
            "v": self.v,
            "left": self.left,
            "right": self.right,
            "right_pi_convention": self.right_pi_convention,
            "rel_error": self.rel_error,
            "closed_form": self.closed_form,
        }


def _is_unit_gaussian(spec: WindowSpec) -> bool:
    name, _, arg = str(spec).partition(":")
    if name.strip().lower() != "gaussian":
        return False
    try:
        return float(arg or 1) == 1.0
    except ValueError:
        return False


def gaussian_line_sum(sys: HyperbolicPlaneSystem, u: int) -> float:
    """
    sum_M |<h_u, W_{na, mb} h_0>|^2 in closed form.

    With the window h_0 every term is exp(-r) r^u / u! where r = ((na)^2 + (mb)^2) / 2.
    """
    line = sys.plus
    b = line.frequency_step
    r = np.array([((n * line.a) ** 2 + (m * b) ** 2) / 2 for n, m in sys.indices])
    return float(np.sum(np.exp(-r) * r ** u) / math.factorial(u))


def hermite_identity(sys: HyperbolicPlaneSystem, u: int, v: int) -> IdentityRow:
    """
    Check the Hermite tensor identity for the plus component.

    The left side integrates h_u(x) h_v(y) against every psi_M+ on the full 2-D
    grid. The right side is |<h_v, exp(-y^2/2)>|^2 = sqrt(pi) delta_v0 times
    sum_M |<h_u, W g>|^2, taken in closed form when g is the unit Gaussian and
    by 1-D quadrature otherwise (`closed_form` says which). The constant
    written as pi belongs to the unnormalized Gaussian convention and is
    reported next to it.
    """
    hx = sys.hermite(u)
    hy = sys.hermite(v)
    phi2d = np.outer(hx, hy)
    # (K x P) @ (P x P) @ (P): full 2-D trapezoid sum per element
    left_coeffs = (sys.atoms_plus.conj() * sys.w) @ phi2d @ (sys.w * sys.gaussian)
    left = float(np.sum(np.abs(left_coeffs) ** 2))

    closed = _is_unit_gaussian(sys.plus.window)
    if closed:
        line_sum = gaussian_line_sum(sys, u)
    else:
        line = (sys.atoms_plus.conj() * sys.w) @ hx
        line_sum = float(np.sum(np.abs(line) ** 2))
    delta = 1.0 if v == 0 else 0.0
    right = SQRT_PI * line_sum * delta
    scale = max(abs(right), 1e-300)
    rel_error = abs(left - right) / scale if right else abs(left)
    return IdentityRow(u, v, left, right, math.pi * line_sum * delta, rel_error, closed)


@dataclass
class WitnessRow:
    u: int
    max_inner: float
    coefficient_sum: float
    norm: float

    def to_dict(self) -> dict[str, Any]:
        return {"u": self.u, "max_inner": self.max_inner, "coefficient_sum": self.coefficient_sum, "norm": self.norm}


@dataclass
class PsiAnalysis:
    """Bessel constant with its refinement check and the non-frame witness table."""

    bessel_bound: float
    bessel_bound_refined: float
    bessel_variation: float
    panel_ratios: list[float]
    witnesses: list[WitnessRow]
    identities: list[IdentityRow]
    orthonormality_residual: float
    lower_bound_fails: bool
    system: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "bessel_bound": self.bessel_bound,
            "bessel_bound_refined": self.bessel_bound_refined,
            "bessel_variation": self.bessel_variation,
            "panel_ratios": self.panel_ratios,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "identities": [r.to_dict() for r in self.identities],
            "orthonormality_residual": self.orthonormality_residual,
            "lower_bound_fails": self.lower_bound_fails,
            "system": self.system,
        }


def psi_system_analysis(
    sys: HyperbolicPlaneSystem,
    witness_tol: float = 1e-6,
    identity_orders: Sequence[int] = (0, 1, 2),
) -> PsiAnalysis:
    """
    Bessel estimate, non-frame witnesses and the Hermite identity.

    Raises:
        QuadratureTooCoarse: When Hermite orthonormality on the grid is off by more than 1e-6
    """
    residual = orthonormality_residual(sys.x, sys.w, sys.hermite_order_cap)
    if residual > ORTHONORMALITY_LIMIT:
        raise QuadratureTooCoarse(f"Hermite orthonormality residual {residual:.3e} exceeds {ORTHONORMALITY_LIMIT}")

    bound, ratios = bessel_constant(sys)
    fine = sys.refined()
    bound_refined, _ = bessel_constant(fine)
    variation = abs(bound_refined - bound) / bound

    witnesses = []
    for u in range(sys.hermite_order_cap + 1):
        phi = witness(sys, u)
        plus, minus = coefficients(sys, phi)
        max_inner = max(modulus(Bicomplex(p, m)) for p, m in zip(plus, minus))
        witnesses.append(WitnessRow(
            u=u,
            max_inner=float(max_inner),
            coefficient_sum=coefficient_sum(sys, phi),
            norm=math.sqrt(plane_norm_squared(sys, phi)),
        ))

    identities = []
    for u in identity_orders:
        for v in (0, 1):
            identities.append(hermite_identity(sys, u, v))

    fails = all(w.max_inner <= witness_tol and abs(w.norm - 1) <= 1e-6 for w in witnesses)
    logger.info(
        f"psi system: {len(sys.indices)} elements, Bessel {bound:.6g} (refined {bound_refined:.6g}), "
        f"witness max {max(w.max_inner for w in witnesses):.3e}"
    )
    return PsiAnalysis(
        bessel_bound=bound,
        bessel_bound_refined=bound_refined,
        bessel_variation=variation,
        panel_ratios=ratios,
        witnesses=witnesses,
        identities=identities,
        orthonormality_residual=residual,
        lower_bound_fails=fails,
        system=sys.to_dict(),
    )
