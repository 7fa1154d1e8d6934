"""The bc-frame operator S = S+ e+ + S- e-, its inverse, canonical duals and reconstruction."""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, NamedTuple, Optional, Sequence

import numpy as np

from ..exceptions import DimensionMismatch, LengthMismatch, NotInvertible, ParseError
from .analysis import FRAME_RANK_TOL, FrameFamily, is_frame_bounds
from .bicomplex import Bicomplex, Hyperbolic, modulus
from .eigen import DEFAULT_JACOBI, Eigensystem, JacobiSettings, hermitian_asymmetry, jacobi_eigh
from .hilbert import BcVector, inner_bc, norm_bc


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CoefficientSequence:
    """c_n = alpha_n e+ + beta_n e- for n = 0..len-1, stored by idempotent parts."""

    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self) -> None:
        alpha = np.asarray(self.alpha, dtype=complex).reshape(-1)
        beta = np.asarray(self.beta, dtype=complex).reshape(-1)
        if alpha.size != beta.size:
            raise LengthMismatch(f"idempotent parts differ in length: {alpha.size} != {beta.size}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @classmethod
    def from_values(cls, values: Sequence[Bicomplex]) -> "CoefficientSequence":
        return cls(np.array([c.alpha for c in values]), np.array([c.beta for c in values]))

    @classmethod
    def unit(cls, length: int, k: int) -> "CoefficientSequence":
        e = np.zeros(length, dtype=complex)
        e[k] = 1.0
        return cls(e, e.copy())

    def __len__(self) -> int:
        return self.alpha.size

    @property
    def values(self) -> list[Bicomplex]:
        return [Bicomplex(a, b) for a, b in zip(self.alpha, self.beta)]

    def inner(self, other: "CoefficientSequence") -> Bicomplex:
        """l^2 product sum c_n (c'_n)^*."""
        if len(self) != len(other):
            raise LengthMismatch(f"sequences differ in length: {len(self)} != {len(other)}")
        return Bicomplex(np.vdot(other.alpha, self.alpha), np.vdot(other.beta, self.beta))

    def to_list(self) -> list[list[float]]:
        return [c.to_list() for c in self.values]

    @classmethod
    def from_list(cls, data: Sequence[Sequence[float]]) -> "CoefficientSequence":
        try:
            return cls.from_values([Bicomplex.from_list(item) for item in data])
        except TypeError as e:
            raise ParseError(f"malformed coefficient sequence: {e}") from e


@dataclass(frozen=True, eq=False)
class BcFrameOperator:
    """Pair of d x d Hermitian positive semidefinite matrices acting on each component."""

    s_plus: np.ndarray
    s_minus: np.ndarray
    solver: JacobiSettings = DEFAULT_JACOBI

    def __post_init__(self) -> None:
        s_plus = np.asarray(self.s_plus, dtype=complex)
        s_minus = np.asarray(self.s_minus, dtype=complex)
        if s_plus.shape != s_minus.shape or s_plus.ndim != 2 or s_plus.shape[0] != s_plus.shape[1]:
            raise DimensionMismatch(f"component operators have shapes {s_plus.shape} and {s_minus.shape}")
        object.__setattr__(self, "s_plus", s_plus)
        object.__setattr__(self, "s_minus", s_minus)

    @classmethod
    def scalar(cls, d: Hyperbolic, dim: int) -> "BcFrameOperator":
        """d Id for a hyperbolic d = p e+ + m e-."""
        eye = np.eye(dim, dtype=complex)
        return cls(d.p * eye, d.m * eye)

    @property
    def dim(self) -> int:
        return self.s_plus.shape[0]

    @cached_property
    def eig_plus(self) -> Eigensystem:
        return jacobi_eigh(self.s_plus, *self.solver)

    @cached_property
    def eig_minus(self) -> Eigensystem:
        return jacobi_eigh(self.s_minus, *self.solver)

    def hermitian_residual(self) -> float:
        return max(hermitian_asymmetry(self.s_plus), hermitian_asymmetry(self.s_minus))

    def apply(self, f: BcVector) -> BcVector:
        """S f = S+ f+ e+ + S- f- e-."""
        if f.dim != self.dim:
            raise DimensionMismatch(f"vector has dimension {f.dim}, operator has {self.dim}")
        return BcVector(self.s_plus @ f.plus, self.s_minus @ f.minus)

    def is_invertible(self, tol: float = FRAME_RANK_TOL) -> bool:
        return all(
            is_frame_bounds(float(e.values[0]), float(e.values[-1]), tol)
            for e in (self.eig_plus, self.eig_minus)
        )

    def deviation_from_scalar(self, d: Hyperbolic) -> float:
        """max |S+/- - d+/- Id| entrywise."""
        eye = np.eye(self.dim)
        return float(max(np.max(np.abs(self.s_plus - d.p * eye)), np.max(np.abs(self.s_minus - d.m * eye))))

    def to_dict(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "eigenvalues_plus": [float(x) for x in self.eig_plus.values],
            "eigenvalues_minus": [float(x) for x in self.eig_minus.values],
            "hermitian_residual": self.hermitian_residual(),
        }


def _check_dim(family: FrameFamily, f: BcVector) -> None:
    if f.dim != family.dim:
        raise DimensionMismatch(f"vector has dimension {f.dim}, frame has {family.dim}")


def analysis(family: FrameFamily, f: BcVector) -> CoefficientSequence:
    """T f = (<f, f_n>)_n, computed as T+ f+ e+ + T- f- e-."""
    _check_dim(family, f)
    return CoefficientSequence(family.plus_matrix.conj() @ f.plus, family.minus_matrix.conj() @ f.minus)


def synthesis(family: FrameFamily, c: CoefficientSequence) -> BcVector:
    """T^adj c = sum_n c_n f_n."""
    if len(c) != len(family):
        raise LengthMismatch(f"{len(c)} coefficients for a family of {len(family)}")
    return BcVector(c.alpha @ family.plus_matrix, c.beta @ family.minus_matrix)


def frame_operator(family: FrameFamily) -> BcFrameOperator:
    """Assemble S+/- = sum f_n+/- (f_n+/-)^H, reusing the family's eigensystems."""
    op = BcFrameOperator(family.s_plus, family.s_minus, family.solver)
    op.__dict__["eig_plus"] = family.eig_plus
    op.__dict__["eig_minus"] = family.eig_minus
    return op


def apply(op: BcFrameOperator, f: BcVector) -> BcVector:
    return op.apply(f)


def quadratic_form(op: BcFrameOperator, f: BcVector) -> Bicomplex:
    """
    <S f, f>, hyperbolic valued.

    For a frame operator this is (sum |<f+, f_n+>|^2) e+ + (sum |<f-, f_n->|^2) e-;
    half the sum of its idempotent parts is the real sum sum_n |<f, f_n>|^2.
    """
    return inner_bc(op.apply(f), f)


def _component_inverse(eig: Eigensystem) -> np.ndarray:
    v = eig.vectors
    return (v / eig.values) @ v.conj().T


def invert(op: BcFrameOperator, tol: float = FRAME_RANK_TOL) -> BcFrameOperator:
    """
    Componentwise inverse through the cached eigensystems.

    Raises:
        NotInvertible: When a component's smallest eigenvalue is at or below the threshold
    """
    for name, eig in (("plus", op.eig_plus), ("minus", op.eig_minus)):
        if not is_frame_bounds(float(eig.values[0]), float(eig.values[-1]), tol):
            raise NotInvertible(
                f"{name} component is singular (smallest eigenvalue {eig.values[0]:.3e}); not a bc-frame"
            )
    return BcFrameOperator(_component_inverse(op.eig_plus), _component_inverse(op.eig_minus), op.solver)


def canonical_dual(family: FrameFamily, tol: float = FRAME_RANK_TOL) -> FrameFamily:
    """g_n = S^-1 f_n."""
    inverse = invert(frame_operator(family), tol)
    return FrameFamily(tuple(inverse.apply(v) for v in family), family.solver)


def operator_norm(op: BcFrameOperator) -> float:
    """Norm with respect to ||.||_bc: the largest eigenvalue over both components."""
    return float(max(abs(op.eig_plus.values).max(), abs(op.eig_minus.values).max()))


class NormEstimate(NamedTuple):
    estimate: float
    bound: float
    iterations: int
    holds: bool


def operator_norm_estimate(
    op: BcFrameOperator,
    rng: Optional[np.random.Generator] = None,
    max_iterations: int = 2000,
    tol: float = 1e-12,
) -> NormEstimate:
    """
    Check ||S||^2 <= max(||S+||^2, ||S-||^2) with ||S|| measured by power iteration.

    The estimate is sup ||S f||_bc / ||f||_bc over the power iterates of a random
    start and never touches the eigensystems; the bound comes from the component
    spectra. The ratios increase towards ||S|| from below.
    """
    rng = rng or np.random.default_rng(0)
    d = op.dim
    x = rng.standard_normal(2 * d) + 1j * rng.standard_normal(2 * d)
    x /= np.linalg.norm(x)

    estimate = 0.0
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        y = np.concatenate([op.s_plus @ x[:d], op.s_minus @ x[d:]])
        ratio = float(np.linalg.norm(y))
        if ratio == 0.0:
            break
        converged = ratio - estimate <= 1e-15 * ratio
        estimate = max(estimate, ratio)
        x = y / ratio
        if converged:
            break

    bound = float(max(abs(op.eig_plus.values).max(), abs(op.eig_minus.values).max()))
    logger.debug(f"Power iteration: ||S|| >= {estimate:.12g} after {iterations} steps, bound {bound:.12g}")
    return NormEstimate(estimate, bound, iterations, estimate ** 2 <= bound ** 2 * (1 + tol))


def self_adjoint_residual(op: BcFrameOperator, f: BcVector, g: BcVector) -> float:
    """|<S f, g> - <f, S g>|."""
    return modulus(inner_bc(op.apply(f), g) - inner_bc(f, op.apply(g)))


def reconstruct(family: FrameFamily, dual: FrameFamily, f: BcVector) -> BcVector:
    """sum_n <f, g_n> f_n with (g_n) the given dual."""
    return synthesis(family, analysis(dual, f))


class ReconstructionResidual(NamedTuple):
    primal: float
    dual: float

    @property
    def worst(self) -> float:
        return max(self.primal, self.dual)


def reconstruction_residual(
    family: FrameFamily,
    dual: FrameFamily,
    f: BcVector,
) -> ReconstructionResidual:
    """
    Relative errors of both reconstruction formulas.

    primal: ||f - sum <f, g_n> f_n|| / ||f||
    dual:   ||f - sum <f, f_n> g_n|| / ||f||
    """
    scale = norm_bc(f) or 1.0
    primal = norm_bc(f - reconstruct(family, dual, f)) / scale
    via_dual = norm_bc(f - reconstruct(dual, family, f)) / scale
    return ReconstructionResidual(primal, via_dual)


def worst_reconstruction(
    family: FrameFamily,
    signals: Sequence[BcVector],
    dual: Optional[FrameFamily] = None,
) -> float:
    dual = dual or canonical_dual(family)
    worst = max((reconstruction_residual(family, dual, f).worst for f in signals), default=0.0)
    logger.debug(f"Worst reconstruction residual over {len(signals)} signals: {worst:.3e}")
    return worst
