"""Bicomplex Hilbert modules: finite-dimensional vectors and sampled function spaces.

A finite-dimensional module element lives in V+ (+) V- and is stored as the
pair (f+, f-) of complex coordinate vectors. The bicomplex inner product is

    <f, g> = <f+, g+> e+ + <f-, g-> e-

with the Hermitian product linear in the first entry, and the induced norm is
||f||^2 = (||f+||^2 + ||f-||^2) / 2, the real scalar part of <f, f>.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, NamedTuple, Optional

import numpy as np

from ..exceptions import DimensionMismatch, GridMismatch, ParseError
from ..utils.quadrature import tensor_grid
from .bicomplex import Bicomplex, modulus


logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class BcVector:
    """An element f = f+ e+ + f- e- of C^d (+) C^d."""

    plus: np.ndarray
    minus: np.ndarray

    def __post_init__(self) -> None:
        plus = np.asarray(self.plus, dtype=complex).reshape(-1)
        minus = np.asarray(self.minus, dtype=complex).reshape(-1)
        if plus.size == 0 or plus.size != minus.size:
            raise DimensionMismatch(
                f"BcVector components must share a positive length, got {plus.size} and {minus.size}"
            )
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    @property
    def dim(self) -> int:
        return self.plus.size

    @classmethod
    def zeros(cls, dim: int) -> "BcVector":
        return cls(np.zeros(dim, dtype=complex), np.zeros(dim, dtype=complex))

    @classmethod
    def from_cartesian(cls, v1: np.ndarray, v2: np.ndarray) -> "BcVector":
        """Build v1 + j v2 from its two complex cartesian coordinate vectors."""
        v1 = np.asarray(v1, dtype=complex)
        v2 = np.asarray(v2, dtype=complex)
        return cls(v1 - 1j * v2, v1 + 1j * v2)

    @classmethod
    def embed(cls, v: np.ndarray) -> "BcVector":
        """A complex vector seen in both components (v e+ + v e-)."""
        return cls(v, np.array(v, dtype=complex, copy=True))

    def __add__(self, other: "BcVector") -> "BcVector":
        _check_dims(self, other)
        return BcVector(self.plus + other.plus, self.minus + other.minus)

    def __sub__(self, other: "BcVector") -> "BcVector":
        _check_dims(self, other)
        return BcVector(self.plus - other.plus, self.minus - other.minus)

    def __neg__(self) -> "BcVector":
        return BcVector(-self.plus, -self.minus)

    def scale(self, lam: Bicomplex) -> "BcVector":
        """Module action lam * f, componentwise in idempotent coordinates."""
        return BcVector(lam.alpha * self.plus, lam.beta * self.minus)

    def __rmul__(self, lam: Any) -> "BcVector":
        if isinstance(lam, Bicomplex):
            return self.scale(lam)
        if isinstance(lam, (int, float, complex, np.number)):
            return BcVector(lam * self.plus, lam * self.minus)
        return NotImplemented

    def close(self, other: "BcVector", tol: float = 1e-12) -> bool:
        """Relative comparison in the bc norm."""
        scale = max(1.0, norm_bc(self), norm_bc(other))
        return norm_bc(self - other) <= tol * scale

    def to_dict(self) -> dict[str, Any]:
        """JSON shape {"plus": [[re, im], ...], "minus": [[re, im], ...]}."""
        return {
            "plus": [[z.real, z.imag] for z in self.plus],
            "minus": [[z.real, z.imag] for z in self.minus],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "BcVector":
        try:
            plus = [complex(re, im) for re, im in data["plus"]]
            minus = [complex(re, im) for re, im in data["minus"]]
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed BcVector: {e}") from e
        return cls(np.array(plus), np.array(minus))

    def __repr__(self) -> str:
        return f"BcVector(dim={self.dim}, plus={self.plus!r}, minus={self.minus!r})"


def _check_dims(f: BcVector, g: BcVector) -> None:
    if f.dim != g.dim:
        raise DimensionMismatch(f"dimensions differ: {f.dim} != {g.dim}")


def random_bc_vector(rng: np.random.Generator, dim: int, scale: float = 1.0) -> BcVector:
    """Gaussian random BcVector with independent real and imaginary parts."""
    parts = rng.standard_normal((4, dim)) * scale
    return BcVector(parts[0] + 1j * parts[1], parts[2] + 1j * parts[3])


def inner_bc(f: BcVector, g: BcVector) -> Bicomplex:
    """<f, g> = <f+, g+> e+ + <f-, g-> e-, linear in f."""
    _check_dims(f, g)
    return Bicomplex(np.vdot(g.plus, f.plus), np.vdot(g.minus, f.minus))


def norm_bc_squared(f: BcVector) -> float:
    plus = float(np.vdot(f.plus, f.plus).real)
    minus = float(np.vdot(f.minus, f.minus).real)
    return (plus + minus) / 2


def norm_bc(f: BcVector) -> float:
    """Induced norm sqrt((||f+||^2 + ||f-||^2) / 2)."""
    return math.sqrt(norm_bc_squared(f))


def norm_from_inner(f: BcVector) -> float:
    """The same norm read off <f, f>: the square root of its real scalar part."""
    return math.sqrt(max(inner_bc(f, f).z1.real, 0.0))


class SchwarzCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def schwarz_check(f: BcVector, g: BcVector, tol: float = 1e-12) -> SchwarzCheck:
    """Check |<f, g>| <= sqrt(2) ||f|| ||g||."""
    lhs = modulus(inner_bc(f, g))
    rhs = SQRT2 * norm_bc(f) * norm_bc(g)
    return SchwarzCheck(lhs, rhs, lhs <= rhs + tol)


# Sampled function spaces


@dataclass(frozen=True, eq=False)
class WeightedGrid:
    """
    Quadrature nodes in R^4 (or R^2) with positive weights and Gaussian parameter nu.

    `coordinates` names how the node columns are read: "cartesian" nodes are
    (re z1, im z1, re z2, im z2), "idempotent" nodes are (re alpha, im alpha,
    re beta, im beta), "plane" nodes are (x, y). Weights are with respect to
    Lebesgue measure dlambda(Z); for idempotent grids the constant Jacobian of
    (z1, z2) -> (alpha, beta) is already folded in.
    """

    nodes: np.ndarray
    weights: np.ndarray
    gaussian_nu: float = 0.0
    coordinates: str = "cartesian"

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if nodes.ndim != 2 or nodes.shape[0] != weights.size:
            raise GridMismatch(
                f"{nodes.shape[0] if nodes.ndim == 2 else nodes.size} nodes but {weights.size} weights"
            )
        if np.any(weights <= 0):
            raise GridMismatch("quadrature weights must be positive")
        if self.gaussian_nu < 0:
            raise GridMismatch(f"gaussian_nu must be >= 0, got {self.gaussian_nu}")
        if self.coordinates not in ("cartesian", "idempotent", "plane"):
            raise GridMismatch(f"unknown coordinates {self.coordinates!r}")
        expected = 2 if self.coordinates == "plane" else 4
        if nodes.shape[1] != expected:
            raise GridMismatch(f"{self.coordinates} grid needs {expected} columns, got {nodes.shape[1]}")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def box(cls, lo: float, hi: float, points_per_axis: int, nu: float = 0.0) -> "WeightedGrid":
        """Cartesian tensor trapezoid grid on [lo, hi]^4."""
        nodes, weights = tensor_grid(lo, hi, points_per_axis, 4)
        logger.debug(f"Cartesian grid: {nodes.shape[0]} nodes on [{lo}, {hi}]^4, nu={nu}")
        return cls(nodes, weights, nu, "cartesian")

    @classmethod
    def idempotent_box(cls, lo: float, hi: float, points_per_axis: int, nu: float = 0.0) -> "WeightedGrid":
        """Tensor grid laid out natively in (alpha, beta) on [lo, hi]^4."""
        nodes, weights = tensor_grid(lo, hi, points_per_axis, 4)
        # dlambda(Z) = dlambda(alpha, beta) / 4
        return cls(nodes, weights / 4, nu, "idempotent")

    @property
    def size(self) -> int:
        return self.weights.size

    def complex_coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """(z1, z2) at every node."""
        if self.coordinates == "plane":
            raise GridMismatch("plane grids carry no (z1, z2) coordinates")
        c = self.nodes[:, 0] + 1j * self.nodes[:, 1]
        d = self.nodes[:, 2] + 1j * self.nodes[:, 3]
        if self.coordinates == "cartesian":
            return c, d
        return (c + d) / 2, 1j * (c - d) / 2

    def idempotent_coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """(alpha, beta) at every node."""
        if self.coordinates == "idempotent":
            return (
                self.nodes[:, 0] + 1j * self.nodes[:, 1],
                self.nodes[:, 2] + 1j * self.nodes[:, 3],
            )
        z1, z2 = self.complex_coordinates()
        return z1 - 1j * z2, z1 + 1j * z2

    def measure(self) -> np.ndarray:
        """Weights times exp(-nu |Z|^2) at every node."""
        r2 = np.sum(self.nodes ** 2, axis=1)
        if self.coordinates == "idempotent":
            # |Z|^2 = (|alpha|^2 + |beta|^2) / 2
            r2 = r2 / 2
        return self.weights * np.exp(-self.gaussian_nu * r2)

    def matches(self, other: "WeightedGrid") -> bool:
        if self is other:
            return True
        return (
            self.coordinates == other.coordinates
            and self.gaussian_nu == other.gaussian_nu
            and self.nodes.shape == other.nodes.shape
            and np.array_equal(self.nodes, other.nodes)
            and np.array_equal(self.weights, other.weights)
        )


# f(z1, z2) -> (f+ values, f- values)
BcFunction = Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True, eq=False)
class BcFunctionSample:
    """Values f(Z_k) = f1(Z_k) e+ + f2(Z_k) e- at every node of a grid."""

    grid: WeightedGrid
    plus: np.ndarray
    minus: np.ndarray

    def __post_init__(self) -> None:
        plus = np.broadcast_to(np.asarray(self.plus, dtype=complex), (self.grid.size,)).copy()
        minus = np.broadcast_to(np.asarray(self.minus, dtype=complex), (self.grid.size,)).copy()
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    @classmethod
    def from_callable(cls, grid: WeightedGrid, fn: BcFunction) -> "BcFunctionSample":
        z1, z2 = grid.complex_coordinates()
        plus, minus = fn(z1, z2)
        return cls(grid, plus, minus)

    def value(self, k: int) -> Bicomplex:
        return Bicomplex(self.plus[k], self.minus[k])

    @property
    def values(self) -> list[Bicomplex]:
        return [Bicomplex(p, m) for p, m in zip(self.plus, self.minus)]


def _l2(grid: WeightedGrid, u: np.ndarray, v: np.ndarray) -> complex:
    return complex(np.sum(grid.measure() * u * np.conj(v)))


def inner_bc_function(f: BcFunctionSample, g: BcFunctionSample) -> Bicomplex:
    """Quadrature of the integral of <f(Z), g(Z)> exp(-nu |Z|^2) dlambda(Z)."""
    if not f.grid.matches(g.grid):
        raise GridMismatch("functions are sampled on different grids")
    mu = f.grid.measure()
    return Bicomplex(
        np.sum(mu * f.plus * np.conj(g.plus)),
        np.sum(mu * f.minus * np.conj(g.minus)),
    )


def component_norms(f: BcFunctionSample) -> tuple[float, float]:
    """(||f1||^2, ||f2||^2) in L^{2,nu}."""
    return _l2(f.grid, f.plus, f.plus).real, _l2(f.grid, f.minus, f.minus).real


def norm_bc_function_squared(f: BcFunctionSample) -> float:
    """||f||^2 as the real scalar part of <f, f>."""
    return inner_bc_function(f, f).z1.real


@dataclass(frozen=True, eq=False)
class IdempotentSample:
    """phi+/phi- of f(alpha e+ + beta e-) on (alpha, beta) nodes with weight exp(-nu/2 (|alpha|^2+|beta|^2))."""

    alpha: np.ndarray
    beta: np.ndarray
    phi_plus: np.ndarray
    phi_minus: np.ndarray
    weights: np.ndarray
    nu: float

    def norm_squared(self, component: np.ndarray) -> float:
        w = self.weights * np.exp(-self.nu * (np.abs(self.alpha) ** 2 + np.abs(self.beta) ** 2))
        return float(np.sum(w * np.abs(component) ** 2))

    def bc_norm_squared(self) -> float:
        """(||phi+||^2 + ||phi-||^2) / 2 in L^{2, nu/2}."""
        return (self.norm_squared(self.phi_plus) + self.norm_squared(self.phi_minus)) / 2


def idempotent_change_of_variables(f: BcFunctionSample) -> IdempotentSample:
    """
    Rewrite a sample on a cartesian grid in idempotent coordinates.

    The map (z1, z2) -> (alpha, beta) is linear with constant Jacobian, so the
    nodes are mapped exactly and the Jacobian is folded into the weights:
    dlambda(Z) = dlambda(alpha, beta) / 4, and exp(-nu |Z|^2) becomes
    exp(-(nu / 2)(|alpha|^2 + |beta|^2)).

    Raises:
        GridMismatch: When the grid is not a cartesian 4-D grid
    """
    grid = f.grid
    if grid.coordinates != "cartesian":
        raise GridMismatch(f"change of variables needs a cartesian grid, got {grid.coordinates}")
    alpha, beta = grid.idempotent_coordinates()
    # same physical nodes, so the dlambda(Z) weights carry over unchanged
    weights = grid.weights
    return IdempotentSample(
        alpha=alpha,
        beta=beta,
        phi_plus=f.plus.copy(),
        phi_minus=f.minus.copy(),
        weights=weights,
        nu=grid.gaussian_nu / 2,
    )


class NormIdentityCheck(NamedTuple):
    direct: float
    idempotent: float
    discrepancy: float


def idempotent_norm_check(
    fn: BcFunction,
    lo: float,
    hi: float,
    points_per_axis: int,
    nu: float = 1.0,
    native_lo: Optional[float] = None,
    native_hi: Optional[float] = None,
) -> NormIdentityCheck:
    """
    Compare two independent quadratures of ||f||^2.

    The direct value integrates on a cartesian grid in (z1, z2) with weight
    exp(-nu |Z|^2). The idempotent value samples phi+/- on a grid laid out
    natively in (alpha, beta) and integrates with weight exp(-(nu/2)(|alpha|^2
    + |beta|^2)) and measure dlambda(alpha, beta)/4.
    """
    direct_grid = WeightedGrid.box(lo, hi, points_per_axis, nu)
    direct = norm_bc_function_squared(BcFunctionSample.from_callable(direct_grid, fn))

    native_lo = lo if native_lo is None else native_lo
    native_hi = hi if native_hi is None else native_hi
    native = WeightedGrid.idempotent_box(native_lo, native_hi, points_per_axis, nu)
    alpha, beta = native.idempotent_coordinates()
    z1, z2 = native.complex_coordinates()
    phi_plus, phi_minus = fn(z1, z2)
    sample = IdempotentSample(
        alpha=alpha,
        beta=beta,
        phi_plus=np.broadcast_to(np.asarray(phi_plus, dtype=complex), alpha.shape),
        phi_minus=np.broadcast_to(np.asarray(phi_minus, dtype=complex), alpha.shape),
        weights=native.weights,
        nu=nu / 2,
    )
    idempotent = sample.bc_norm_squared()
    logger.debug(f"Norm identity: direct={direct:.6e} idempotent={idempotent:.6e} ({points_per_axis} pts/axis)")
    return NormIdentityCheck(direct, idempotent, abs(direct - idempotent))
