"""Classification of finite bicomplex frame families.

A family (f_n) of BcVectors is a bc-frame exactly when both idempotent
component families (f_n+) and (f_n-) are frames of C^d. The optimal component
bounds a+/-, b+/- are the extreme eigenvalues of the component frame operators
S+/- = sum f_n+/- (f_n+/-)^H, and the bc bounds are A = min(a+, a-),
B = max(b+, b-).
"""

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, NamedTuple, Optional, Sequence

import numpy as np

from ..exceptions import BcFrameError, DimensionMismatch, EmptySequence, NotAFrame, ParseError
from .bicomplex import Hyperbolic, modulus
from .eigen import DEFAULT_JACOBI, Eigensystem, JacobiSettings, jacobi_eigh
from .hilbert import BcVector, inner_bc, norm_bc_squared


logger = logging.getLogger(__name__)

FRAME_RANK_TOL = 1e-10
TIGHT_REL_TOL = 1e-9
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class FrameFamily:
    """An indexed family of BcVectors of common dimension, with cached component operators."""

    vectors: tuple[BcVector, ...]
    solver: JacobiSettings = DEFAULT_JACOBI

    def __post_init__(self) -> None:
        vectors = tuple(self.vectors)
        if not vectors:
            raise EmptySequence("a frame family needs at least one vector")
        dim = vectors[0].dim
        for k, v in enumerate(vectors):
            if v.dim != dim:
                raise DimensionMismatch(f"vector {k} has dimension {v.dim}, expected {dim}")
        object.__setattr__(self, "vectors", vectors)

    @classmethod
    def from_components(
        cls,
        plus: Sequence[np.ndarray],
        minus: Sequence[np.ndarray],
        solver: JacobiSettings = DEFAULT_JACOBI,
    ) -> "FrameFamily":
        """Pair two equally long lists of complex vectors into bc vectors."""
        if len(plus) != len(minus):
            raise DimensionMismatch(f"{len(plus)} plus vectors but {len(minus)} minus vectors")
        return cls(tuple(BcVector(p, m) for p, m in zip(plus, minus)), solver)

    def with_solver(self, solver: JacobiSettings) -> "FrameFamily":
        """Same vectors, eigensystems recomputed under another stopping rule."""
        return FrameFamily(self.vectors, solver)

    def __len__(self) -> int:
        return len(self.vectors)

    def __getitem__(self, k: int) -> BcVector:
        return self.vectors[k]

    def __iter__(self):
        return iter(self.vectors)

    @property
    def dim(self) -> int:
        return self.vectors[0].dim

    @cached_property
    def plus_matrix(self) -> np.ndarray:
        """n x d array whose rows are f_n+."""
        return np.array([v.plus for v in self.vectors])

    @cached_property
    def minus_matrix(self) -> np.ndarray:
        """n x d array whose rows are f_n-."""
        return np.array([v.minus for v in self.vectors])

    @cached_property
    def s_plus(self) -> np.ndarray:
        return component_frame_operator(self.plus_matrix)

    @cached_property
    def s_minus(self) -> np.ndarray:
        return component_frame_operator(self.minus_matrix)

    @cached_property
    def eig_plus(self) -> Eigensystem:
        return jacobi_eigh(self.s_plus, *self.solver)

    @cached_property
    def eig_minus(self) -> Eigensystem:
        return jacobi_eigh(self.s_minus, *self.solver)

    def without(self, k: int) -> Optional["FrameFamily"]:
        """The family with element k deleted, or None when nothing is left."""
        rest = self.vectors[:k] + self.vectors[k + 1:]
        return FrameFamily(rest, self.solver) if rest else None

    def to_dict(self) -> dict[str, Any]:
        """Frame spec JSON {"dim": d, "vectors": [...]}."""
        return {"dim": self.dim, "vectors": [v.to_dict() for v in self.vectors]}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FrameFamily":
        if not isinstance(data, dict) or "vectors" not in data:
            raise ParseError("frame spec needs a 'vectors' list")
        vectors = tuple(BcVector.from_dict(v) for v in data["vectors"])
        family = cls(vectors)
        if "dim" in data and int(data["dim"]) != family.dim:
            raise DimensionMismatch(f"spec says dim={data['dim']} but vectors have dim={family.dim}")
        return family


def component_frame_operator(rows: np.ndarray) -> np.ndarray:
    """S = sum_n f_n f_n^H for the rows f_n of an n x d array."""
    rows = np.asarray(rows, dtype=complex)
    return rows.T @ rows.conj()


def _as_rows(vectors: Iterable[np.ndarray]) -> np.ndarray:
    rows = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
    if not rows:
        raise EmptySequence("component family is empty")
    dim = rows[0].size
    if any(r.size != dim for r in rows):
        raise DimensionMismatch("component vectors differ in length")
    return np.array(rows)


def is_frame_bounds(a: float, b: float, tol: float = FRAME_RANK_TOL) -> bool:
    """Scale-relative rank decision a > tol * max(b, 1)."""
    return a > tol * max(b, 1.0)


def _bounds(eig: Eigensystem) -> tuple[float, float]:
    return max(float(eig.values[0]), 0.0), max(float(eig.values[-1]), 0.0)


def component_bounds(vectors: Iterable[np.ndarray]) -> tuple[float, float]:
    """
    Optimal frame bounds of a family of complex vectors.

    Returns:
        (a, b), the extreme eigenvalues of S = sum f_n f_n^H; a == 0 signals a
        family that does not span
    """
    return _bounds(jacobi_eigh(component_frame_operator(_as_rows(vectors))))


def _component_is_frame(
    rows: np.ndarray,
    tol: float = FRAME_RANK_TOL,
    solver: JacobiSettings = DEFAULT_JACOBI,
) -> bool:
    if rows.shape[0] == 0:
        return False
    return is_frame_bounds(*_bounds(jacobi_eigh(component_frame_operator(rows), *solver)), tol=tol)


def is_bc_frame(family: Optional[FrameFamily], tol: float = FRAME_RANK_TOL) -> bool:
    if family is None:
        return False
    a_plus, b_plus = _bounds(family.eig_plus)
    a_minus, b_minus = _bounds(family.eig_minus)
    return is_frame_bounds(a_plus, b_plus, tol) and is_frame_bounds(a_minus, b_minus, tol)


def _close(x: float, y: float, rel_tol: float) -> bool:
    return abs(x - y) <= rel_tol * max(abs(x), abs(y), 1e-300)


@dataclass
class FrameReport:
    """Bounds, classification flags and their numeric evidence for one family."""

    n: int
    dim: int
    a_plus: float
    b_plus: float
    a_minus: float
    b_minus: float
    A: float
    B: float
    is_frame: bool
    is_tight: bool
    is_parseval: bool
    is_exact: bool
    is_riesz: bool
    is_complete: bool
    tight_plus: bool
    tight_minus: bool
    n_exact: Optional[list[int]] = None
    n_exact_plus: Optional[list[int]] = None
    n_exact_minus: Optional[list[int]] = None
    eigenvalues_plus: list[float] = field(default_factory=list)
    eigenvalues_minus: list[float] = field(default_factory=list)
    riesz_bounds: Optional[tuple[float, float]] = None
    tight_constant: Optional[Hyperbolic] = None
    solver_sweeps: int = 0
    solver_converged: bool = True
    tolerances: dict[str, float] = field(default_factory=dict)

    @property
    def d_is_real(self) -> Optional[bool]:
        if self.tight_constant is None:
            return None
        return self.tight_constant.is_real(self.tolerances.get("tight_rel", TIGHT_REL_TOL))

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "n": self.n,
            "dim": self.dim,
            "a_plus": self.a_plus,
            "b_plus": self.b_plus,
            "a_minus": self.a_minus,
            "b_minus": self.b_minus,
            "A": self.A,
            "B": self.B,
            "is_frame": self.is_frame,
            "is_tight": self.is_tight,
            "is_parseval": self.is_parseval,
            "is_exact": self.is_exact,
            "is_riesz": self.is_riesz,
            "is_complete": self.is_complete,
            "tight_plus": self.tight_plus,
            "tight_minus": self.tight_minus,
            "n_exact": self.n_exact,
            "n_exact_plus": self.n_exact_plus,
            "n_exact_minus": self.n_exact_minus,
            "eigenvalues_plus": self.eigenvalues_plus,
            "eigenvalues_minus": self.eigenvalues_minus,
            "riesz_bounds": list(self.riesz_bounds) if self.riesz_bounds else None,
            "tight_constant": self.tight_constant.to_dict() if self.tight_constant else None,
            "d_is_real": self.d_is_real,
            "eigensolver": {"sweeps": self.solver_sweeps, "converged": self.solver_converged},
            "tolerances": self.tolerances,
        }


def bc_frame_report(
    family: FrameFamily,
    frame_tol: float = FRAME_RANK_TOL,
    tight_tol: float = TIGHT_REL_TOL,
) -> FrameReport:
    """Classify a family through its component spectra."""
    a_plus, b_plus = _bounds(family.eig_plus)
    a_minus, b_minus = _bounds(family.eig_minus)
    plus_ok = is_frame_bounds(a_plus, b_plus, frame_tol)
    minus_ok = is_frame_bounds(a_minus, b_minus, frame_tol)
    frame = plus_ok and minus_ok

    A = min(a_plus, a_minus)
    B = max(b_plus, b_minus)
    tight = frame and _close(A, B, tight_tol)
    parseval = tight and _close(A, 1.0, tight_tol)
    tight_plus = plus_ok and _close(a_plus, b_plus, tight_tol)
    tight_minus = minus_ok and _close(a_minus, b_minus, tight_tol)

    report = FrameReport(
        n=len(family),
        dim=family.dim,
        a_plus=a_plus,
        b_plus=b_plus,
        a_minus=a_minus,
        b_minus=b_minus,
        A=A,
        B=B,
        is_frame=frame,
        is_tight=tight,
        is_parseval=parseval,
        is_exact=False,
        is_riesz=False,
        is_complete=frame,
        tight_plus=tight_plus,
        tight_minus=tight_minus,
        eigenvalues_plus=[float(x) for x in family.eig_plus.values],
        eigenvalues_minus=[float(x) for x in family.eig_minus.values],
        solver_sweeps=max(family.eig_plus.sweeps, family.eig_minus.sweeps),
        solver_converged=family.eig_plus.converged and family.eig_minus.converged,
        tolerances={
            "frame_rank": frame_tol,
            "tight_rel": tight_tol,
            "jacobi": family.solver.tol,
            "jacobi_max_sweeps": family.solver.max_sweeps,
        },
    )

    if frame:
        plus_set, minus_set = n_exact_components(family, frame_tol)
        removable = n_exact(family, frame_tol)
        report.n_exact = sorted(removable)
        report.n_exact_plus = sorted(plus_set)
        report.n_exact_minus = sorted(minus_set)
        report.is_exact = not removable
        report.is_riesz = is_riesz(family, frame_tol)
        report.riesz_bounds = riesz_bounds(family)
        if tight_plus and tight_minus:
            report.tight_constant = Hyperbolic(a_plus, a_minus)

    logger.debug(
        f"Frame report: n={report.n} d={report.dim} A={A:.6g} B={B:.6g} "
        f"frame={frame} tight={tight} exact={report.is_exact}"
    )
    return report


class FrameInequality(NamedTuple):
    sum: float
    lower: float
    upper: float
    component_sum: float
    holds: bool


def frame_inequality_sample(
    family: FrameFamily,
    f: BcVector,
    report: Optional[FrameReport] = None,
) -> FrameInequality:
    """
    Evaluate sum_n |<f, f_n>|^2 against A ||f||^2 and B ||f||^2.

    The component sum (sum |<f+, f_n+>|^2 + sum |<f-, f_n->|^2) / 2 is computed
    independently of the bicomplex moduli so the two can be compared.
    """
    if f.dim != family.dim:
        raise DimensionMismatch(f"vector has dimension {f.dim}, frame has {family.dim}")
    report = report or bc_frame_report(family)

    total = sum(modulus(inner_bc(f, v)) ** 2 for v in family)
    plus = np.sum(np.abs(family.plus_matrix.conj() @ f.plus) ** 2)
    minus = np.sum(np.abs(family.minus_matrix.conj() @ f.minus) ** 2)
    component_sum = float(plus + minus) / 2

    norm2 = norm_bc_squared(f)
    lower = report.A * norm2
    upper = report.B * norm2
    eps = 1e-9 * upper
    return FrameInequality(total, lower, upper, component_sum, lower - eps <= total <= upper + eps)


# Stock families


def standard_basis(dim: int) -> list[np.ndarray]:
    return [np.eye(dim, dtype=complex)[k] for k in range(dim)]


def embed_classical(vectors: Iterable[np.ndarray]) -> FrameFamily:
    """A classical family (h_n) seen as the bc family h_n e+ + h_n e-."""
    return FrameFamily(tuple(BcVector.embed(h) for h in _as_rows(vectors)))


def embedded_onb(dim: int) -> FrameFamily:
    return embed_classical(standard_basis(dim))


def _truncate(seq: Sequence[complex], length: int, name: str) -> tuple[np.ndarray, float, float]:
    values = np.asarray(seq, dtype=complex).reshape(-1)
    if values.size == 0:
        raise EmptySequence(f"{name} is empty")
    kept = np.zeros(length, dtype=complex)
    kept[: min(length, values.size)] = values[:length]
    tail = float(np.sum(np.abs(values[length:]) ** 2))
    if tail > 1e-12:
        logger.warning(f"{name}: truncated tail carries {tail:.3e} of squared mass")
    return kept, float(np.sum(np.abs(kept) ** 2)), tail


@dataclass
class WeightedFamily:
    """A family built from weight sequences, with the effective constants a, b."""

    family: FrameFamily
    a: float
    b: float
    tail_a: float
    tail_b: float
    predicted: tuple[float, float]


def weighted_onb_family(
    basis: np.ndarray,
    a_seq: Sequence[complex],
    b_seq: Sequence[complex],
    terms: Optional[int] = None,
) -> WeightedFamily:
    """
    Build e_{m,n} = a_n e_m e+ + b_m e_n e- over all (m, n) below the truncation.

    The basis is read as the first d vectors of an orthonormal sequence whose
    later members project to zero in C^d, so with terms > d the extra elements
    keep their weights but lose their direction. With terms < d the family
    misses basis directions and is not a frame.

    Args:
        basis: d x d matrix whose columns form an orthonormal basis of C^d
        a_seq: Weights a_n
        b_seq: Weights b_m
        terms: Truncation M of both weight sequences; defaults to d

    Returns:
        WeightedFamily with a = sum |a_n|^2, b = sum |b_n|^2 over the kept terms
        and predicted bounds (min(a, b), max(a, b)); element (m, n) sits at
        weighted_index(M, m, n)
    """
    basis = np.asarray(basis, dtype=complex)
    if basis.ndim != 2 or basis.shape[0] != basis.shape[1]:
        raise DimensionMismatch(f"basis must be square, got shape {basis.shape}")
    d = basis.shape[0]
    terms = d if terms is None else int(terms)
    if terms < 1:
        raise ParseError(f"truncation needs at least one term, got {terms}")
    if terms < d:
        logger.warning(f"{terms} terms cannot span C^{d}; the family will not be a frame")
    a_vals, a, tail_a = _truncate(a_seq, terms, "a_seq")
    b_vals, b, tail_b = _truncate(b_seq, terms, "b_seq")

    columns = np.zeros((d, max(terms, d)), dtype=complex)
    columns[:, :d] = basis
    vectors = []
    for m in range(terms):
        for n in range(terms):
            vectors.append(BcVector(a_vals[n] * columns[:, m], b_vals[m] * columns[:, n]))
    return WeightedFamily(FrameFamily(tuple(vectors)), a, b, tail_a, tail_b, (min(a, b), max(a, b)))


def weighted_index(terms: int, m: int, n: int) -> int:
    """Position of e_{m,n} in a weighted family truncated at `terms`."""
    return m * terms + n


def generalized_weighted_family(
    family: FrameFamily,
    a_seq: Sequence[complex],
    b_seq: Sequence[complex],
) -> WeightedFamily:
    """
    Build f_{m,n} = a_n f_m+ e+ + b_m f_n- e- from an existing bc-frame.

    The plus component has frame operator a S+ and the minus component b S-,
    so the predicted bounds are (min(a a+, b a-), max(a b+, b b-)).
    """
    k = len(family)
    a_vals, a, tail_a = _truncate(a_seq, k, "a_seq")
    b_vals, b, tail_b = _truncate(b_seq, k, "b_seq")

    vectors = []
    for m in range(k):
        for n in range(k):
            vectors.append(BcVector(a_vals[n] * family[m].plus, b_vals[m] * family[n].minus))

    a_plus, b_plus = _bounds(family.eig_plus)
    a_minus, b_minus = _bounds(family.eig_minus)
    predicted = (min(a * a_plus, b * a_minus), max(a * b_plus, b * b_minus))
    return WeightedFamily(FrameFamily(tuple(vectors), family.solver), a, b, tail_a, tail_b, predicted)


# Exactness


def _removable(rows: np.ndarray, tol: float, solver: JacobiSettings = DEFAULT_JACOBI) -> set[int]:
    keep = np.ones(rows.shape[0], dtype=bool)
    removable = set()
    for k in range(rows.shape[0]):
        keep[k] = False
        if _component_is_frame(rows[keep], tol, solver):
            removable.add(k)
        keep[k] = True
    return removable


def n_exact_components(family: FrameFamily, tol: float = FRAME_RANK_TOL) -> tuple[set[int], set[int]]:
    """N_Exact of the plus and minus component families, by deletion."""
    return (
        _removable(family.plus_matrix, tol, family.solver),
        _removable(family.minus_matrix, tol, family.solver),
    )


def n_exact(family: FrameFamily, tol: float = FRAME_RANK_TOL) -> set[int]:
    """
    Indices k such that the family with f_k deleted is still a bc-frame.

    Raises:
        NotAFrame: When the family itself is not a bc-frame
    """
    if not is_bc_frame(family, tol):
        raise NotAFrame("N_Exact is defined for bc-frames only")
    removable = set()
    for k in range(len(family)):
        verdict = is_bc_frame(family.without(k), tol)
        logger.debug(f"delete {k}: still a frame = {verdict}")
        if verdict:
            removable.add(k)
    return removable


def n_exact_intersection(family: FrameFamily, tol: float = FRAME_RANK_TOL) -> set[int]:
    """N_Exact(F+) & N_Exact(F-)."""
    if not is_bc_frame(family, tol):
        raise NotAFrame("N_Exact is defined for bc-frames only")
    plus, minus = n_exact_components(family, tol)
    return plus & minus


def leverages(
    rows: np.ndarray,
    tol: float = FRAME_RANK_TOL,
    solver: JacobiSettings = DEFAULT_JACOBI,
) -> np.ndarray:
    """<S^-1 f_n, f_n> for every row; f_n is removable exactly when this is not 1."""
    rows = np.asarray(rows, dtype=complex)
    eig = jacobi_eigh(component_frame_operator(rows), *solver)
    if not is_frame_bounds(*_bounds(eig), tol):
        raise NotAFrame("leverages need a spanning family")
    coords = rows @ eig.vectors.conj()
    return np.real(np.sum(np.abs(coords) ** 2 / eig.values, axis=1))


def counterexample_cexp(d: int, tol: float = FRAME_RANK_TOL) -> FrameFamily:
    """
    An exact bc-frame whose two component frames are both redundant.

    The plus component is the standard basis with e_0 repeated, so its removable
    set is {0, 1}. Minus arrangements are tried in order and the first whose
    removable set misses {0, 1} is kept: the basis with e_{d-1} appended
    (removable {d-1, d}, good for d >= 3), then the basis with a zero vector
    appended (removable {d}).
    """
    if d < 2:
        raise DimensionMismatch(f"the counterexample needs d >= 2, got {d}")
    basis = standard_basis(d)
    plus = [basis[0]] + basis
    candidates = [
        basis + [basis[d - 1]],
        basis + [np.zeros(d, dtype=complex)],
    ]
    plus_set = _removable(np.array(plus), tol)
    for minus in candidates:
        minus_set = _removable(np.array(minus), tol)
        if minus_set and not (plus_set & minus_set):
            logger.debug(f"cexp d={d}: N+={sorted(plus_set)} N-={sorted(minus_set)}")
            return FrameFamily.from_components(plus, minus)
    raise BcFrameError(f"no minus arrangement separates the removable sets for d={d}")


# Riesz, boundedness, tightness


def _gram_eigs(rows: np.ndarray, solver: JacobiSettings = DEFAULT_JACOBI) -> Eigensystem:
    return jacobi_eigh(rows.conj() @ rows.T, *solver)


def riesz_bounds(family: FrameFamily) -> tuple[float, float]:
    """(A', B'): min and max over both component Gram spectra."""
    plus = _gram_eigs(family.plus_matrix, family.solver).values
    minus = _gram_eigs(family.minus_matrix, family.solver).values
    return max(float(min(plus[0], minus[0])), 0.0), float(max(plus[-1], minus[-1]))


class RieszSample(NamedTuple):
    coefficient_norm: float
    value: float
    lower: float
    upper: float
    holds: bool


def riesz_inequality_sample(
    family: FrameFamily,
    alpha: np.ndarray,
    beta: np.ndarray,
    bounds: Optional[tuple[float, float]] = None,
) -> RieszSample:
    """
    Evaluate ||sum c_n f_n||^2 against A' sum |c_n|^2 and B' sum |c_n|^2.

    The coefficients c_n = alpha_n e+ + beta_n e- are given by their idempotent parts.
    """
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    if alpha.size != len(family) or beta.size != len(family):
        raise DimensionMismatch(f"{alpha.size} coefficients for a family of {len(family)}")
    lo, hi = bounds or riesz_bounds(family)
    combo = BcVector(alpha @ family.plus_matrix, beta @ family.minus_matrix)
    value = norm_bc_squared(combo)
    cnorm = float(np.sum(np.abs(alpha) ** 2 + np.abs(beta) ** 2)) / 2
    eps = 1e-9 * max(hi * cnorm, 1e-300)
    return RieszSample(cnorm, value, lo * cnorm, hi * cnorm, lo * cnorm - eps <= value <= hi * cnorm + eps)


def is_riesz(
    family: FrameFamily,
    tol: float = FRAME_RANK_TOL,
    rng: Optional[np.random.Generator] = None,
    samples: int = 20,
) -> bool:
    """
    True iff both components are Riesz bases of C^d.

    In finite dimension that means n == d with nonsingular component Grams. A
    positive answer is certified on random bicomplex coefficient vectors.
    """
    n, d = len(family), family.dim
    if n != d:
        return False
    for rows in (family.plus_matrix, family.minus_matrix):
        eig = _gram_eigs(rows, family.solver)
        if not eig.values[0] > tol * max(eig.values[-1], 1.0):
            return False

    rng = rng or np.random.default_rng(0)
    bounds = riesz_bounds(family)
    for _ in range(samples):
        parts = rng.standard_normal((4, n))
        check = riesz_inequality_sample(family, parts[0] + 1j * parts[1], parts[2] + 1j * parts[3], bounds)
        if not check.holds:
            logger.warning(f"Riesz inequality failed on a sample: {check}")
            return False
    return True


@dataclass
class BoundednessStats:
    """Norm statistics of <f_n, f_n> and the inequality chains relating them."""

    inf_norm: float
    sup_norm: float
    sup_plus: float
    sup_minus: float
    inf_plus: float
    inf_minus: float
    bounds_hold: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "inf_norm": self.inf_norm,
            "sup_norm": self.sup_norm,
            "sup_plus": self.sup_plus,
            "sup_minus": self.sup_minus,
            "inf_plus": self.inf_plus,
            "inf_minus": self.inf_minus,
            "bounds_hold": self.bounds_hold,
        }


def boundedness_stats(family: FrameFamily, tol: float = 1e-12) -> BoundednessStats:
    """
    inf/sup over n of |<f_n, f_n>| and the chains

        sup |<f_n, f_n>| <= (sup ||f_n+||^2 + sup ||f_n-||^2) / sqrt(2)
        inf |<f_n, f_n>| >= (inf ||f_n+||^2 + inf ||f_n-||^2) / 2
        max(sup ||f_n+||^2, sup ||f_n-||^2) <= sqrt(2) sup |<f_n, f_n>|

    with squared component norms, since <f_n, f_n> = ||f_n+||^2 e+ + ||f_n-||^2 e-.
    """
    moduli = np.array([modulus(inner_bc(v, v)) for v in family])
    plus = np.sum(np.abs(family.plus_matrix) ** 2, axis=1)
    minus = np.sum(np.abs(family.minus_matrix) ** 2, axis=1)

    inf_norm, sup_norm = float(moduli.min()), float(moduli.max())
    sup_plus, sup_minus = float(plus.max()), float(minus.max())
    inf_plus, inf_minus = float(plus.min()), float(minus.min())
    slack = tol * max(1.0, sup_plus, sup_minus)

    holds = (
        sup_norm <= (sup_plus + sup_minus) / SQRT2 + slack
        and inf_norm >= (inf_plus + inf_minus) / 2 - slack
        and max(sup_plus, sup_minus) <= SQRT2 * sup_norm + slack
    )
    return BoundednessStats(inf_norm, sup_norm, sup_plus, sup_minus, inf_plus, inf_minus, holds)


class TightnessDecomposition(NamedTuple):
    tight_bc: bool
    tight_plus: bool
    tight_minus: bool


def tightness_decomposition(family: FrameFamily, tight_tol: float = TIGHT_REL_TOL) -> TightnessDecomposition:
    """
    Tightness of the bc-frame and of each component.

    Raises:
        NotAFrame: When the family is not a bc-frame
    """
    report = bc_frame_report(family, tight_tol=tight_tol)
    if not report.is_frame:
        raise NotAFrame("tightness is defined for bc-frames only")
    return TightnessDecomposition(report.is_tight, report.tight_plus, report.tight_minus)


def tight_constant(family: FrameFamily, tight_tol: float = TIGHT_REL_TOL) -> Optional[Hyperbolic]:
    """d = a+ e+ + a- e- when both components are tight, else None."""
    a_plus, b_plus = _bounds(family.eig_plus)
    a_minus, b_minus = _bounds(family.eig_minus)
    if not (is_frame_bounds(a_plus, b_plus) and is_frame_bounds(a_minus, b_minus)):
        return None
    if _close(a_plus, b_plus, tight_tol) and _close(a_minus, b_minus, tight_tol):
        return Hyperbolic(a_plus, a_minus)
    return None


def is_complete(family: FrameFamily, tol: float = FRAME_RANK_TOL) -> bool:
    """Both components span C^d."""
    return is_bc_frame(family, tol)


# Independent bound estimation


@dataclass
class RayleighEstimate:
    """Bound estimates from random Rayleigh quotients, then Krylov refinement."""

    sample_lower: float
    sample_upper: float
    lower: float
    upper: float
    samples: int
    krylov_steps: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "sample_lower": self.sample_lower,
            "sample_upper": self.sample_upper,
            "lower": self.lower,
            "upper": self.upper,
            "samples": self.samples,
            "krylov_steps": self.krylov_steps,
        }


def _bc_quotients(family: FrameFamily, plus: np.ndarray, minus: np.ndarray) -> np.ndarray:
    """sum_n |<f, f_n>|^2 / ||f||^2 for a batch of vectors given as rows."""
    cp = plus @ family.plus_matrix.conj().T
    cm = minus @ family.minus_matrix.conj().T
    # |<f, f_n>|^2 = (|<f+, f_n+>|^2 + |<f-, f_n->|^2) / 2
    sums = np.sum(np.abs(cp) ** 2 + np.abs(cm) ** 2, axis=1) / 2
    norms = np.sum(np.abs(plus) ** 2 + np.abs(minus) ** 2, axis=1) / 2
    return sums / norms


def _apply_bc(family: FrameFamily, x: np.ndarray) -> np.ndarray:
    """S f = sum <f, f_n> f_n on the stacked vector (f+, f-)."""
    d = family.dim
    fp, fm = x[:d], x[d:]
    cp = family.plus_matrix.conj() @ fp
    cm = family.minus_matrix.conj() @ fm
    return np.concatenate([cp @ family.plus_matrix, cm @ family.minus_matrix])


def rayleigh_bounds(
    family: FrameFamily,
    samples: int = 10_000,
    rng: Optional[np.random.Generator] = None,
    krylov_steps: Optional[int] = None,
) -> RayleighEstimate:
    """
    Estimate A and B without the component eigenvalue formula.

    Random BcVectors give Rayleigh quotients sum |<f, f_n>|^2 / ||f||^2 inside
    [A, B]. Refinement runs Lanczos with full reorthogonalization on the bc
    frame operator, started from the best upper sample; Ritz values stay inside
    [A, B] and reach the extremes once the Krylov space is exhausted.
    """
    rng = rng or np.random.default_rng(0)
    d = family.dim
    plus = rng.standard_normal((samples, d)) + 1j * rng.standard_normal((samples, d))
    minus = rng.standard_normal((samples, d)) + 1j * rng.standard_normal((samples, d))
    q = _bc_quotients(family, plus, minus)
    sample_lower, sample_upper = float(q.min()), float(q.max())

    best = int(np.argmax(q))
    start = np.concatenate([plus[best], minus[best]])
    steps = 2 * d if krylov_steps is None else min(krylov_steps, 2 * d)

    basis = [start / np.linalg.norm(start)]
    for _ in range(steps - 1):
        w = _apply_bc(family, basis[-1])
        for _ in range(2):
            for v in basis:
                w = w - np.vdot(v, w) * v
        norm = np.linalg.norm(w)
        if norm <= 1e-12 * max(sample_upper, 1.0):
            break
        basis.append(w / norm)

    Q = np.array(basis).T
    projected = Q.conj().T @ np.column_stack([_apply_bc(family, Q[:, k]) for k in range(Q.shape[1])])
    ritz = jacobi_eigh(projected, *family.solver).values
    lower = max(float(ritz[0]), 0.0)
    upper = float(ritz[-1])
    # Ritz values on a partial space may not reach the samples
    lower = min(lower, sample_lower)
    upper = max(upper, sample_upper)
    logger.debug(f"Rayleigh: samples [{sample_lower:.6g}, {sample_upper:.6g}] refined [{lower:.6g}, {upper:.6g}]")
    return RayleighEstimate(sample_lower, sample_upper, lower, upper, samples, Q.shape[1])
