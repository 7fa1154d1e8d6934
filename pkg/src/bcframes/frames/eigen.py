"""Cyclic Jacobi eigensolver for dense Hermitian matrices."""

import logging
import math
from typing import NamedTuple

import numpy as np


logger = logging.getLogger(__name__)

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


class JacobiSettings(NamedTuple):
    """Stopping rule shared by every solve on one family."""

    tol: float = JACOBI_TOL
    max_sweeps: int = JACOBI_MAX_SWEEPS

    @classmethod
    def from_tolerances(cls, tolerances: dict) -> "JacobiSettings":
        """Read `jacobi` and `jacobi_max_sweeps` from a config tolerances section."""
        return cls(
            float(tolerances.get("jacobi", JACOBI_TOL)),
            int(tolerances.get("jacobi_max_sweeps", JACOBI_MAX_SWEEPS)),
        )


DEFAULT_JACOBI = JacobiSettings()


class Eigensystem(NamedTuple):
    """Ascending eigenvalues with orthonormal eigenvectors as columns."""

    values: np.ndarray
    vectors: np.ndarray
    sweeps: int
    converged: bool


def hermitian_asymmetry(a: np.ndarray) -> float:
    """max |A - A^H| relative to max(1, max |A|)."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - a.conj().T)) / max(1.0, np.max(np.abs(a))))


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Unitary 2x2 rotation in the (p, q) plane that zeroes a[p, q] in place."""
    apq = a[p, q]
    r = abs(apq)
    phase = apq / r
    # after scaling column q by conj(phase) the (p, q) block is real symmetric
    theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c

    g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]], dtype=complex)
    idx = [p, q]
    a[:, idx] = a[:, idx] @ g
    a[idx, :] = g.conj().T @ a[idx, :]
    v[:, idx] = v[:, idx] @ g

    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def jacobi_eigh(
    matrix: np.ndarray,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> Eigensystem:
    """
    Eigen-decompose a Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps visit every pair (p, q), p < q, in row order. Iteration stops once
    the off-diagonal Frobenius mass drops below `tol` times the Frobenius norm
    of the input, or after `max_sweeps` sweeps.

    Args:
        matrix: Square Hermitian matrix (symmetrized before use)
        tol: Relative off-diagonal threshold
        max_sweeps: Sweep cap

    Returns:
        Eigensystem with ascending eigenvalues
    """
    a = np.array(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")

    n = a.shape[0]
    a = (a + a.conj().T) / 2
    v = np.eye(n, dtype=complex)

    scale = float(np.linalg.norm(a))
    if scale == 0.0 or n == 1:
        return Eigensystem(np.real(np.diag(a)).copy(), v, 0, True)

    threshold = tol * scale
    sweeps = 0
    converged = _off_norm(a) < threshold
    while not converged and sweeps < max_sweeps:
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > 0.0:
                    _rotate(a, v, p, q)
        converged = _off_norm(a) < threshold

    if not converged:
        logger.warning(f"Jacobi did not converge after {sweeps} sweeps (off={_off_norm(a):.3e})")
    else:
        logger.debug(f"Jacobi converged in {sweeps} sweeps (n={n})")

    values = np.real(np.diag(a))
    order = np.argsort(values, kind="stable")
    return Eigensystem(values[order], v[:, order], sweeps, converged)
