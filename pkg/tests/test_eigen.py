"""Tests for the Jacobi eigensolver."""

import logging

import numpy as np
import pytest
from numpy.testing import assert_allclose

from bcframes.frames.eigen import hermitian_asymmetry, jacobi_eigh


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (x + x.conj().T) / 2


class TestJacobiEigh:
    """Test cases for jacobi_eigh."""

    @pytest.mark.parametrize("n", [2, 3, 5, 8, 12])
    def test_matches_lapack(self, rng, n):
        """Test eigenvalues against numpy's Hermitian solver."""
        a = random_hermitian(rng, n)
        eig = jacobi_eigh(a)
        assert eig.converged
        assert_allclose(eig.values, np.linalg.eigvalsh(a), atol=1e-10 * np.linalg.norm(a))

    def test_eigenvectors(self, rng):
        """Test A V = V diag(lambda) with V unitary."""
        a = random_hermitian(rng, 6)
        eig = jacobi_eigh(a)
        v = eig.vectors
        assert_allclose(v.conj().T @ v, np.eye(6), atol=1e-12)
        assert_allclose(a @ v, v * eig.values, atol=1e-10)

    def test_ascending(self, rng):
        """Test eigenvalues come back sorted."""
        values = jacobi_eigh(random_hermitian(rng, 7)).values
        assert np.all(np.diff(values) >= 0)

    def test_diagonal_needs_no_sweeps(self):
        """Test that a diagonal matrix is returned as is."""
        eig = jacobi_eigh(np.diag([3.0, 1.0, 2.0]))
        assert eig.sweeps == 0
        assert_allclose(eig.values, [1.0, 2.0, 3.0])

    def test_zero_matrix(self):
        """Test the all-zero matrix."""
        eig = jacobi_eigh(np.zeros((3, 3)))
        assert eig.converged
        assert_allclose(eig.values, 0.0)

    def test_sweep_cap_warns(self, rng, caplog):
        """Test a non-converged result is flagged and logged."""
        with caplog.at_level(logging.WARNING, logger="bcframes.frames.eigen"):
            eig = jacobi_eigh(random_hermitian(rng, 6), max_sweeps=1)
        assert not eig.converged
        assert "did not converge" in caplog.text

    def test_rejects_non_square(self):
        """Test ValueError on a rectangular matrix."""
        with pytest.raises(ValueError):
            jacobi_eigh(np.ones((2, 3)))

    def test_rank_deficient(self):
        """Test a projector keeps its zero eigenvalue."""
        v = np.array([1.0, 1j, 0.0]) / np.sqrt(2)
        eig = jacobi_eigh(np.outer(v, v.conj()))
        assert_allclose(eig.values, [0.0, 0.0, 1.0], atol=1e-14)


class TestHermitianAsymmetry:
    """Test the asymmetry measure."""

    def test_hermitian(self, rng):
        """Test zero asymmetry for Hermitian input."""
        assert hermitian_asymmetry(random_hermitian(rng, 4)) == 0.0

    def test_non_hermitian(self):
        """Test a positive asymmetry otherwise."""
        assert hermitian_asymmetry(np.array([[0.0, 1.0], [0.0, 0.0]])) == pytest.approx(1.0)
