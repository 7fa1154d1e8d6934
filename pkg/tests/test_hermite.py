"""Tests for normalized Hermite functions."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from bcframes.exceptions import OrderTooHigh
from bcframes.gabor.hermite import (
    hermite_function,
    hermite_polynomial_form,
    hermite_table,
    orthonormality_residual,
)
from bcframes.utils.quadrature import trapezoid_rule


class TestHermiteFunctions:
    """Test the recurrence against the closed form."""

    @pytest.mark.parametrize("u", range(9))
    def test_recurrence_matches_polynomial_form(self, u):
        """Test h_u from the recurrence against numpy's Hermite series."""
        x = np.linspace(-6, 6, 101)
        assert_allclose(hermite_function(u, x), hermite_polynomial_form(u, x), atol=1e-12)

    def test_orthonormal_on_trapezoid_grid(self):
        """Test <h_u, h_v> = delta_uv on [-8, 8] with 257 nodes."""
        x, w = trapezoid_rule(-8.0, 8.0, 257)
        assert orthonormality_residual(x, w, 8) < 1e-10

    def test_parity(self):
        """Test h_u(-x) = (-1)^u h_u(x)."""
        x = np.linspace(0.1, 3, 7)
        table = hermite_table(5, x)
        mirrored = hermite_table(5, -x)
        for u in range(6):
            assert_allclose(mirrored[u], (-1) ** u * table[u], atol=1e-15)

    def test_order_cap(self):
        """Test OrderTooHigh beyond the cap."""
        with pytest.raises(OrderTooHigh):
            hermite_function(9, np.zeros(3))
        assert hermite_function(9, np.zeros(3), cap=9).shape == (3,)

    def test_negative_order(self):
        """Test ValueError on a negative order."""
        with pytest.raises(ValueError):
            hermite_table(-1, np.zeros(2))
