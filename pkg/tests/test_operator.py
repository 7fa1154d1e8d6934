"""Tests for the bc frame operator, its inverse and the canonical dual."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from bcframes import fixtures
from bcframes.exceptions import DimensionMismatch, LengthMismatch, NotInvertible
from bcframes.frames.analysis import bc_frame_report, frame_inequality_sample
from bcframes.frames.bicomplex import Bicomplex, Hyperbolic, is_hyperbolic_positive
from bcframes.frames.hilbert import inner_bc, random_bc_vector
from bcframes.frames.operator import (
    BcFrameOperator,
    CoefficientSequence,
    analysis,
    canonical_dual,
    frame_operator,
    invert,
    operator_norm,
    operator_norm_estimate,
    quadratic_form,
    reconstruct,
    reconstruction_residual,
    self_adjoint_residual,
    synthesis,
    worst_reconstruction,
)


FRAME_NAMES = ["embedded_onb", "doubled_onb", "mixed_tight", "weighted_onb", "cexp", "riesz"]


class TestCoefficientSequence:
    """Test bicomplex coefficient sequences."""

    def test_length_mismatch(self):
        """Test idempotent parts must share a length."""
        with pytest.raises(LengthMismatch):
            CoefficientSequence(np.ones(2), np.ones(3))

    def test_unit(self):
        """Test the unit sequence."""
        e = CoefficientSequence.unit(3, 1)
        assert e.values[1].close(Bicomplex(1, 1))
        assert e.values[0].close(Bicomplex(0, 0))

    def test_list_round_trip(self):
        """Test to_list / from_list."""
        c = CoefficientSequence(np.array([1 + 1j, 2]), np.array([0, 3j]))
        again = CoefficientSequence.from_list(c.to_list())
        assert_allclose(again.alpha, c.alpha)
        assert_allclose(again.beta, c.beta)


class TestAnalysisSynthesis:
    """Test T and its adjoint."""

    def test_adjoint_relation(self, rng, random_frame):
        """Test <T f, c> = <f, T^adj c>."""
        f = random_bc_vector(rng, 4)
        parts = rng.standard_normal((4, len(random_frame)))
        c = CoefficientSequence(parts[0] + 1j * parts[1], parts[2] + 1j * parts[3])
        lhs = analysis(random_frame, f).inner(c)
        rhs = inner_bc(f, synthesis(random_frame, c))
        assert lhs.close(rhs, 1e-12)

    def test_coefficients_are_inner_products(self, rng, random_frame):
        """Test (T f)_n = <f, f_n>."""
        f = random_bc_vector(rng, 4)
        coeffs = analysis(random_frame, f).values
        for k, v in enumerate(random_frame):
            assert coeffs[k].close(inner_bc(f, v))

    def test_synthesis_length_mismatch(self, random_frame):
        """Test LengthMismatch from synthesis."""
        with pytest.raises(LengthMismatch):
            synthesis(random_frame, CoefficientSequence.unit(3, 0))

    def test_analysis_dimension_mismatch(self, rng, random_frame):
        """Test DimensionMismatch from analysis."""
        with pytest.raises(DimensionMismatch):
            analysis(random_frame, random_bc_vector(rng, 3))


class TestFrameOperator:
    """Test S = T^adj T."""

    def test_equals_synthesis_of_analysis(self, rng, random_frame):
        """Test S f = sum <f, f_n> f_n."""
        op = frame_operator(random_frame)
        f = random_bc_vector(rng, 4)
        assert op.apply(f).close(synthesis(random_frame, analysis(random_frame, f)), 1e-12)

    def test_quadratic_form_is_hyperbolic_positive(self, rng, random_frame):
        """Test <S f, f> in D+ and its halved trace equals the real frame sum."""
        op = frame_operator(random_frame)
        for _ in range(200):
            f = random_bc_vector(rng, 4)
            q = quadratic_form(op, f)
            assert is_hyperbolic_positive(q)
            total = frame_inequality_sample(random_frame, f).sum
            assert (q.alpha.real + q.beta.real) / 2 == pytest.approx(total, rel=1e-12)

    def test_self_adjoint(self, rng, random_frame):
        """Test <S f, g> = <f, S g>."""
        op = frame_operator(random_frame)
        scale = operator_norm(op)
        for _ in range(20):
            f, g = random_bc_vector(rng, 4), random_bc_vector(rng, 4)
            assert self_adjoint_residual(op, f, g) / scale < 1e-12

    def test_operator_norm_is_upper_bound(self, random_frame):
        """Test ||S|| = B and the squared component estimate."""
        op = frame_operator(random_frame)
        report = bc_frame_report(random_frame)
        assert operator_norm(op) == pytest.approx(report.B, rel=1e-12)
        estimate = operator_norm_estimate(op)
        assert estimate.holds
        assert estimate.estimate <= estimate.bound * (1 + 1e-12)

    @pytest.mark.parametrize("name", ["embedded_onb", "doubled_onb", "mixed_tight", "weighted_onb", "cexp"])
    def test_power_iteration_reaches_b(self, name):
        """Test the power iteration estimate converges to B on the stock frames."""
        family = fixtures.frame_fixture(name)
        estimate = operator_norm_estimate(frame_operator(family))
        assert estimate.estimate == pytest.approx(bc_frame_report(family).B, rel=1e-8)

    def test_norm_estimate_ignores_eigensystems(self):
        """Test the estimate comes from the matrices, so a wrong spectrum breaks the bound."""
        op = BcFrameOperator(np.diag([1.0, 5.0]), np.diag([2.0, 3.0]))
        op.__dict__["eig_plus"] = op.eig_minus
        estimate = operator_norm_estimate(op)
        assert estimate.estimate == pytest.approx(5.0, rel=1e-8)
        assert estimate.bound == pytest.approx(3.0)
        assert not estimate.holds

    def test_tight_frame_is_scalar(self):
        """Test S = d Id with real d for a tight frame."""
        op = frame_operator(fixtures.doubled_onb(3))
        assert op.deviation_from_scalar(Hyperbolic(2.0, 2.0)) <= 1e-10 * 2

    def test_mixed_tight_is_hyperbolic_scalar(self):
        """Test S = d Id with d = e+ + 2 e- outside the reals."""
        op = frame_operator(fixtures.mixed_tight(3))
        assert op.deviation_from_scalar(Hyperbolic(1.0, 2.0)) <= 1e-12

    def test_shape_mismatch(self):
        """Test component operators must share a square shape."""
        with pytest.raises(DimensionMismatch):
            BcFrameOperator(np.eye(2), np.eye(3))

    def test_to_dict(self, onb3):
        """Test the operator report."""
        data = frame_operator(onb3).to_dict()
        assert data["dim"] == 3
        assert data["eigenvalues_plus"] == pytest.approx([1.0, 1.0, 1.0])
        assert data["hermitian_residual"] == 0.0


class TestInverseAndDual:
    """Test S^-1, the canonical dual and reconstruction."""

    def test_inverse(self, random_frame):
        """Test S S^-1 = Id componentwise."""
        op = frame_operator(random_frame)
        inv = invert(op)
        assert_allclose(op.s_plus @ inv.s_plus, np.eye(4), atol=1e-10)
        assert_allclose(op.s_minus @ inv.s_minus, np.eye(4), atol=1e-10)

    def test_singular(self):
        """Test NotInvertible on a non-frame."""
        family = fixtures.rank_deficient(3)
        assert not frame_operator(family).is_invertible()
        with pytest.raises(NotInvertible):
            canonical_dual(family)

    def test_scalar_inverse(self):
        """Test (d Id)^-1 = d^-1 Id."""
        inv = invert(BcFrameOperator.scalar(Hyperbolic(2.0, 4.0), 3))
        assert inv.deviation_from_scalar(Hyperbolic(0.5, 0.25)) <= 1e-14

    @pytest.mark.parametrize("name", FRAME_NAMES)
    def test_reconstruction(self, rng, name):
        """Test both reconstruction formulas through the canonical dual."""
        family = fixtures.frame_fixture(name)
        dual = canonical_dual(family)
        signals = [random_bc_vector(rng, family.dim) for _ in range(100)]
        assert worst_reconstruction(family, signals, dual) < 1e-9

    def test_reconstruct_single_signal(self, rng, random_frame):
        """Test reconstruct returns the signal."""
        dual = canonical_dual(random_frame)
        f = random_bc_vector(rng, 4)
        assert reconstruct(random_frame, dual, f).close(f, 1e-10)
        residual = reconstruction_residual(random_frame, dual, f)
        assert residual.worst == max(residual.primal, residual.dual)

    def test_dual_of_parseval_is_itself(self, onb3):
        """Test the canonical dual of a Parseval frame."""
        dual = canonical_dual(onb3)
        assert_allclose(dual.plus_matrix, onb3.plus_matrix, atol=1e-14)
