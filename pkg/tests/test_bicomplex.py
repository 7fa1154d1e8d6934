"""Tests for bicomplex and hyperbolic arithmetic."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bcframes.exceptions import ParseError, ZeroDivisor
from bcframes.frames.bicomplex import (
    E_MINUS,
    E_PLUS,
    ONE,
    UNIT_I,
    UNIT_IJ,
    UNIT_J,
    Bicomplex,
    Hyperbolic,
    conj_dagger,
    conj_star,
    conj_tilde,
    from_idempotent,
    idempotent_split,
    is_hyperbolic_positive,
    modulus,
    mul,
    mul_cartesian,
    try_invert,
)


complexes = st.complex_numbers(max_magnitude=100, allow_nan=False, allow_infinity=False)
bicomplexes = st.builds(Bicomplex.from_cartesian, complexes, complexes)


class TestUnits:
    """Test the idempotent units and imaginary units."""

    def test_idempotents(self):
        """Test e+^2 = e+, e-^2 = e-, e+ e- = 0 and e+ + e- = 1."""
        assert (E_PLUS * E_PLUS).close(E_PLUS)
        assert (E_MINUS * E_MINUS).close(E_MINUS)
        assert (E_PLUS * E_MINUS).close(Bicomplex(0, 0))
        assert (E_PLUS + E_MINUS).close(ONE)

    def test_difference_is_ij(self):
        """Test e+ - e- = ij."""
        assert (E_PLUS - E_MINUS).close(UNIT_IJ)
        assert (UNIT_I * UNIT_J).close(UNIT_IJ)

    def test_imaginary_units_square_to_minus_one(self):
        """Test i^2 = j^2 = -1 and (ij)^2 = 1."""
        assert (UNIT_I * UNIT_I).close(-ONE)
        assert (UNIT_J * UNIT_J).close(-ONE)
        assert (UNIT_IJ * UNIT_IJ).close(ONE)

    def test_idempotent_factors(self):
        """Test e+ = (1 + ij)/2 in cartesian coordinates."""
        assert E_PLUS.close(Bicomplex.from_cartesian(0.5, 0.5j))
        assert E_MINUS.close(Bicomplex.from_cartesian(0.5, -0.5j))


class TestArithmetic:
    """Test products, inverses and the idempotent split."""

    @given(bicomplexes)
    def test_idempotent_round_trip(self, z):
        """Test from_idempotent(idempotent_split(Z)) == Z."""
        assert from_idempotent(idempotent_split(z)).close(z, 1e-15)

    @given(bicomplexes, bicomplexes)
    @settings(max_examples=200)
    def test_product_agrees_with_cartesian_expansion(self, z, w):
        """Test componentwise idempotent product against the polynomial product."""
        scale = max(1.0, modulus(z) * modulus(w))
        assert modulus(mul(z, w) - mul_cartesian(z, w)) <= 1e-13 * scale

    @given(bicomplexes, bicomplexes)
    def test_product_modulus_bound(self, z, w):
        """Test |Z W| <= sqrt(2) |Z| |W|."""
        assert modulus(z * w) <= math.sqrt(2) * modulus(z) * modulus(w) * (1 + 1e-12) + 1e-300

    def test_saturated_product_bound(self):
        """Test that e+ e+ reaches the sqrt(2) factor."""
        assert math.isclose(modulus(E_PLUS * E_PLUS), math.sqrt(2) * modulus(E_PLUS) ** 2)

    def test_inverse(self):
        """Test Z / Z == 1 for an invertible number."""
        z = Bicomplex.from_cartesian(1 + 2j, 0.5 - 1j)
        assert (z / z).close(ONE)
        assert (try_invert(z) * z).close(ONE)

    def test_scalar_coercion(self):
        """Test mixing complex scalars with bicomplex numbers."""
        z = Bicomplex.from_cartesian(1, 2)
        assert (2 * z).close(z + z)
        assert (z - 1).close(Bicomplex.from_cartesian(0, 2))
        assert (1 - z).close(-(z - 1))

    @pytest.mark.parametrize("z", [E_PLUS, E_MINUS, Bicomplex(0, 0), Bicomplex(3j, 0)])
    def test_zero_divisor_inversion_raises(self, z):
        """Test ZeroDivisor on zero divisors."""
        assert z.is_zero_divisor()
        with pytest.raises(ZeroDivisor):
            try_invert(z)

    def test_zero_divisor_factor(self):
        """Test Z = lambda (1 + s ij) for zero divisors."""
        for z, sign in ((Bicomplex(2 + 1j, 0), 1), (Bicomplex(0, -3), -1)):
            lam, s = z.zero_divisor_factor()
            assert s == sign
            assert (Bicomplex.scalar(lam) * (ONE + s * UNIT_IJ)).close(z)

    def test_zero_divisor_factor_rejects_invertible(self):
        """Test zero_divisor_factor on an invertible number."""
        with pytest.raises(ValueError):
            ONE.zero_divisor_factor()


class TestConjugations:
    """Test the three conjugations."""

    @given(bicomplexes)
    def test_involutions(self, z):
        """Test each conjugation is an involution."""
        for conj in (conj_dagger, conj_tilde, conj_star):
            assert conj(conj(z)).close(z)

    @given(bicomplexes)
    def test_composition(self, z):
        """Test dagger after tilde gives star."""
        assert conj_dagger(conj_tilde(z)).close(conj_star(z))

    def test_cartesian_meaning(self):
        """Test the cartesian action of each conjugation."""
        z = Bicomplex.from_cartesian(1 + 2j, 3 - 4j)
        assert conj_dagger(z).close(Bicomplex.from_cartesian(1 + 2j, -(3 - 4j)))
        assert conj_tilde(z).close(Bicomplex.from_cartesian(1 - 2j, 3 + 4j))
        assert conj_star(z).close(Bicomplex.from_cartesian(1 - 2j, -(3 + 4j)))

    @given(bicomplexes)
    def test_dagger_product_is_complex(self, z):
        """Test Z Z^dagger = z1^2 + z2^2 with no j part."""
        p = z * conj_dagger(z)
        scale = max(1.0, modulus(z) ** 2)
        assert abs(p.z2) <= 1e-12 * scale
        assert abs(p.z1 - (z.z1 ** 2 + z.z2 ** 2)) <= 1e-12 * scale

    def test_dagger_product_vanishes_on_zero_divisors(self):
        """Test modulus(Z Z^dagger) == 0 exactly on zero divisors."""
        assert modulus(E_PLUS * conj_dagger(E_PLUS)) == 0
        assert modulus(ONE * conj_dagger(ONE)) > 0


class TestModulus:
    """Test the Euclidean modulus."""

    @given(complexes, complexes)
    def test_cartesian_formula(self, z1, z2):
        """Test |Z|^2 = |z1|^2 + |z2|^2."""
        z = Bicomplex.from_cartesian(z1, z2)
        expected = math.sqrt(abs(z1) ** 2 + abs(z2) ** 2)
        assert math.isclose(z.modulus(), expected, rel_tol=1e-12, abs_tol=1e-300)


class TestHyperbolic:
    """Test hyperbolic numbers and positivity."""

    def test_positive_cone(self):
        """Test membership in D+."""
        assert Hyperbolic(1.0, 2.0).is_positive()
        assert Hyperbolic(0.0, 0.0).is_positive()
        assert not Hyperbolic(-1.0, 2.0).is_positive()

    def test_real_axis(self):
        """Test p == m detection."""
        assert Hyperbolic(2.0, 2.0).is_real()
        assert not Hyperbolic(1.0, 2.0).is_real()

    def test_arithmetic(self):
        """Test componentwise sum and product."""
        h = Hyperbolic(1.0, 2.0) * Hyperbolic(3.0, 4.0) + Hyperbolic(1.0, 1.0)
        assert h == Hyperbolic(4.0, 9.0)
        assert h.to_bicomplex().close(Bicomplex(4, 9))

    def test_hyperbolic_positive_bicomplex(self):
        """Test is_hyperbolic_positive on bicomplex numbers."""
        assert is_hyperbolic_positive(Bicomplex(1.0, 0.0))
        assert not is_hyperbolic_positive(Bicomplex(1.0, -1.0))
        assert not is_hyperbolic_positive(Bicomplex(1j, 1.0))
        assert not is_hyperbolic_positive(UNIT_J)


class TestSerialization:
    """Test the four-real JSON encoding."""

    def test_round_trip(self):
        """Test to_list / from_list."""
        z = Bicomplex.from_cartesian(1 - 2j, 0.25 + 3j)
        assert z.to_list() == pytest.approx([1.0, -2.0, 0.25, 3.0])
        assert Bicomplex.from_list(z.to_list()).close(z)

    def test_wrong_length(self):
        """Test ParseError on a malformed array."""
        with pytest.raises(ParseError):
            Bicomplex.from_list([1.0, 2.0, 3.0])

