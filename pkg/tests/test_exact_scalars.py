"""Unit tests for cyclotomic scalar arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.exact_scalars import (
    CycScalar, IncompatibleFieldError, cyc_inv, cyclotomic_coeffs, euler_phi, power, root_exponent, root_of_unity,
)


def scalars(order):
    """Scalars of Q(zeta_order) with small rational coefficients."""
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    return st.lists(coeff, min_size=euler_phi(order), max_size=euler_phi(order)).map(
        lambda cs: CycScalar(order, cs))


class TestCyclotomicPolynomials:

    def test_known_polynomials(self):
        """Phi_2 = x + 1, Phi_3 = x^2 + x + 1, Phi_4 = x^2 + 1."""
        assert cyclotomic_coeffs(2) == (1, 1)
        assert cyclotomic_coeffs(3) == (1, 1, 1)
        assert cyclotomic_coeffs(4) == (1, 0, 1)

    def test_euler_phi(self):
        assert [euler_phi(m) for m in (1, 2, 3, 4, 5, 6, 8, 12)] == [1, 1, 2, 2, 4, 2, 4, 4]

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            cyclotomic_coeffs(0)


class TestRootsOfUnity:

    def test_sign_in_rational_field(self):
        """zeta_2 is -1."""
        assert root_of_unity(2) == -1
        assert root_of_unity(2).as_sign() == -1

    def test_fourth_root_squares_to_minus_one(self):
        i = root_of_unity(4)
        assert i * i == -1
        assert i ** 4 == 1

    def test_cube_roots_sum_to_zero(self):
        total = root_of_unity(3, 0) + root_of_unity(3, 1) + root_of_unity(3, 2)
        assert total.is_zero()

    def test_exponent_is_reduced_mod_m(self):
        assert root_of_unity(6, 7) == root_of_unity(6, 1)
        assert root_of_unity(6, -1) == root_of_unity(6, 5)

    def test_root_exponent(self):
        assert root_exponent(root_of_unity(5, 3)) == 3
        with pytest.raises(ValueError):
            root_exponent(CycScalar.from_rational(2, 5))


class TestArithmetic:

    def test_mixed_operands(self):
        z = root_of_unity(3)
        assert 1 + z == z + 1
        assert 2 * z == z + z
        assert (z - 1) + 1 == z
        assert 1 - z == -(z - 1)
        assert Fraction(1, 2) * CycScalar.from_rational(4, 3) == 2

    def test_division(self):
        z = root_of_unity(8)
        assert (1 / z) * z == 1
        assert z / z == 1

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            cyc_inv(CycScalar.zero(3))
        with pytest.raises(ZeroDivisionError):
            CycScalar.one(2) / 0

    def test_incompatible_orders(self):
        with pytest.raises(IncompatibleFieldError):
            root_of_unity(3) + root_of_unity(4)

    def test_negative_power(self):
        z = root_of_unity(5)
        assert power(z, -2) == root_of_unity(5, 3)

    def test_hash_agrees_with_rationals(self):
        assert hash(CycScalar.from_rational(3, 4)) == hash(3)
        assert len({CycScalar.one(2), CycScalar.one(2)}) == 1

    def test_as_rational_rejects_irrational(self):
        with pytest.raises(ValueError):
            root_of_unity(3).as_rational()
        with pytest.raises(ValueError):
            CycScalar.from_rational(2).as_sign()

    def test_json_round_trip(self):
        value = Fraction(1, 3) + 2 * root_of_unity(5, 2)
        assert CycScalar.from_json(value.to_json()) == value

    def test_string_forms(self):
        assert str(CycScalar.from_rational(Fraction(-1, 2))) == "-1/2"
        assert "z" in str(root_of_unity(3))


class TestFieldAxioms:

    @settings(max_examples=40, deadline=None)
    @given(scalars(5), scalars(5), scalars(5))
    def test_distributive_and_associative(self, a, b, c):
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a

    @settings(max_examples=40, deadline=None)
    @given(scalars(12))
    def test_inverse(self, a):
        if a.is_zero():
            return
        assert a * cyc_inv(a) == 1
