"""Unit tests for coordinate tori, isotopes, involutions and invariants."""

from fractions import Fraction

import pytest

from src.coord_tori import (
    ALTERNATIVE, ASSOCIATIVE, JORDAN, FlavorError, IncompatibleAlgebraError, Involution, JordanPlusTorus,
    LaurentTorus, NotInvertibleError, OctonionTorus, PreconditionError, QuantumTorus, SpinFactorTorus, SupportError,
    TorusError, alternative_isotope, commutator_degree_test, invariants, involution_isotope, jordan_isotope,
    jordan_triple, octonion_witness, opposite, perturb_structure, quantum_structure, sigma_of_support, u_operator,
)
from src.exact_scalars import root_of_unity

Q_MINUS = [[1, -1], [-1, 1]]


@pytest.fixture
def quantum():
    return QuantumTorus(2, Q_MINUS)


@pytest.fixture
def spin():
    return SpinFactorTorus(3)


class TestQuantumTorus:

    def test_generators_anticommute(self, quantum):
        x1, x2 = quantum.basis((1, 0)), quantum.basis((0, 1))
        assert x2 * x1 == -(x1 * x2)
        assert quantum.commutation_factor((1, 0), (0, 1)) == -1

    def test_normal_order_structure(self):
        assert quantum_structure(Q_MINUS, (0, 1), (1, 0)) == -1
        assert quantum_structure(Q_MINUS, (1, 0), (0, 1)) == 1
        assert quantum_structure(Q_MINUS, (0, 1), (2, 0)) == 1

    def test_root_of_unity_entries(self):
        """q12 = zeta_3 given as {"zeta": 1}."""
        A = QuantumTorus(2, [[1, {'zeta': 1}], [{'zeta': 2}, 1]], m=3)
        assert A.commutation_factor((1, 0), (0, 1)) == root_of_unity(3, 2)
        assert A.gamma_generators()[:2] == [(3, 0), (0, 3)]

    def test_malformed_q(self):
        with pytest.raises(TorusError):
            QuantumTorus(2, [[1, -1], [1, 1]])
        with pytest.raises(TorusError):
            QuantumTorus(2, [[-1, 1], [1, 1]])
        with pytest.raises(TorusError):
            QuantumTorus(2, [[1, 2], [Fraction(1, 2), 1]])

    def test_inverse(self, quantum):
        x = quantum.basis((1, 1), 3)
        assert x * quantum.inverse(x) == quantum.identity()
        assert quantum.inverse(x) * x == quantum.identity()

    def test_inverse_needs_homogeneous(self, quantum):
        with pytest.raises(NotInvertibleError):
            quantum.inverse(quantum.basis((1, 0)) + quantum.basis((0, 1)))

    def test_commutator_degrees(self, quantum):
        assert commutator_degree_test(quantum, (1, 0))
        assert not commutator_degree_test(quantum, (2, 0))
        assert not commutator_degree_test(LaurentTorus(2), (1, 1))

    def test_sign_matrix(self, quantum):
        assert quantum.is_sign_matrix()
        assert quantum.q_signs() == Q_MINUS

    def test_mixing_tori(self, quantum):
        other = QuantumTorus(2, Q_MINUS)
        with pytest.raises(IncompatibleAlgebraError):
            quantum.basis((1, 0)) + other.basis((1, 0))

    def test_degree_length(self, quantum):
        with pytest.raises(SupportError):
            quantum.basis((1, 0, 0))


class TestOctonionTorus:

    def test_witness(self):
        left, right = octonion_witness(OctonionTorus())
        assert not left.is_zero()
        assert left == -right

    def test_generators_anticommute(self):
        A = OctonionTorus()
        x1, x2 = A.basis((1, 0, 0)), A.basis((0, 1, 0))
        assert x1 * x2 == -(x2 * x1)
        assert A.flavor == ALTERNATIVE

    def test_extra_laurent_variables_are_central(self):
        A = OctonionTorus(extra_laurent=1)
        t, x1 = A.basis((0, 0, 0, 1)), A.basis((1, 0, 0, 0))
        assert t * x1 == x1 * t
        assert A.gamma_generators()[-1] == (0, 0, 0, 1)


class TestJordanTori:

    def test_plus_product_of_anticommuting_generators(self, quantum):
        plus = JordanPlusTorus(quantum)
        assert (plus.basis((1, 0)) * plus.basis((0, 1))).is_zero()
        assert plus.basis((1, 0)) * plus.basis((1, 0)) == plus.basis((2, 0))
        assert plus.flavor == JORDAN

    def test_spin_support(self, spin):
        assert spin.in_support((2, 0, 0))
        assert spin.in_support((1, 0, 0))
        assert spin.in_support((1, 1, 1))
        assert not spin.in_support((1, 1, 0))

    def test_spin_products(self, spin):
        x1, x2 = spin.basis((1, 0, 0)), spin.basis((0, 1, 0))
        assert (x1 * x2).is_zero()
        assert x1 * x1 == spin.basis((2, 0, 0))

    def test_coefficients_outside_support_vanish(self, spin):
        """(1,1,0) is not a support degree, though (1,1,0) + (1,1,0) is."""
        assert not spin.mul_coeff((1, 1, 0), (1, 1, 0))
        assert not spin.mul_coeff((1, 0, 0), (0, 1, 1))
        assert not spin.triple_coeff((1, 1, 0), (1, 0, 0), (0, 1, 0))
        assert spin.mul_coeff((1, 0, 0), (1, 0, 0)) == spin.one_scalar

    def test_spin_rejects_bad_vectors(self):
        with pytest.raises(TorusError):
            SpinFactorTorus(2, [(2, 0), (0, 1)])
        with pytest.raises(TorusError):
            SpinFactorTorus(2, [(1, 0), (3, 0)])

    def test_u_operator_inverse(self, spin):
        x = spin.basis((1, 0, 0))
        assert u_operator(x, spin.inverse(x)) == x

    def test_triple_needs_jordan(self, quantum):
        x = quantum.basis((1, 0))
        with pytest.raises(FlavorError):
            jordan_triple(x, x, x)


class TestIsotopes:

    def test_jordan_isotope_unit_and_support(self, spin):
        iso = jordan_isotope(spin, (-1, 0, 0))
        assert iso.identity() == iso.basis((0, 0, 0))
        assert iso.in_support((1, 0, 0))
        assert not iso.in_support((0, 1, 0))
        assert iso.in_support((0, 1, 0)) == spin.in_support((1, 1, 0))

    def test_jordan_isotope_needs_support(self, spin):
        with pytest.raises(NotInvertibleError):
            jordan_isotope(spin, (1, 1, 0))

    def test_jordan_isotope_needs_jordan(self, quantum):
        with pytest.raises(FlavorError):
            jordan_isotope(quantum, (1, 0))

    def test_alternative_isotope_unit(self, quantum):
        iso = alternative_isotope(quantum, (1, 0), (0, 1))
        e = iso.identity()
        x = iso.basis((1, 1))
        assert e * x == x
        assert x * e == x

    def test_alternative_isotope_unit_map(self, quantum):
        iso = alternative_isotope(quantum, (1, 0), (0, 1))
        f = iso.unit_map()
        x, y = quantum.basis((1, 0)), quantum.basis((1, 1))
        assert f(x * y) == f(x) * f(y)

    def test_opposite(self, quantum):
        op = opposite(quantum)
        assert op.commutation_factor((1, 0), (0, 1)) == quantum.commutation_factor((0, 1), (1, 0))
        assert op.identity() == op.basis((0, 0))

    def test_perturbation_changes_one_constant(self, quantum):
        bad = perturb_structure(quantum, (1, 0), (0, 1))
        assert bad.structure((1, 0), (0, 1)) == -quantum.structure((1, 0), (0, 1))
        assert bad.structure((0, 1), (1, 0)) == quantum.structure((0, 1), (1, 0))


class TestInvolutions:

    def test_signs(self, quantum):
        iota = Involution.from_signs(quantum, [1, 1])
        assert iota.sign((1, 0)) == 1
        assert iota.sign((1, 1)) == -1
        assert iota.apply(quantum.basis((1, 1))) == -quantum.basis((1, 1))

    def test_reverses_products(self, quantum):
        iota = Involution.from_signs(quantum, [1, -1])
        x, y = quantum.basis((1, 0)), quantum.basis((0, 1))
        assert iota.apply(x * y) == iota.apply(y) * iota.apply(x)

    def test_isotope_needs_hermitian(self, quantum):
        iota = Involution.from_signs(quantum, [1, 1])
        with pytest.raises(PreconditionError):
            involution_isotope(iota, (1, 1))

    def test_isotope_signs(self, quantum):
        iota = Involution.from_signs(quantum, [1, 1])
        iso = involution_isotope(iota, (0, 1))
        assert iso.sign((1, 0)) == -1
        assert iso.sign((0, 1)) == 1
        assert iso.to_json() == {'e': [1, 1], 'h': [[0, 1]]}

    def test_bad_signs(self, quantum):
        with pytest.raises(TorusError):
            Involution.from_signs(quantum, [1, 2])
        with pytest.raises(TorusError):
            Involution.from_signs(SpinFactorTorus(2), [1, 1])


class TestInvariants:

    def test_quantum_gamma(self, quantum):
        info = invariants(quantum)
        assert info['gamma_index'] == 4
        assert info['quotient_invariants'] == [2, 2]
        assert info['centrality_consistent']

    def test_laurent_gamma_is_everything(self):
        info = invariants(LaurentTorus(2))
        assert info['gamma_index'] == 1
        assert info['sigma_is_zero']

    def test_spin_sigma_vanishes(self, spin):
        info = invariants(spin)
        assert info['sigma'] == [0, 0, 0]
        assert info['support_coset_count'] == 5
        assert info['centrality_consistent']
        assert sigma_of_support(spin) == (0, 0, 0)

    def test_spin_isotope_sigma(self, spin):
        """Shifting the support by -lambda_1 moves Sigma(S/Gamma) to lambda_1."""
        iso = jordan_isotope(spin, (-1, 0, 0))
        assert invariants(iso)['sigma'] == [1, 0, 0]
        assert sigma_of_support(iso) == (1, 0, 0)

    def test_flavors(self, quantum, spin):
        assert quantum.flavor == ASSOCIATIVE
        assert spin.flavor == JORDAN
