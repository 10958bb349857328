"""Unit tests for mod-2 quadratic forms, isometry search and the torus correspondence."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.coord_tori import Involution, QuantumTorus
from src.quadform2 import (
    CapacityError, QuadFormError, QuadFormF2, arf_invariant, check_form_matches_torus,
    check_involution_isotope_invariance, classify, compose, form_of_involution, from_torus_with_involution, invert,
    is_isometric, isotope_witness, polarization_rank, radical, shift_by, to_torus_with_involution, values,
    verify_isometry,
)

Q_MINUS = [[1, -1], [-1, 1]]


@pytest.fixture
def hyperbolic():
    """l1 l2: nondegenerate with Arf invariant 0."""
    return QuadFormF2.from_bits(2, [0, 0], [[0, 1], [0, 0]])


@pytest.fixture
def anisotropic():
    """l1 + l2 + l1 l2: nondegenerate with Arf invariant 1."""
    return QuadFormF2.from_bits(2, [1, 1], [[0, 1], [0, 0]])


class TestQuadFormF2:

    def test_table(self, hyperbolic, anisotropic):
        assert hyperbolic.table == (0, 0, 0, 1)
        assert anisotropic.table == (0, 1, 1, 1)

    def test_from_bits_symmetrizes(self):
        lower = QuadFormF2.from_bits(2, [1, 0], [[0, 0], [1, 0]])
        assert lower.a == ((0, 1), (0, 0))

    def test_rejects_bad_data(self):
        with pytest.raises(QuadFormError):
            QuadFormF2(2, (0, 2), ((0, 0), (0, 0)))
        with pytest.raises(QuadFormError):
            QuadFormF2(2, (0, 0), ((0, 0), (1, 0)))
        with pytest.raises(QuadFormError):
            QuadFormF2.from_json({'b': [0]})

    def test_code_round_trip(self, anisotropic):
        assert QuadFormF2.from_code(2, anisotropic.code()) == anisotropic

    def test_string(self, anisotropic):
        assert str(anisotropic) == "l1 + l2 + l1l2"
        assert str(QuadFormF2.zero(3)) == "0"

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 63), st.integers(0, 7), st.integers(0, 7), st.integers(0, 7))
    def test_polarization_is_alternating_bilinear(self, code, u, v, w):
        kappa = QuadFormF2.from_code(3, code)
        assert kappa.polar(u, u) == 0
        assert kappa.polar(u, v) == kappa.polar(v, u)
        assert kappa.polar(u, v ^ w) == kappa.polar(u, v) ^ kappa.polar(u, w)


class TestInvariants:

    def test_arf(self, hyperbolic, anisotropic):
        assert arf_invariant(hyperbolic) == 0
        assert arf_invariant(anisotropic) == 1
        assert arf_invariant(QuadFormF2.from_bits(2, [1, 0])) is None

    def test_values_and_rank(self, hyperbolic):
        assert values(hyperbolic) == (3, 1)
        assert polarization_rank(hyperbolic) == 2
        assert polarization_rank(QuadFormF2.from_bits(3, [1, 1, 0])) == 0

    def test_radical(self):
        kappa = QuadFormF2.from_bits(3, [0, 0, 1], [[0, 1, 0], [0, 0, 0], [0, 0, 0]])
        assert radical(kappa) == [0b100]


class TestTorusCorrespondence:

    def test_from_torus(self, hyperbolic):
        assert from_torus_with_involution(Q_MINUS, [1, 1]) == hyperbolic

    def test_back_to_torus(self):
        kappa = from_torus_with_involution(Q_MINUS, [1, -1])
        assert to_torus_with_involution(kappa) == (Q_MINUS, [1, -1])

    def test_non_sign_entries(self):
        with pytest.raises(QuadFormError):
            from_torus_with_involution([[1, 2], [2, 1]], [1, 1])
        with pytest.raises(QuadFormError):
            from_torus_with_involution(Q_MINUS, [1, 1, 1])

    def test_q_must_be_a_symmetric_sign_matrix(self):
        """Only the upper triangle feeds the form; the rest of q is still validated."""
        with pytest.raises(QuadFormError, match=r"q\[0\]\[1\]"):
            from_torus_with_involution([[1, -1], [1, 1]], [1, 1])
        with pytest.raises(QuadFormError, match="diagonal"):
            from_torus_with_involution([[-1, 1], [1, 1]], [1, 1])
        with pytest.raises(QuadFormError):
            from_torus_with_involution([[1, 1, -1], [1, 1, 1], [1, 1, 1]], [1, 1, 1])

    def test_form_of_involution(self, hyperbolic):
        iota = Involution.from_signs(QuantumTorus(2, Q_MINUS), [1, 1])
        assert form_of_involution(iota) == hyperbolic

    def test_form_matches_torus(self, hyperbolic):
        iota = Involution.from_signs(QuantumTorus(2, Q_MINUS), [1, 1])
        result = check_form_matches_torus(hyperbolic, iota, window=1)
        assert result['passed']
        assert result['check_type'] == 'form_matches_torus'

    def test_wrong_form_is_caught(self, anisotropic):
        iota = Involution.from_signs(QuantumTorus(2, Q_MINUS), [1, 1])
        result = check_form_matches_torus(anisotropic, iota, window=1)
        assert not result['passed']
        assert result['witnesses'][0]['issue'] == 'involution sign'

    def test_isotope_invariance(self):
        iota = Involution.from_signs(QuantumTorus(2, Q_MINUS), [1, -1])
        result = check_involution_isotope_invariance(iota)
        assert result['passed']
        assert [0, 0] in result['hermitian_classes']


class TestIsometries:

    def test_identity_for_equal_forms(self, hyperbolic):
        tau = is_isometric(hyperbolic, hyperbolic)
        assert np.array_equal(tau, np.eye(2, dtype=np.uint8))

    def test_not_isometric(self, hyperbolic, anisotropic):
        assert is_isometric(hyperbolic, anisotropic) is None
        assert is_isometric(QuadFormF2.from_bits(2, [1, 0]), hyperbolic) is None

    def test_found_witness_is_valid(self, hyperbolic):
        other = QuadFormF2.from_bits(2, [1, 0], [[0, 1], [0, 0]])
        tau = is_isometric(hyperbolic, other)
        assert tau is not None
        assert verify_isometry(hyperbolic, other, tau)

    def test_rank_mismatch(self, hyperbolic):
        with pytest.raises(QuadFormError):
            is_isometric(hyperbolic, QuadFormF2.zero(3))

    def test_capacity(self):
        kappa = QuadFormF2.zero(6)
        with pytest.raises(CapacityError):
            is_isometric(kappa, kappa, bound=5)
        with pytest.raises(CapacityError):
            classify(6)

    def test_shift_witness(self, hyperbolic):
        """Shifting by a zero of the form gives an isometric form with an explicit witness."""
        shifted = shift_by(hyperbolic, [1, 0])
        assert shifted == QuadFormF2.from_bits(2, [0, 1], [[0, 1], [0, 0]])
        assert verify_isometry(hyperbolic, shifted, isotope_witness(hyperbolic, [1, 0]))

    def test_singular_matrix_is_rejected(self, hyperbolic):
        assert not verify_isometry(hyperbolic, hyperbolic, np.zeros((2, 2), dtype=np.uint8))
        with pytest.raises(QuadFormError):
            invert(np.ones((2, 2), dtype=np.uint8))

    def test_inverse(self):
        tau = np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]], dtype=np.uint8)
        assert np.array_equal(compose(tau, invert(tau)), np.eye(3, dtype=np.uint8))


class TestClassify:

    def test_rank_one(self):
        assert sorted(c['size'] for c in classify(1)) == [1, 1]

    def test_rank_two(self):
        classes = classify(2)
        assert sorted(c['size'] for c in classes) == [1, 1, 3, 3]
        assert sum(c['size'] for c in classes) == 8
        assert sorted(c['arf'] for c in classes if c['arf'] is not None) == [0, 1]

    def test_rank_three_total(self):
        classes = classify(3)
        assert sum(c['size'] for c in classes) == 2 ** 6

    def test_invalid_rank(self):
        with pytest.raises(QuadFormError):
            classify(0)
