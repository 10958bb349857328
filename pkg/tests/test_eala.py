"""Unit tests for the extended affine Lie algebra of a Lie torus and the chi isomorphism."""

import pytest

from src.coord_tori import LaurentTorus, QuantumTorus, SpinFactorTorus
from src.eala import (
    EalaModel, NoFormError, chi_iso, check_eala, check_ev_injective, check_root_spaces, core_membership,
    degree_derivation_apply, der_basis, eala_bracket, eala_form, perturb_chi, root_space, scder_bracket,
    sigma_cocycle, verify_chi,
)
from src.lattice import ShiftHom
from src.lie_tori import LieTorusError, ModelMismatchError, SLModel, TKKModel

ALPHA = (1, -1)


@pytest.fixture
def sl2():
    return SLModel(LaurentTorus(1), 1)


@pytest.fixture
def eala(sl2):
    return EalaModel(sl2)


class TestDerivations:

    def test_der_basis(self):
        assert der_basis(2, (0, 0)) == ((1, 0), (0, 1))
        assert der_basis(2, (2, 4)) == ((2, -1),)
        assert der_basis(1, (3,)) == ()

    def test_skew_condition(self, eala):
        with pytest.raises(LieTorusError):
            eala.derivation((1,), [1])

    def test_outside_gamma(self):
        E = EalaModel(SLModel(QuantumTorus(2, [[1, -1], [-1, 1]]), 1))
        with pytest.raises(LieTorusError):
            E.derivation((1, 0), [0, 1])
        assert E.in_gamma((2, 0))

    def test_scder_bracket(self):
        E = EalaModel(SLModel(LaurentTorus(2), 1))
        d1 = E.derivation((1, 0), [0, 1])
        d2 = E.derivation((0, 1), [1, 0])
        assert scder_bracket(E, d1, d2) == E.derivation((1, 1), [1, -1])

    def test_degree_derivation(self, eala, sl2):
        [x] = sl2.basis(ALPHA, (2,))
        assert degree_derivation_apply(eala, [1], x) == x.scale(2)


class TestStructure:

    def test_form(self, eala, sl2):
        [e] = sl2.basis(ALPHA, (1,))
        [f] = sl2.basis((-1, 1), (-1,))
        assert eala.form(e, f) == 1
        assert eala.form(e, e) == 0

    def test_central_extension(self, eala, sl2):
        """[e t, f t^-1] picks up the central term ev(1)."""
        [e] = sl2.basis(ALPHA, (1,))
        [f] = sl2.basis((-1, 1), (-1,))
        result = eala_bracket(eala.lie(e), eala.lie(f))
        assert result.c == {(0,): (eala.scalar(1),)}
        assert result == eala.lie(sl2.bracket(e, f)) + eala.ev((1,))

    def test_sigma_cocycle_value(self, eala, sl2):
        [e] = sl2.basis(ALPHA, (1,))
        [f] = sl2.basis((-1, 1), (-1,))
        d = eala.derivation((0,), [1])
        assert sigma_cocycle(eala, e, f, d) == 1

    def test_form_pairs_d_with_c(self, eala):
        assert eala_form(eala.derivation((0,), [1]), eala.ev((3,))) == 3

    def test_root_spaces(self, eala):
        assert len(root_space(eala, (1,), ALPHA)) == 1
        assert len(eala.h_basis()) == 3
        result = check_root_spaces(eala, 1)
        assert result['passed']
        assert result['h_dimension'] == 3
        assert result['degree_zero_dimension'] == 5

    def test_core(self, eala):
        assert core_membership(eala.ev((1,)))
        assert not core_membership(eala.h_basis()[0])

    def test_ev_injective(self, eala):
        assert check_ev_injective(eala)['passed']

    def test_foreign_elements(self, eala, sl2):
        other = EalaModel(SLModel(LaurentTorus(1), 1))
        with pytest.raises(ModelMismatchError):
            eala_bracket(eala.ev((1,)), other.ev((1,)))
        with pytest.raises(ModelMismatchError):
            other.lie(sl2.basis(ALPHA, (0,))[0])

    def test_no_form_for_tkk(self):
        with pytest.raises(NoFormError):
            EalaModel(TKKModel(SpinFactorTorus(3)))

    def test_check_eala(self, eala):
        report = check_eala(eala, window=1)
        assert report['summary']['overall_passed'], report['errors']
        types = [c['check_type'] for c in report['checks']]
        assert 'sigma_cocycle' in types
        assert 'dc_pairing' in types


class TestChi:

    def test_chi_is_an_isomorphism(self, sl2):
        chi = chi_iso(sl2, ShiftHom.parse("1", sl2.datum))
        report = verify_chi(chi, window=1)
        assert report['summary']['overall_passed'], report['errors']
        assert 'cocycle_transport' in [c['check_type'] for c in report['checks']]

    def test_chi_keeps_derivations(self, sl2):
        chi = chi_iso(sl2, ShiftHom.parse("1", sl2.datum))
        d = chi.source.derivation((0,), [1])
        assert chi(d).d == d.d
        assert not chi(d).l.is_zero()

    def test_degree_map(self, sl2):
        chi = chi_iso(sl2, ShiftHom.parse("1", sl2.datum))
        assert chi.degree_map((ALPHA, (2,))) == (ALPHA, (1,))
        assert chi.degree_map(((-1, 1), (2,))) == ((-1, 1), (3,))

    def test_perturbed_chi_fails(self, sl2):
        chi = perturb_chi(chi_iso(sl2, ShiftHom.parse("1", sl2.datum)))
        assert not verify_chi(chi, window=1)['summary']['overall_passed']

    def test_no_form(self):
        model = TKKModel(SpinFactorTorus(3))
        with pytest.raises(NoFormError):
            chi_iso(model, ShiftHom.parse("1,0,0", model.datum))

    def test_source_mismatch(self, sl2, eala):
        chi = chi_iso(sl2, ShiftHom.parse("1", sl2.datum))
        with pytest.raises(ModelMismatchError):
            chi(eala.ev((1,)))
