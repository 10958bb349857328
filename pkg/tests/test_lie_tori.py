"""Unit tests for Lie torus models, shift isotopes and graded maps."""

import pytest

from src.coord_tori import Involution, JordanPlusTorus, LaurentTorus, QuantumTorus, SpinFactorTorus
from src.lattice import RootDomainError, ShiftHom
from src.lie_tori import (
    InadmissibleShiftError, LieTorusError, MatrixAlgebra, ModelMismatchError, SLModel, SSPModel, TKKAlgebra,
    TKKModel, admissible, bracket, check_axioms, check_centreless, check_degree_zero, check_generation,
    check_one_dimensional, check_root_support, diag_conjugation_iso, exact_rank, identity_map, lambda_support,
    opposite_iso, perturb_map, shift_isotope, tkk_isotope_iso, verify_graded_map,
)

Q_MINUS = [[1, -1], [-1, 1]]
ALPHA = (1, -1)


@pytest.fixture
def sl2():
    """sl_2 over Laurent polynomials in one variable."""
    return SLModel(LaurentTorus(1), 1)


@pytest.fixture
def quantum_sl2():
    return SLModel(QuantumTorus(2, Q_MINUS), 1)


@pytest.fixture
def tkk_laurent():
    return TKKModel(JordanPlusTorus(LaurentTorus(1)))


class TestModels:

    def test_root_pieces(self, sl2):
        [e] = sl2.basis(ALPHA, (2,))
        assert sl2.degree_of(e) == (ALPHA, (2,))
        assert sl2.basis((2, -2), (0,)) == []

    def test_cartan_dimension_depends_on_centrality(self, quantum_sl2):
        assert len(quantum_sl2.basis((0, 0), (1, 0))) == 2
        assert len(quantum_sl2.basis((0, 0), (2, 0))) == 1

    def test_trace_condition(self, quantum_sl2):
        alg = quantum_sl2.algebra
        assert quantum_sl2.is_member(alg.unit(0, 0, (1, 0)))
        assert not quantum_sl2.is_member(alg.unit(0, 0, (2, 0)))

    def test_degree_of_mixed_element(self, sl2):
        [e] = sl2.basis(ALPHA, (0,))
        [f] = sl2.basis((-1, 1), (0,))
        assert sl2.degree_of(e + f) is None
        assert sl2.graded_component(e + f, ALPHA, (0,)) == e

    def test_bracket(self, sl2):
        [e] = sl2.basis(ALPHA, (1,))
        [f] = sl2.basis((-1, 1), (-1,))
        h = bracket(e, f)
        assert sl2.degree_of(h) == ((0, 0), (0,))
        assert bracket(h, e) == e.scale(2)

    def test_foreign_elements(self, sl2):
        other = SLModel(LaurentTorus(1), 1)
        with pytest.raises(ModelMismatchError):
            sl2.bracket(sl2.basis(ALPHA, (0,))[0], other.basis(ALPHA, (0,))[0])

    def test_algebra_flavors(self):
        with pytest.raises(LieTorusError):
            MatrixAlgebra(SpinFactorTorus(3), 2)
        with pytest.raises(LieTorusError):
            TKKAlgebra(QuantumTorus(2, Q_MINUS))
        with pytest.raises(LieTorusError):
            SLModel(LaurentTorus(1), 0)

    def test_ssp_needs_rank_two(self):
        A = QuantumTorus(2, Q_MINUS)
        with pytest.raises(LieTorusError):
            SSPModel(A, 1, Involution.from_signs(A, [1, 1]))

    def test_ssp_long_root_support(self):
        A = QuantumTorus(2, Q_MINUS)
        model = SSPModel(A, 2, Involution.from_signs(A, [1, 1]))
        long_root = model.datum.base[-1]
        assert model.in_lambda_support(long_root, (1, 0))
        assert not model.in_lambda_support(long_root, (1, 1))
        assert model.in_lambda_support(model.datum.base[0], (1, 1))

    def test_exact_rank(self, sl2):
        rows = [sl2.flatten(x) for x in sl2.basis(ALPHA, (0,)) + sl2.basis(ALPHA, (1,))]
        assert exact_rank(rows) == 2
        assert exact_rank(rows + [rows[0]]) == 2


class TestLambdaSupport:

    def test_full_support(self, sl2):
        support = lambda_support(sl2, ALPHA)
        assert support.contains((5,))
        assert support.to_json() == {'description': 'all of Z^1'}

    def test_spin_support(self):
        model = TKKModel(SpinFactorTorus(3))
        support = model.lambda_support(model.alpha)
        assert support.contains((1, 0, 0))
        assert not support.contains((1, 1, 0))

    def test_not_a_root(self, sl2):
        with pytest.raises(RootDomainError):
            sl2.lambda_support((0, 0))


class TestShiftIsotopes:

    def test_shift_moves_degrees(self, sl2):
        s = ShiftHom.parse("1", sl2.datum)
        shifted = shift_isotope(sl2, s)
        assert shifted.basis(ALPHA, (0,)) == sl2.basis(ALPHA, (1,))
        assert shifted.basis((-1, 1), (0,)) == sl2.basis((-1, 1), (-1,))

    def test_inadmissible(self):
        model = TKKModel(SpinFactorTorus(3))
        s = ShiftHom.parse("1,1,0", model.datum)
        assert not admissible(model, s)
        with pytest.raises(InadmissibleShiftError):
            shift_isotope(model, s)

    def test_admissible(self):
        model = TKKModel(SpinFactorTorus(3))
        assert admissible(model, ShiftHom.parse("1,0,0", model.datum))


class TestAxiomChecks:

    def test_individual_checks(self, sl2):
        assert check_root_support(sl2, 1)['passed']
        assert check_degree_zero(sl2)['passed']
        assert check_one_dimensional(sl2, 1)['passed']
        assert check_generation(sl2, 1)['passed']
        assert check_centreless(sl2, 1)['passed']

    def test_sl2_laurent(self, sl2):
        report = check_axioms(sl2, window=1)
        assert report['summary']['overall_passed'], report['errors']
        assert 'trace_condition' in [c['check_type'] for c in report['checks']]

    def test_shifted_model_is_still_a_lie_torus(self, sl2):
        shifted = shift_isotope(sl2, ShiftHom.parse("1", sl2.datum))
        assert check_axioms(shifted, window=1)['summary']['overall_passed']

    def test_tkk_laurent(self, tkk_laurent):
        report = check_axioms(tkk_laurent, window=1, max_checks=2000)
        assert report['summary']['overall_passed'], report['errors']
        assert 'inner_identity' in [c['check_type'] for c in report['checks']]


class TestGradedMaps:

    def test_identity(self, sl2):
        assert verify_graded_map(identity_map(sl2))['summary']['overall_passed']

    def test_diag_conjugation(self, sl2):
        phi = diag_conjugation_iso(sl2, ShiftHom.parse("1", sl2.datum))
        report = verify_graded_map(phi, window=1)
        assert report['summary']['overall_passed']
        assert [c['check_type'] for c in report['checks']] == [
            'map_grading', 'map_membership', 'map_injectivity', 'map_homomorphism',
        ]

    def test_perturbed_map_is_caught(self, sl2):
        phi = diag_conjugation_iso(sl2, ShiftHom.parse("1", sl2.datum))
        report = verify_graded_map(perturb_map(phi, ALPHA, (0,)), window=1)
        assert not report['summary']['overall_passed']
        failed = [c for c in report['checks'] if not c['passed']]
        assert [c['check_type'] for c in failed] == ['map_homomorphism']
        assert failed[0]['witnesses']

    def test_opposite(self, sl2):
        assert verify_graded_map(opposite_iso(sl2), window=1)['summary']['overall_passed']

    def test_tkk_isotope(self, tkk_laurent):
        phi = tkk_isotope_iso(tkk_laurent, ShiftHom.parse("1", tkk_laurent.datum))
        assert verify_graded_map(phi, window=1)['summary']['overall_passed']

    def test_wrong_model_kinds(self, sl2, tkk_laurent):
        s = ShiftHom.parse("1", sl2.datum)
        with pytest.raises(LieTorusError):
            diag_conjugation_iso(tkk_laurent, s)
        with pytest.raises(LieTorusError):
            tkk_isotope_iso(sl2, s)
        with pytest.raises(LieTorusError):
            opposite_iso(tkk_laurent)
