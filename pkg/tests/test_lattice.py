"""Unit tests for lattices, root data, shifts and cosets."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.lattice import (
    CosetSet, RootDatum, RootDomainError, ShiftHom, Sublattice, coset_sum, parse_vec, vec_add, window_points,
)


@pytest.fixture
def a2():
    return RootDatum('A', 2)


@pytest.fixture
def c3():
    return RootDatum('C', 3)


small_vecs = st.lists(st.integers(min_value=-4, max_value=4), min_size=2, max_size=2).map(tuple)


class TestRootDatum:

    def test_root_counts(self, a2, c3):
        """A_r has r(r+1) roots and C_r has 2r^2."""
        assert len(a2.roots) == 6
        assert len(c3.roots) == 18
        assert len(a2.positive_roots) == 3
        assert len(c3.positive_roots) == 9

    def test_base(self, a2, c3):
        assert a2.base == ((1, -1, 0), (0, 1, -1))
        assert c3.base[-1] == (0, 0, 2)
        assert c3.is_long((0, 0, 2))
        assert not c3.is_long((1, -1, 0))

    def test_base_coordinates(self, a2, c3):
        assert a2.to_base_coords((1, 0, -1)) == (1, 1)
        assert c3.to_base_coords((2, 0, 0)) == (2, 2, 1)
        assert c3.from_base_coords((2, 2, 1)) == (2, 0, 0)

    def test_outside_root_lattice(self, a2):
        with pytest.raises(RootDomainError):
            a2.to_base_coords((1, 0, 0))

    def test_coroot_pairing(self, a2, c3):
        assert a2.coroot_pair((1, -1, 0), (1, -1, 0)) == 2
        assert a2.coroot_pair((0, 1, -1), (1, -1, 0)) == -1
        assert c3.coroot_pair((0, 1, -1), (0, 0, 2)) == -1
        assert c3.coroot_pair((0, 0, 2), (0, 1, -1)) == -2

    def test_coroot_pairing_errors(self, a2):
        with pytest.raises(RootDomainError):
            a2.coroot_pair((1, -1, 0), (0, 0, 0))
        with pytest.raises(RootDomainError):
            a2.coroot_pair((1, -1, 0), (2, -2, 0))

    def test_reflection_permutes_roots(self, c3):
        for alpha in c3.base:
            assert sorted(c3.reflect(beta, alpha) for beta in c3.roots) == list(c3.roots)

    def test_unsupported_type(self):
        with pytest.raises(RootDomainError):
            RootDatum('B', 2)
        with pytest.raises(RootDomainError):
            RootDatum('A', 0)


class TestShiftHom:

    def test_parse_and_apply(self, a2):
        s = ShiftHom.parse("1,0;0,1", a2)
        assert s.n == 2
        assert s.apply((1, 0, -1)) == (1, 1)
        assert s.apply((0, -1, 1)) == (0, -1)

    def test_epsilon_offsets_type_a(self, a2):
        """s(e_1) = 0 and s(e_i - e_(i+1)) = s(alpha_i)."""
        s = ShiftHom.parse("1,0;0,1", a2)
        assert s.epsilon_offsets() == [(0, 0), (-1, 0), (-1, -1)]

    def test_epsilon_offsets_type_c(self, c3):
        s = ShiftHom.parse("1,0;0,1;0,0", c3)
        assert s.epsilon_offsets() == [(1, 1), (0, 1), (0, 0)]

    def test_wrong_image_count(self, a2):
        with pytest.raises(RootDomainError):
            ShiftHom.parse("1,0", a2)

    def test_inconsistent_lengths(self, a2):
        with pytest.raises(RootDomainError):
            ShiftHom(a2, ((1, 0), (1,)))

    def test_group_operations(self, a2):
        s = ShiftHom.parse("1,0;0,1", a2)
        assert (s + (-s)).is_zero()
        assert ShiftHom.from_json(s.to_json(), a2) == s

    @settings(max_examples=50, deadline=None)
    @given(small_vecs, small_vecs, st.integers(-3, 3), st.integers(-3, 3))
    def test_additive(self, x, y, a, b):
        datum = RootDatum('A', 2)
        s = ShiftHom(datum, (x, y))
        beta = datum.from_base_coords((a, b))
        assert s.apply(beta) == tuple(a * p + b * q for p, q in zip(x, y))


class TestSublattice:

    def test_index_and_invariants(self):
        gamma = Sublattice([(2, 0), (0, 2)], 2)
        assert gamma.index() == 4
        assert gamma.invariants() == [2, 2]
        assert gamma.contains((4, -2))
        assert not gamma.contains((1, 0))

    def test_hermite_form_is_canonical(self):
        a = Sublattice([(2, 1), (0, 3)], 2)
        b = Sublattice([(2, 4), (0, 3), (4, 2)], 2)
        assert a.basis == b.basis

    def test_hermite_basis_examples(self):
        assert Sublattice([(2, 0), (0, 2), (2, 2)], 2).basis == [(2, 0), (0, 2)]
        skew = Sublattice([(4, 2), (2, 4)], 2)
        assert skew.basis == [(2, 4), (0, 6)]
        assert skew.index() == 12
        assert skew.reduce((3, 11)) == (1, 1)

    def test_hermite_basis_of_lower_rank(self):
        flat = Sublattice([(2, 2, 0), (0, 0, 0), (-4, -4, 0)], 3)
        assert flat.basis == [(2, 2, 0)]
        assert flat.contains((6, 6, 0))
        assert not flat.contains((1, 1, 0))

    def test_reduce_is_coset_invariant(self):
        gamma = Sublattice([(2, 1), (0, 3)], 2)
        assert gamma.reduce((5, 7)) == gamma.reduce((5, 7 + 3))
        assert gamma.reduce((5, 7)) == gamma.reduce((3, 6))

    def test_coordinates(self):
        gamma = Sublattice([(2, 0), (0, 2)], 2)
        assert gamma.coordinates((4, -2)) == [2, -1]
        with pytest.raises(RootDomainError):
            gamma.coordinates((1, 0))

    def test_lower_rank(self):
        gamma = Sublattice([(1, 1)], 2)
        assert gamma.index() is None
        assert gamma.invariants() == [0]
        with pytest.raises(RootDomainError):
            gamma.coset_representatives()

    def test_coset_representatives(self):
        gamma = Sublattice([(2, 0), (0, 3)], 2)
        reps = gamma.coset_representatives()
        assert len(reps) == 6
        assert len({gamma.reduce(r) for r in reps}) == 6

    def test_coset_sum(self):
        """The four cosets of 2Z^2 sum to zero; dropping one leaves its negative."""
        gamma = Sublattice([(2, 0), (0, 2)], 2)
        everything = CosetSet.from_vectors(gamma, [(0, 0), (1, 0), (0, 1), (1, 1)])
        assert coset_sum(everything) == (0, 0)
        three = CosetSet.from_vectors(gamma, [(0, 0), (0, 1), (3, 3)])
        assert len(three) == 3
        assert coset_sum(three) == (1, 0)

    @settings(max_examples=50, deadline=None)
    @given(small_vecs, small_vecs)
    def test_reduce_respects_addition(self, u, v):
        gamma = Sublattice([(3, 1), (0, 2)], 2)
        lhs = gamma.reduce(vec_add(gamma.reduce(u), gamma.reduce(v)))
        assert lhs == gamma.reduce(vec_add(u, v))


class TestHelpers:

    def test_parse_vec(self):
        assert parse_vec(" 1,-2,0 ") == (1, -2, 0)
        assert parse_vec("") == ()

    def test_window_points(self):
        points = window_points(2, 1)
        assert len(points) == 9
        assert points[0] == (-1, -1)
        assert (0, 0) in points
