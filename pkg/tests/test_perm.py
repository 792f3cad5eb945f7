import itertools

import pytest

from cyclineq import (
    BadDimension,
    IndexOutOfRange,
    NotABijection,
    backward_displacement,
    cycle_decomposition,
    forward_displacement,
    identity_permutation,
    make_permutation,
    max_backward_displacement,
    max_forward_displacement,
    shift_permutation,
    wrap_index,
)


def all_perms(n):
    return [make_permutation(n, p) for p in itertools.permutations(range(1, n + 1))]


class TestMakePermutation:
    def test_identity(self):
        sigma = make_permutation(4, [1, 2, 3, 4])
        assert sigma.is_identity
        assert sigma.to_json() == [1, 2, 3, 4]

    def test_cyclic_shift(self):
        sigma = make_permutation(4, [2, 3, 4, 1])
        assert sigma == shift_permutation(4, 1)

    def test_repeated_value_rejected(self):
        with pytest.raises(NotABijection):
            make_permutation(3, [1, 1, 2])

    def test_out_of_range_value_rejected(self):
        with pytest.raises(NotABijection):
            make_permutation(3, [1, 2, 4])

    def test_wrong_length_rejected(self):
        with pytest.raises(NotABijection):
            make_permutation(4, [1, 2, 3])

    def test_small_n_rejected(self):
        with pytest.raises(BadDimension):
            make_permutation(1, [1])


class TestShiftPermutation:
    def test_zero_shift_is_identity(self):
        assert shift_permutation(5, 0).is_identity

    def test_unit_shift(self):
        assert shift_permutation(5, 1).to_json() == [2, 3, 4, 5, 1]

    def test_shift_reduces_mod_n(self):
        assert shift_permutation(4, 6) == shift_permutation(4, 2)
        assert shift_permutation(4, 6).to_json() == [3, 4, 1, 2]

    def test_negative_shift(self):
        assert shift_permutation(4, -1) == shift_permutation(4, 3)


class TestCycleDecomposition:
    def test_identity_has_only_fixed_points(self):
        dec = cycle_decomposition(identity_permutation(4))
        assert dec.fixed_points == frozenset({1, 2, 3, 4})
        assert dec.cycles == ()

    def test_full_cycle(self):
        dec = cycle_decomposition(shift_permutation(4, 1))
        assert dec.fixed_points == frozenset()
        assert dec.cycles == ((1, 2, 3, 4),)

    def test_mixed(self):
        dec = cycle_decomposition(make_permutation(5, [2, 1, 3, 5, 4]))
        assert dec.fixed_points == frozenset({3})
        assert dec.cycles == ((1, 2), (4, 5))

    def test_orbit_closure_exhaustive_s4(self):
        # independent oracle: every cycle element maps to the next, the
        # parts partition 1..n, and recomposition returns sigma
        for sigma in all_perms(4):
            dec = cycle_decomposition(sigma)
            seen = set(dec.fixed_points)
            for i in dec.fixed_points:
                assert sigma.apply(i) == i
            for cyc in dec.cycles:
                assert len(cyc) >= 2
                for t, el in enumerate(cyc):
                    assert sigma.apply(el) == cyc[(t + 1) % len(cyc)]
                assert not seen & set(cyc)
                seen |= set(cyc)
            assert seen == set(range(1, 5))
            assert dec.to_permutation() == sigma


class TestDisplacements:
    def test_identity_zero(self):
        sigma = identity_permutation(6)
        assert all(forward_displacement(sigma, i) == 0 for i in range(1, 7))
        assert all(backward_displacement(sigma, i) == 0 for i in range(1, 7))

    def test_wraparound(self):
        sigma = shift_permutation(5, 1)
        assert forward_displacement(sigma, 5) == 1
        assert backward_displacement(sigma, 1) == 4

    def test_transposition(self):
        sigma = make_permutation(3, [2, 1, 3])
        assert forward_displacement(sigma, 2) == 2
        assert backward_displacement(sigma, 1) == 2

    def test_index_validation(self):
        with pytest.raises(IndexOutOfRange):
            forward_displacement(identity_permutation(3), 4)
        with pytest.raises(IndexOutOfRange):
            backward_displacement(identity_permutation(3), 0)

    def test_maxima(self):
        assert max_forward_displacement(identity_permutation(5)) == 0
        assert max_backward_displacement(identity_permutation(5)) == 0
        sigma = make_permutation(4, [2, 1, 3, 4])
        assert max_forward_displacement(sigma) == 3
        assert max_backward_displacement(sigma) == 3

    def test_shift_maxima(self):
        for n in (4, 5, 7):
            for s in range(n):
                sigma = shift_permutation(n, s)
                assert max_forward_displacement(sigma) == s % n
                assert max_backward_displacement(sigma) == (n - s) % n


class TestInvariants:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_displacements_complementary(self, n):
        for sigma in all_perms(n):
            for i in range(1, n + 1):
                total = forward_displacement(sigma, i) + backward_displacement(sigma, i)
                assert total == (0 if sigma.apply(i) == i else n)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_total_forward_displacement_divisible_by_n(self, n):
        for sigma in all_perms(n):
            assert sum(forward_displacement(sigma, i) for i in range(1, n + 1)) % n == 0

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_zero_max_displacement_iff_identity(self, n):
        for sigma in all_perms(n):
            fwd = max_forward_displacement(sigma) == 0
            bwd = max_backward_displacement(sigma) == 0
            assert fwd == bwd == sigma.is_identity


def test_wrap_index():
    assert [wrap_index(4, i) for i in (0, 1, 4, 5, -1, 8)] == [4, 1, 4, 1, 3, 4]


def test_inverse():
    sigma = make_permutation(4, [3, 1, 4, 2])
    inv = sigma.inverse()
    assert all(inv.apply(sigma.apply(i)) == i for i in range(1, 5))


def test_involutions():
    assert identity_permutation(3).is_involution()
    assert make_permutation(4, [2, 1, 4, 3]).is_involution()
    assert not shift_permutation(4, 1).is_involution()
