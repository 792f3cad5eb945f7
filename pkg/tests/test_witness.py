import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from cyclineq import (
    CyclicBlock,
    DecompositionCertificate,
    IrrationalExponent,
    NotAdmissible,
    RationalExponent,
    RatioVector,
    as_rational,
    block_alphabet_counts,
    build_certificate,
    certificate_sides,
    check_certificate,
    cyclic_blocks,
    holds,
    identity_permutation,
    is_cyclically_constructed,
    make_permutation,
    ratio_rewrite,
    shift_permutation,
)


def all_perms(n):
    return [make_permutation(n, p) for p in itertools.permutations(range(1, n + 1))]


class TestRationalExponent:
    def test_parse(self):
        assert RationalExponent.parse("3/2") == RationalExponent(3, 2)
        assert RationalExponent.parse("-4") == RationalExponent(-4, 1)

    def test_normalization(self):
        assert RationalExponent(2, 4) == RationalExponent(1, 2)
        assert RationalExponent(3, -2) == RationalExponent(-3, 2)
        assert float(RationalExponent(-5, 2)) == -2.5

    def test_parse_garbage(self):
        with pytest.raises(IrrationalExponent):
            RationalExponent.parse("0.5")

    def test_as_rational(self):
        assert as_rational(Fraction(6, 4)) == RationalExponent(3, 2)
        assert as_rational(2) == RationalExponent(2, 1)
        with pytest.raises(IrrationalExponent):
            as_rational(0.5)


class TestRatioVector:
    def test_from_x(self):
        rv = RatioVector.from_x([2.0, 1.0, 4.0])
        assert rv.a == (2.0, 0.25, 2.0)
        assert rv.b == (0.5, 4.0, 0.5)

    def test_product_is_one(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            x = rng.uniform(0.1, 10.0, rng.integers(2, 8))
            assert abs(RatioVector.from_x(x).product() - 1) < 1e-12

    def test_exact_product_from_fractions(self):
        x = [Fraction(3, 7), Fraction(11, 2), Fraction(5, 13)]
        assert RatioVector.from_x(x).product() == 1


class TestRatioRewrite:
    def test_identity_gives_empty_intervals(self):
        assert ratio_rewrite(identity_permutation(4)) == [[], [], [], []]

    def test_unit_shift_gives_singletons(self):
        assert ratio_rewrite(shift_permutation(4, 1)) == [[1], [2], [3], [4]]

    def test_three_cycle(self):
        assert ratio_rewrite(make_permutation(3, [3, 1, 2])) == [[1, 2], [2, 3], [3, 1]]

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_telescoping_oracle(self, n):
        # products of ratio variables over each interval reproduce x_i/x_sigma(i)
        rng = np.random.default_rng(n)
        for sigma in all_perms(n):
            x = rng.uniform(0.3, 3.0, n)
            a = RatioVector.from_x(x).a
            for i, interval in enumerate(ratio_rewrite(sigma), start=1):
                prod = math.prod(a[j - 1] for j in interval)
                direct = x[i - 1] / x[sigma.apply(i) - 1]
                assert abs(prod - direct) <= 1e-12 * direct


class TestCyclicBlocks:
    def test_identity(self):
        assert cyclic_blocks(identity_permutation(4)) == (4, [])

    def test_single_full_cycle(self):
        whole, blocks = cyclic_blocks(shift_permutation(4, 1))
        assert whole == 0
        assert len(blocks) == 1
        assert blocks[0].fractions == ((1, 2), (2, 3), (3, 4), (4, 1))

    def test_mixed(self):
        whole, blocks = cyclic_blocks(make_permutation(5, [2, 1, 3, 5, 4]))
        assert whole == 1
        assert [b.fractions for b in blocks] == [((1, 2), (2, 1)), ((4, 5), (5, 4))]

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_blocks_are_cyclically_constructed(self, n):
        for sigma in all_perms(n):
            whole, blocks = cyclic_blocks(sigma)
            covered = set()
            for block in blocks:
                assert is_cyclically_constructed(block.fractions) is not None
                covered |= {num for num, _ in block.fractions}
            assert len(covered) + whole == n


class TestIsCyclicallyConstructed:
    def test_already_sorted(self):
        assert is_cyclically_constructed([(1, 2), (2, 1)]) == (1, 2)

    def test_swap_needed(self):
        assert is_cyclically_constructed([(2, 1), (1, 2)]) == (2, 1)

    def test_broken_chain(self):
        assert is_cyclically_constructed([(1, 2), (3, 1)]) is None

    def test_disconnected_chains(self):
        assert is_cyclically_constructed([(1, 2), (2, 1), (3, 4), (4, 3)]) is None

    def test_repeated_fractions(self):
        got = is_cyclically_constructed([(1, 2), (2, 1), (1, 2), (2, 1)])
        assert got is not None

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            is_cyclically_constructed([])

    def test_agrees_with_exhaustive_ordering_search(self):
        def brute(fractions):
            m = len(fractions)
            for order in itertools.permutations(range(m)):
                if all(fractions[order[t]][1] == fractions[order[(t + 1) % m]][0]
                       for t in range(m)):
                    return True
            return False

        rng = np.random.default_rng(9)
        for _ in range(200):
            m = int(rng.integers(1, 5))
            fracs = [(int(rng.integers(1, 4)), int(rng.integers(1, 4)))
                     for _ in range(m)]
            got = is_cyclically_constructed(fracs)
            assert (got is not None) == brute(fracs)
            if got is not None:
                assert all(
                    fracs[got[t] - 1][1] == fracs[got[(t + 1) % m] - 1][0]
                    for t in range(m)
                )


class TestCyclicBlockValidation:
    def test_broken_chain_rejected(self):
        with pytest.raises(ValueError):
            CyclicBlock(((1, 2), (2, 3), (3, 1)), (1, 3, 2))

    def test_sorting_must_be_a_position_permutation(self):
        with pytest.raises(ValueError):
            CyclicBlock(((1, 2), (2, 1)), (1, 1))

    def test_good_block(self):
        block = CyclicBlock(((2, 1), (1, 2)), (2, 1))
        assert block.sorting == (2, 1)


class TestBuildCertificate:
    def test_identity_uniform_counts(self):
        cert = build_certificate(identity_permutation(3), RationalExponent(2))
        assert cert.summands == ((2, 2, 2),) * 3
        assert len(cert.rounds) == 6
        assert check_certificate(cert, identity_permutation(3))

    def test_unit_shift_pure_copies(self):
        sigma = shift_permutation(3, 1)
        cert = build_certificate(sigma, RationalExponent(1))
        assert cert.summands == ((3, 0, 0), (0, 3, 0), (0, 0, 3))
        assert cert.rounds == ((1, 2, 3),) * 3

    def test_two_cycle(self):
        sigma = make_permutation(2, [2, 1])
        cert = build_certificate(sigma, RationalExponent(1))
        assert all(sum(row[j] for row in cert.summands) == 2 for j in range(2))
        assert check_certificate(cert, sigma)

    def test_zero_exponent_degenerate(self):
        cert = build_certificate(identity_permutation(4), RationalExponent(0))
        assert cert.rounds == ()
        assert cert.summands == ((0, 0, 0, 0),) * 4
        assert check_certificate(cert, identity_permutation(4))

    def test_negative_exponent_uses_inverse_alphabet(self):
        sigma = make_permutation(2, [2, 1])
        cert = build_certificate(sigma, RationalExponent(-1))
        assert cert.alphabet == "b"
        assert cert.exponent == RationalExponent(-1)
        assert check_certificate(cert, sigma)

    def test_inadmissible_rejected(self):
        with pytest.raises(NotAdmissible):
            build_certificate(shift_permutation(4, 2), RationalExponent(1))

    def test_float_rejected(self):
        with pytest.raises(IrrationalExponent):
            build_certificate(identity_permutation(3), 0.5)

    def test_column_sums_and_row_sums(self):
        sigma = make_permutation(5, [3, 1, 2, 5, 4])
        k = RationalExponent(9, 2)
        assert holds(sigma, float(k))
        cert = build_certificate(sigma, k)
        un = cert.u * cert.n
        assert all(sum(row) == un for row in cert.summands)
        assert all(sum(row[j] for row in cert.summands) == un for j in range(5))


def test_hand_built_certificate_for_double_shift():
    # counts are forced by the rewrite; the rounds split them into four
    # copies each of the two obvious systems of distinct representatives
    sigma = shift_permutation(4, 2)
    summands = ((4, 4, 0, 0), (0, 4, 4, 0), (0, 0, 4, 4), (4, 0, 0, 4))
    rounds = ((1, 2, 3, 4),) * 4 + ((2, 3, 4, 1),) * 4
    cert = DecompositionCertificate(4, 2, 1, "a", summands, rounds)
    assert check_certificate(cert, sigma)


class TestCheckCertificateDiagnoses:
    def setup_method(self):
        self.sigma = make_permutation(3, [2, 3, 1])
        self.cert = build_certificate(self.sigma, RationalExponent(2))
        assert check_certificate(self.cert, self.sigma)

    def _with(self, **kwargs):
        fields = dict(n=self.cert.n, u=self.cert.u, v=self.cert.v,
                      alphabet=self.cert.alphabet, summands=self.cert.summands,
                      rounds=self.cert.rounds)
        fields.update(kwargs)
        return DecompositionCertificate(**fields)

    def test_perturbed_count_is_bad_column_sum(self):
        rows = [list(r) for r in self.cert.summands]
        rows[0][0] += 1
        result = check_certificate(self._with(summands=rows), self.sigma)
        assert not result and result.diagnosis == "BadColumnSum"

    def test_swapped_summands_are_bad_exponent_identity(self):
        rows = list(self.cert.summands)
        rows[0], rows[1] = rows[1], rows[0]
        result = check_certificate(self._with(summands=rows), self.sigma)
        assert not result and result.diagnosis == "BadExponentIdentity"

    def test_tampered_round_is_bad_rounds(self):
        rounds = [list(r) for r in self.cert.rounds]
        rounds[0][0], rounds[0][1] = rounds[0][1], rounds[0][0]
        result = check_certificate(self._with(rounds=rounds), self.sigma)
        assert not result and result.diagnosis == "BadRounds"

    def test_missing_round_is_bad_rounds(self):
        result = check_certificate(self._with(rounds=self.cert.rounds[1:]), self.sigma)
        assert not result and result.diagnosis == "BadRounds"

    def test_wrong_sigma_fails(self):
        assert not check_certificate(self.cert, make_permutation(3, [3, 1, 2]))


class TestCertificateNumerics:
    @pytest.mark.parametrize("sigma,k", [
        (shift_permutation(3, 1), RationalExponent(1)),
        (make_permutation(4, [2, 1, 4, 3]), RationalExponent(3)),
        (make_permutation(4, [2, 1, 4, 3]), RationalExponent(-3)),
        (make_permutation(5, [5, 1, 2, 3, 4]), RationalExponent(-3, 2)),
        (identity_permutation(3), RationalExponent(7, 3)),
    ])
    def test_sides_match_direct_sums(self, sigma, k):
        cert = build_certificate(sigma, k)
        rng = np.random.default_rng(17)
        for _ in range(5):
            x = rng.uniform(0.4, 2.5, sigma.n)
            lhs, rhs = certificate_sides(cert, x)
            direct_lhs = sum((x[i] / x[(i + 1) % sigma.n]) ** float(k)
                             for i in range(sigma.n))
            direct_rhs = sum(x[i] / x[sigma.apply(i + 1) - 1] for i in range(sigma.n))
            assert abs(lhs - direct_lhs) <= 1e-10 * direct_lhs
            assert abs(rhs - direct_rhs) <= 1e-10 * direct_rhs
            assert lhs - rhs >= -1e-12


class TestBlockAlphabetCounts:
    def test_transposition_block_spans_circle(self):
        _, blocks = cyclic_blocks(make_permutation(5, [2, 1, 3, 4, 5]))
        assert block_alphabet_counts(blocks[0], 5) == [1, 1, 1, 1, 1]

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_equal_multiplicity_exhaustive(self, n):
        for sigma in all_perms(n):
            for block in cyclic_blocks(sigma)[1]:
                counts = block_alphabet_counts(block, n)
                assert len(set(counts)) == 1


class TestJsonRoundTrip:
    def test_round_trip(self):
        cert = build_certificate(make_permutation(4, [2, 1, 4, 3]), RationalExponent(7, 2))
        again = DecompositionCertificate.from_json_dict(cert.to_json_dict())
        assert again == cert

    def test_malformed_document(self):
        with pytest.raises(ValueError):
            DecompositionCertificate.from_json_dict({"n": 3})
