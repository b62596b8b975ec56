# File: tests/test_exact.py
"""Tests for scalars, permutations, Koszul signs and exact linear algebra."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Rational
from sympy.polys.domains import QQ, ZZ

from operad_forge.core.errors import ArgumentError, ParseError, ResourceLimitError
from operad_forge.services.exact import (
    Permutation,
    SparseMatrix,
    all_permutations,
    as_scalar,
    block_permutation,
    format_scalar,
    kernel_basis,
    koszul_sign,
    matrix_from_images,
    permute_sequence,
    rank,
    rank_fraction_free,
    rank_mod_p,
    rank_rational,
    row_basis,
    sign_power,
    to_domain_matrix,
    unshuffles,
)


def permutations_of(n: int):
    return st.permutations(list(range(1, n + 1))).map(lambda images: Permutation(tuple(images)))


class TestScalars:
    """Exact rational coefficients."""

    def test_as_scalar_accepts_int_fraction_and_text(self):
        assert as_scalar(3) == Fraction(3)
        assert as_scalar(Fraction(1, 2)) == Fraction(1, 2)
        assert as_scalar(" -2/4 ") == Fraction(-1, 2)

    def test_as_scalar_rejects_bool(self):
        with pytest.raises(ArgumentError):
            as_scalar(True)

    def test_as_scalar_rejects_floats(self):
        with pytest.raises(ArgumentError):
            as_scalar(0.5)

    def test_bad_rational_text_is_a_parse_error(self):
        with pytest.raises(ParseError):
            as_scalar("1/0")

    def test_format_scalar(self):
        assert format_scalar(Fraction(4, 2)) == "2"
        assert format_scalar(Fraction(-3, 6)) == "-1/2"

    def test_sign_power(self):
        assert sign_power(0) == 1
        assert sign_power(3) == -1
        assert sign_power(-2) == 1


class TestPermutation:
    """Permutations of 1..n stored by images."""

    def test_compose_is_right_to_left(self):
        left = Permutation((2, 1, 3))
        right = Permutation((1, 3, 2))
        assert left.compose(right) == Permutation((2, 3, 1))
        assert left * right == Permutation((2, 3, 1))

    def test_inverse(self):
        assert Permutation((2, 3, 1)).inverse() == Permutation((3, 1, 2))

    def test_sign(self):
        assert Permutation((2, 1, 3)).sign() == -1
        assert Permutation((2, 3, 1)).sign() == 1

    def test_identity_and_transposition(self):
        assert Permutation.identity(3).is_identity()
        assert Permutation.transposition(4, 1, 3) == Permutation((3, 2, 1, 4))

    def test_rejects_non_permutations(self):
        with pytest.raises(ArgumentError):
            Permutation((1, 1, 2))
        with pytest.raises(ArgumentError):
            Permutation((0, 1))

    def test_compose_needs_equal_sizes(self):
        with pytest.raises(ArgumentError):
            Permutation((1, 2)).compose(Permutation((1, 2, 3)))

    def test_all_permutations_is_lexicographic(self):
        perms = all_permutations(3)
        assert len(perms) == 6
        assert perms[0].is_identity()
        assert perms[-1] == Permutation((3, 2, 1))

    def test_str(self):
        assert str(Permutation((2, 3, 1))) == "(2,3,1)"

    @given(permutations_of(5), permutations_of(5))
    def test_sign_is_multiplicative(self, a, b):
        assert (a * b).sign() == a.sign() * b.sign()

    @given(permutations_of(6))
    def test_inverse_composes_to_identity(self, p):
        assert (p * p.inverse()).is_identity()
        assert (p.inverse() * p).is_identity()


class TestKoszulSign:
    """Signs of reordering graded factors."""

    def test_swap_of_two_odd_factors(self):
        assert koszul_sign(Permutation((2, 1)), [1, 1]) == -1

    def test_swap_past_an_even_factor(self):
        assert koszul_sign(Permutation((2, 1)), [1, 0]) == 1

    def test_all_odd_factors_give_the_permutation_sign(self):
        p = Permutation((3, 1, 2, 4))
        assert koszul_sign(p, [1, 1, 1, 1]) == p.sign()

    def test_length_mismatch(self):
        with pytest.raises(ArgumentError):
            koszul_sign(Permutation((2, 1)), [1])

    @settings(max_examples=50)
    @given(
        permutations_of(4),
        permutations_of(4),
        st.lists(st.integers(0, 2), min_size=4, max_size=4),
    )
    def test_sign_of_a_composite_reordering(self, a, b, degrees):
        # reorder by a, then reorder the result by b
        step = permute_sequence(a, degrees)
        assert koszul_sign(a * b, degrees) == koszul_sign(a, degrees) * koszul_sign(b, step)


class TestShufflesAndBlocks:
    """Unshuffles, block permutations and sequence permutation."""

    def test_unshuffles_count_and_order(self):
        result = unshuffles(2, 1)
        assert len(result) == 3
        assert result[0].is_identity()
        assert Permutation((2, 3, 1)) in result

    def test_unshuffles_with_an_empty_block(self):
        assert unshuffles(0, 3) == [Permutation.identity(3)]

    def test_unshuffles_reject_negative_sizes(self):
        with pytest.raises(ArgumentError):
            unshuffles(-1, 2)

    def test_block_permutation(self):
        assert block_permutation(Permutation((2, 1)), 1, 2) == Permutation((2, 3, 1))

    def test_block_permutation_of_identity_is_identity(self):
        assert block_permutation(Permutation.identity(3), 2, 3).is_identity()

    def test_block_permutation_slot_out_of_range(self):
        with pytest.raises(ArgumentError):
            block_permutation(Permutation((2, 1)), 3, 2)

    def test_permute_sequence(self):
        assert permute_sequence(Permutation((2, 3, 1)), "abc") == ("b", "c", "a")


class TestSparseMatrix:
    """Construction and the cell cap."""

    def test_zeros_are_not_stored(self):
        m = SparseMatrix.from_rows([[1, 0], [0, 0]])
        assert m.nnz == 1
        assert m.rows == 2 and m.cols == 2

    def test_entry_outside_shape(self):
        with pytest.raises(ArgumentError):
            SparseMatrix(2, 2, {(2, 0): 1})

    def test_dense_round_trip(self):
        m = SparseMatrix.from_rows([[1, 2], [3, 4]])
        assert m.to_dense() == [[1, 2], [3, 4]]
        assert m.transpose().to_dense() == [[1, 3], [2, 4]]

    def test_matrix_vector_product(self):
        m = SparseMatrix.from_rows([[1, 2], [0, 1]])
        assert m @ {0: Fraction(1), 1: Fraction(1)} == {0: 3, 1: 1}

    def test_cell_cap(self, small_cell_cap):
        with pytest.raises(ResourceLimitError) as excinfo:
            SparseMatrix.zero(11, 10)
        assert excinfo.value.exit_code == 3
        assert excinfo.value.details["max_cells"] == small_cell_cap

    def test_images_outside_target_basis(self):
        with pytest.raises(ArgumentError):
            matrix_from_images([{"x": 1}], {"y": 0})


class TestRank:
    """Exact rank and kernels over the rationals."""

    def test_kernel_basis(self):
        m = SparseMatrix.from_rows([[1, 1, 0], [0, 0, 1]])
        assert kernel_basis(m) == [{1: 1, 0: -1}]

    def test_rank_of_a_singular_matrix(self):
        m = SparseMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
        assert rank(m) == 2

    def test_rank_of_zero_and_empty(self):
        assert rank(SparseMatrix.zero(3, 3)) == 0
        assert rank(SparseMatrix.zero(0, 4)) == 0

    def test_rational_entries(self):
        m = SparseMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [3, 2]])
        assert rank(m) == 1

    def test_modular_rank_never_exceeds_rational_rank(self):
        # the determinant 2^31 − 1 vanishes modulo the prime
        m = SparseMatrix.from_rows([[2_147_483_647, 0], [0, 1]])
        assert rank_mod_p(m) == 1
        assert rank(m) == 2

    def test_row_basis_spans_the_rows(self):
        m = SparseMatrix.from_rows([[1, 1], [2, 2], [0, 1]])
        assert len(row_basis(m)) == 2

    def test_row_basis_is_reduced_with_unit_pivots(self):
        m = SparseMatrix.from_rows([[2, 4, 2], [1, 2, 3]])
        assert row_basis(m) == [{0: 1, 1: 2}, {2: 1}]

    def test_kernel_of_a_rational_matrix(self):
        m = SparseMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [3, 2]])
        assert kernel_basis(m) == [{1: 1, 0: Fraction(-2, 3)}]

    def test_small_prime_rank(self):
        m = SparseMatrix.from_rows([[1, 1], [1, 4]])
        assert rank_mod_p(m, 3) == 1
        assert rank_mod_p(m, 5) == 2
        assert rank(m) == 2

    @settings(max_examples=40)
    @given(
        st.lists(
            st.lists(st.integers(-3, 3), min_size=4, max_size=4),
            min_size=1,
            max_size=5,
        )
    )
    def test_rank_methods_agree(self, rows):
        m = SparseMatrix.from_rows(rows, cols=4)
        expected = rank_rational(m)
        assert rank_fraction_free(m) == expected
        assert rank(m) == expected
        assert len(kernel_basis(m)) == 4 - expected

    @settings(max_examples=40)
    @given(
        st.lists(
            st.lists(st.integers(-2, 2), min_size=3, max_size=3),
            min_size=1,
            max_size=4,
        )
    )
    def test_kernel_vectors_are_annihilated(self, rows):
        m = SparseMatrix.from_rows(rows, cols=3)
        for vector in kernel_basis(m):
            assert m @ vector == {}


class TestDomainMatrix:
    """Conversion to sympy's sparse DomainMatrix."""

    def test_rational_conversion_keeps_entries(self):
        m = SparseMatrix.from_rows([[Fraction(1, 2), 0], [0, 3]])
        dm = to_domain_matrix(m)
        assert dm.domain == QQ
        assert dm.shape == (2, 2)
        assert dm.to_Matrix().tolist() == [[Rational(1, 2), 0], [0, 3]]

    def test_integer_conversion_clears_row_denominators(self):
        m = SparseMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [0, 5]])
        dm = to_domain_matrix(m, ZZ)
        assert dm.domain == ZZ
        assert dm.to_Matrix().tolist() == [[3, 2], [0, 5]]

    def test_zero_rows_keep_the_shape(self):
        dm = to_domain_matrix(SparseMatrix.zero(3, 2), ZZ)
        assert dm.shape == (3, 2)
        assert dm.rank() == 0
