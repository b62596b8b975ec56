# File: tests/test_deform.py
"""Tests for the word-tuple operads O, D∞, Q and sΛPerm."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from operad_forge.core.errors import ArgumentError, ContextError, ResourceLimitError
from operad_forge.services.deform import (
    D_INF,
    O,
    PERM,
    Q,
    SPERM,
    LambdaProfile,
    WordTuple,
    apply_letter,
    basis_D,
    basis_sperm,
    deformation_schroeder,
    differential_D,
    differential_square_defects,
    differential_word,
    dim_D,
    dim_delta,
    dim_formula,
    generated_by_degree_one,
    homology_D,
    profile_dims,
    profiles,
    sperm_image,
    sperm_isomorphism_defects,
    word_element,
)
from operad_forge.services.exact import Permutation
from operad_forge.services.operad import (
    basis_element,
    compose_partial,
    equivariance_defect,
    leibniz_defect,
    parallel_defect,
    sequential_defect,
    symmetric_action,
)
from operad_forge.services.trees import schroeder


def d_keys(n: int):
    return st.sampled_from(basis_D(n)).map(lambda key: basis_element(D_INF, key))


class TestWordTuple:
    """Slots of derivation words."""

    def test_text_degree_and_weight(self):
        key = WordTuple(((1, 1), (), ()))
        assert key.text() == "d1.d1|1|1"
        assert key.degree == 2
        assert key.weight == 0
        assert key.arity == 3

    def test_needs_a_slot(self):
        with pytest.raises(ArgumentError):
            WordTuple(())

    def test_rejects_negative_letters(self):
        with pytest.raises(ArgumentError):
            WordTuple(((-1,),))

    def test_empty(self):
        assert WordTuple.empty(3).text() == "1|1|1"


class TestDerivations:
    """Letters act by the graded Leibniz rule."""

    def test_apply_letter_on_empty_slots(self):
        assert apply_letter(1, ((), ())) == {((1,), ()): 1, ((), (1,)): 1}

    def test_apply_letter_passes_an_odd_word(self):
        assert apply_letter(1, ((2,), ())) == {((1, 2), ()): 1, ((2,), (1,)): -1}

    def test_differential_of_a_letter(self):
        assert differential_word((3,)) == {(1, 2): -1, (2, 1): -1}
        assert differential_word((1,)) == {}

    def test_differential_passes_odd_letters(self):
        assert differential_word((2, 2)) == {(1, 1, 2): -1, (2, 1, 1): 1}


class TestDeformationOperad:
    """D∞: bases, composition and ∂."""

    def test_basis_in_arity_two(self):
        assert [k.text() for k in basis_D(2)] == ["1|d1", "d1|1"]

    def test_basis_in_arity_one(self):
        assert basis_D(1) == [WordTuple(((),))]
        assert basis_D(1, 1) == []

    @pytest.mark.parametrize("a,dim", [(1, 4), (2, 20), (3, 20)])
    def test_dimensions_in_arity_four(self, a, dim):
        assert len(basis_D(4, a)) == dim == dim_formula(4, a)

    def test_total_dimensions(self):
        assert len(basis_D(4)) == dim_D(4) == 44
        assert [dim_formula(5, a) for a in range(1, 5)] == [5, 45, 105, 70]
        assert dim_D(5) == 225

    def test_dim_formula_domain(self):
        with pytest.raises(ArgumentError):
            dim_formula(4, 4)
        with pytest.raises(ArgumentError):
            dim_formula(1, 1)

    def test_schroeder_from_dimensions(self):
        assert [deformation_schroeder(n) for n in range(1, 11)] == [
            schroeder(n) for n in range(1, 11)
        ]

    def test_weight_must_be_zero(self):
        with pytest.raises(ContextError):
            word_element(D_INF, (2,), ())
        with pytest.raises(ContextError):
            word_element(D_INF, (0,))

    def test_o_has_no_finite_basis(self):
        with pytest.raises(ContextError):
            O.basis(2)

    def test_composition(self):
        x = word_element(D_INF, (1,), ())
        assert compose_partial(D_INF, x, 1, x).text() == "-1 · d1|d1|1 + 1 · d1.d1|1|1"
        assert compose_partial(D_INF, x, 2, x).text() == "1 · d1|d1|1"

    def test_differential_of_a_generator(self):
        x = word_element(D_INF, (2,), (), ())
        assert differential_D(x).text() == "-1 · d1.d1|1|1"

    def test_differential_of_a_generator_matches_compositions(self):
        # ∂d2 = −(d1 ∘1 d1 + d1 ∘2 d1)
        d1 = word_element(D_INF, (1,), ())
        expected = -(compose_partial(D_INF, d1, 1, d1) + compose_partial(D_INF, d1, 2, d1))
        assert differential_D(word_element(D_INF, (2,), (), ())) == expected

    def test_differential_needs_d_infinity(self):
        with pytest.raises(ContextError):
            differential_D(word_element(Q, (0,), ()))

    @pytest.mark.parametrize("n", range(2, 7))
    def test_differential_squares_to_zero(self, n):
        assert differential_square_defects(n) == []

    @settings(max_examples=30, deadline=None)
    @given(d_keys(3), d_keys(2), d_keys(2), st.integers(1, 3), st.integers(1, 2))
    def test_sequential_axiom(self, p, q, r, i, j):
        assert sequential_defect(D_INF, p, i, q, j, r) == 0

    @settings(max_examples=30, deadline=None)
    @given(d_keys(3), d_keys(2), d_keys(3))
    def test_parallel_axiom(self, p, q, r):
        assert parallel_defect(D_INF, p, 1, q, 2, r) == 0
        assert parallel_defect(D_INF, p, 2, q, 3, r) == 0

    @settings(max_examples=30, deadline=None)
    @given(
        st.permutations([1, 2, 3]).map(lambda images: Permutation(tuple(images))),
        d_keys(3),
        d_keys(2),
        st.integers(1, 3),
    )
    def test_equivariance_axiom(self, sigma, p, q, i):
        assert equivariance_defect(D_INF, sigma, p, i, q) == 0

    @settings(max_examples=30, deadline=None)
    @given(d_keys(3), d_keys(3), st.integers(1, 3))
    def test_differential_is_a_derivation(self, p, q, i):
        assert leibniz_defect(D_INF, p, i, q) == 0


class TestProfiles:
    """Letter profiles and the dimensions of the Δ-pieces."""

    def test_profiles_in_arity_four(self):
        assert [p.text(4) for p in profiles(4)] == ["(0,0,1)", "(1,1,0)", "(3,0,0)"]
        assert [p.text(4) for p in profiles(4, 2)] == ["(1,1,0)"]

    def test_trailing_zeros_are_dropped(self):
        assert LambdaProfile((1, 0, 0)).multiplicities == (1,)

    def test_negative_multiplicity(self):
        with pytest.raises(ArgumentError):
            LambdaProfile((1, -1))

    def test_profile_of_a_key(self):
        assert LambdaProfile.of_key(WordTuple(((1, 1), (), ()))) == LambdaProfile((2,))

    @pytest.mark.parametrize("multiplicities,dim", [((0, 0, 1), 4), ((1, 1), 20), ((3,), 20)])
    def test_dim_delta(self, multiplicities, dim):
        assert dim_delta(LambdaProfile(multiplicities), 4) == dim

    def test_dim_delta_checks_the_letter_sum(self):
        with pytest.raises(ArgumentError):
            dim_delta(LambdaProfile((1,)), 4)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_enumerated_profiles_match_the_formula(self, n):
        counts = profile_dims(n)
        for profile in profiles(n):
            assert counts.get(profile, 0) == dim_delta(profile, n)


class TestHomology:
    """H(D∞(n), ∂) is concentrated in top degree, of dimension n."""

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_homology(self, n):
        assert homology_D(n) == tuple([0] * (n - 2) + [n])

    def test_arity_bound(self):
        with pytest.raises(ResourceLimitError):
            homology_D(6)

    def test_cell_cap(self, small_cell_cap):
        with pytest.raises(ResourceLimitError):
            homology_D(4)

    def test_needs_arity_two(self):
        with pytest.raises(ArgumentError):
            homology_D(1)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_generated_by_degree_one(self, n):
        achieved, dim = generated_by_degree_one(n)
        assert achieved == dim == dim_D(n)


class TestQ:
    """Q: the odd letter d0 with d0d0 = 0."""

    def test_basis(self):
        assert [k.text() for k in Q.basis(2)] == ["1|1", "1|d0", "d0|1", "d0|d0"]
        assert len(Q.basis(3, degree=1)) == 3

    def test_composition_signs(self):
        x = word_element(Q, (0,), ())
        assert compose_partial(Q, x, 1, x).text() == "-1 · d0|d0|1"
        assert compose_partial(Q, x, 2, x).text() == "1 · d0|d0|1"

    def test_d0_squares_to_zero(self):
        d0 = word_element(Q, (0,))
        assert compose_partial(Q, d0, 1, d0) == 0

    def test_d0_is_a_derivation(self):
        d0 = word_element(Q, (0,))
        product = word_element(Q, (), ())
        result = compose_partial(Q, d0, 1, product)
        assert result == word_element(Q, (0,), ()) + word_element(Q, (), (0,))

    def test_action_swaps_odd_letters_with_a_sign(self):
        x = word_element(Q, (0,), (0,))
        assert symmetric_action(Q, Permutation((2, 1)), x) == -x

    def test_only_d0(self):
        with pytest.raises(ContextError):
            word_element(Q, (1,), ())


class TestSPerm:
    """The top-degree part of Q and its identification with ΛPerm."""

    def test_basis(self):
        assert [k.text() for k in basis_sperm(3)] == ["d0|d0|1", "d0|1|d0", "1|d0|d0"]

    def test_dimension(self):
        assert SPERM.dim(7) == 7
        assert SPERM.basis(3, degree=1) == []

    def test_perm_composition(self):
        assert PERM.compose_keys((2, 1), 2, (2, 2)) == {(3, 1): 1}
        assert PERM.compose_keys((2, 2), 2, (2, 1)) == {(3, 2): 1}

    def test_image_of_a_generator(self):
        assert sperm_image((2, 1)).text() == "1 · 1|d0"

    def test_isomorphism(self):
        assert sperm_isomorphism_defects(4) == []
