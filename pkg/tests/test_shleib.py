# File: tests/test_shleib.py
"""Tests for sΛLeib∞, the tree differential and the derived-bracket map θ."""

import pytest

from operad_forge.core.errors import ArgumentError, ContextError, ResourceLimitError
from operad_forge.services.deform import D_INF, word_element
from operad_forge.services.lie import Bracket, Leaf
from operad_forge.services.operad import (
    basis_element,
    compose_partial,
    differential,
    leibniz_defect,
)
from operad_forge.services.shleib import (
    LIE_D,
    SHLEIB,
    ass_infinity_differential,
    binary_leibniz_check,
    corolla,
    derived_bracket,
    deshuffle_coassociativity_defect,
    deshuffle_coproduct,
    generator_differential,
    hadamard_key_word,
    lie_d_dim,
    normal_bracket_check,
    normal_derived_bracket,
    push_letters,
    regular_part,
    sleib_dim,
    sleib_generated_dims,
    splitting_terms,
    theta,
    theta_generator,
    theta_weight_check,
    tree_diff,
    tree_product,
    verify_bracket_splitting,
    verify_chain_map,
    verify_iso,
    zinbiel_coproduct,
    zinbiel_identity_defect,
)
from operad_forge.utils.textform import parse_tree


class TestTreeDifferential:
    """d_t on generators and its extension as a derivation."""

    def test_splitting_terms(self):
        terms = list(splitting_terms(2, 2))
        assert len(terms) == 3
        assert sum(1 for t in terms if t.regular) == 2

    def test_splitting_terms_need_binary_or_higher(self):
        with pytest.raises(ArgumentError):
            list(splitting_terms(1, 2))

    def test_binary_generator_is_closed(self):
        assert tree_diff(corolla(2)) == 0
        assert generator_differential("T", 2) == {}

    def test_ternary_generator(self):
        assert tree_diff(corolla(3)).text() == (
            "-1 · T2(1,T2(2,3)) - 1 · T2(2,T2(1,3)) - 1 · T2(T2(1,2),3)"
        )

    def test_tree_product(self):
        assert tree_product(2, 2) == -tree_diff(corolla(3))

    @pytest.mark.parametrize("n", range(2, 7))
    def test_differential_squares_to_zero_on_generators(self, n):
        assert tree_diff(tree_diff(corolla(n))) == 0

    def test_differential_squares_to_zero_on_a_grafting(self):
        x = parse_tree("T3(T2(1,3),2,4)")
        assert tree_diff(tree_diff(x)) == 0

    @pytest.mark.slow
    def test_differential_squares_to_zero_on_every_arity_five_monomial(self):
        offenders = [
            key for key in SHLEIB.basis(5) if tree_diff(tree_diff(basis_element(SHLEIB, key)))
        ]
        assert offenders == []

    def test_differential_is_a_derivation(self):
        assert leibniz_defect(SHLEIB, corolla(3), 2, corolla(3)) == 0
        assert leibniz_defect(SHLEIB, corolla(2, [2, 1]), 1, corolla(4)) == 0

    def test_tree_diff_needs_shleib(self):
        with pytest.raises(ContextError):
            tree_diff(word_element(D_INF, (1,), ()))

    @pytest.mark.parametrize("n", range(3, 6))
    def test_regular_part(self, n):
        part = regular_part(n)
        assert part.passed
        assert part.regular == ass_infinity_differential(n)
        assert part.regular + part.irregular == tree_diff(corolla(n))

    def test_regular_part_in_arity_three(self):
        part = regular_part(3)
        assert part.regular.text() == "-1 · T2(1,T2(2,3)) - 1 · T2(T2(1,2),3)"
        assert part.irregular.text() == "-1 · T2(2,T2(1,3))"

    @pytest.mark.parametrize("n", range(2, 7))
    def test_ass_infinity_differential_counts_blocks(self, n):
        d = ass_infinity_differential(n)
        assert len(d.terms) == sum(range(2, n))
        assert all(c == -1 for c in d.terms.values())
        assert all(key.labels.is_identity() for key in d.terms)


class TestDimensions:
    """sΛLeib∞(n) and (Lie⊗D∞)(n) have the same graded dimensions."""

    @pytest.mark.parametrize("n,dim", [(2, 2), (3, 18), (4, 264), (5, 5400)])
    def test_equal_dimensions(self, n, dim):
        assert sleib_dim(n) == lie_d_dim(n) == dim

    @pytest.mark.parametrize("a", [1, 2, 3])
    def test_equal_dimensions_per_degree(self, a):
        assert sleib_dim(4, a) == lie_d_dim(4, a)

    def test_basis_matches_the_count(self):
        assert len(SHLEIB.basis(4)) == sleib_dim(4)
        assert len(LIE_D.basis(4)) == lie_d_dim(4)


class TestDerivedBrackets:
    """Reading derived brackets in Lie⊗D∞."""

    def test_theta_of_the_binary_generator(self):
        assert theta_generator(2).text() == "1 · {1,2}#d1|1"
        assert derived_bracket(Bracket(Leaf(1, (1,)), Leaf(2))) == theta(corolla(2))

    def test_theta_of_the_ternary_generator(self):
        assert theta(corolla(3)).text() == "1 · {1,{2,3}}#d2|1|1 - 1 · {2,{1,3}}#d2|1|1"

    def test_normal_derived_bracket(self):
        w = normal_derived_bracket([1, 2, 3])
        assert derived_bracket(w) == theta_generator(3)

    def test_push_letters(self):
        pushed = push_letters(Bracket(Leaf(1), Leaf(2)))
        assert pushed == {Bracket(Leaf(1), Leaf(2)): 1}

    def test_letters_outside_d_infinity(self):
        with pytest.raises(ContextError):
            derived_bracket(Bracket(Leaf(1, (2,)), Leaf(2)))

    def test_repeated_labels(self):
        with pytest.raises(ArgumentError):
            derived_bracket(Bracket(Leaf(1, (1,)), Leaf(1)))

    def test_hadamard_key_word(self):
        (key,) = theta_generator(2).terms
        assert hadamard_key_word(key) == Bracket(Leaf(1, (1,)), Leaf(2))

    def test_theta_needs_shleib(self):
        with pytest.raises(ContextError):
            theta(word_element(D_INF, (1,), ()))


class TestTheta:
    """θ is an isomorphism of dg operads in low arity."""

    @pytest.mark.parametrize("n,dim", [(2, 2), (3, 18), (4, 264)])
    def test_isomorphism(self, n, dim):
        result = verify_iso(n)
        assert result.passed
        assert result.rank == dim

    @pytest.mark.slow
    def test_isomorphism_in_arity_five(self):
        result = verify_iso(5)
        assert result.passed
        assert result.rank == 5400

    def test_isomorphism_arity_bound(self):
        with pytest.raises(ResourceLimitError):
            verify_iso(6)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_chain_map(self, n):
        result = verify_chain_map(n)
        assert result.passed
        assert result.checked == sleib_dim(n)

    def test_chain_map_arity_bound(self):
        with pytest.raises(ResourceLimitError):
            verify_chain_map(5)

    def test_chain_map_on_the_ternary_generator(self):
        assert theta(tree_diff(corolla(3))) == differential(LIE_D, theta(corolla(3)))

    @pytest.mark.parametrize("n", range(3, 6))
    def test_bracket_splitting(self, n):
        assert verify_bracket_splitting(n) == []

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_normal_brackets_form_a_basis(self, n):
        assert normal_bracket_check(n).passed

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_image_has_weight_zero(self, n):
        assert theta_weight_check(n) == []

    def test_theta_is_a_morphism_on_graftings(self):
        t2 = corolla(2)
        x = compose_partial(SHLEIB, compose_partial(SHLEIB, t2, 2, t2), 1, t2)
        image = theta(t2)
        expected = compose_partial(LIE_D, compose_partial(LIE_D, image, 2, image), 1, image)
        assert x.text() == "-1 · T2(T2(1,2),T2(3,4))"
        assert theta(x) == expected

    def test_binary_leibniz(self):
        result = binary_leibniz_check()
        assert result.identity_holds
        assert result.prefix_rule_holds
        assert result.passed
        assert result.dims[4] == (24, 24)

    def test_generated_suboperad_has_factorial_dimensions(self):
        assert sleib_generated_dims(4) == {1: 1, 2: 2, 3: 6, 4: 24}


class TestCoproducts:
    """Half-shuffle and deshuffle coproducts on words."""

    def test_zinbiel_coproduct_keeps_the_last_letter_right(self):
        splittings = zinbiel_coproduct("abc")
        assert len(splittings) == 3
        assert all(right[-1] == "c" for _, right, _ in splittings)
        assert (("a",), ("b", "c"), 1) in splittings

    def test_zinbiel_coproduct_signs(self):
        splittings = zinbiel_coproduct("abc", [1, 1, 0])
        assert (("b",), ("a", "c"), -1) in splittings

    def test_zinbiel_coproduct_needs_two_letters(self):
        with pytest.raises(ArgumentError):
            zinbiel_coproduct("a")

    @pytest.mark.parametrize("word", ["abc", "abcd", "abcde"])
    def test_zinbiel_identity(self, word):
        assert zinbiel_identity_defect(word) == {}

    def test_zinbiel_identity_with_odd_letters(self):
        assert zinbiel_identity_defect("abcd", [1, 0, 1, 1]) == {}

    def test_deshuffle_coproduct(self):
        assert len(deshuffle_coproduct("abc")) == 6

    @pytest.mark.parametrize("degrees", [None, [1, 1, 1, 1], [0, 1, 1, 0]])
    def test_deshuffle_coassociativity(self, degrees):
        assert deshuffle_coassociativity_defect("abcd", degrees) == {}
