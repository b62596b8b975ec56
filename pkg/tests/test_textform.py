# File: tests/test_textform.py
"""Tests for the element text grammar."""

import pytest

from operad_forge.core.errors import ContextError, ParseError
from operad_forge.services.deform import D_INF, Q, word_element
from operad_forge.services.lie import Applied, Bracket, Leaf, bracket, normalize
from operad_forge.services.operad import compose_partial
from operad_forge.services.shleib import SHLEIB, corolla, theta_generator, tree_diff
from operad_forge.services.trees import CorollaMultiset
from operad_forge.utils.textform import (
    parse_bracket_word,
    parse_corollas,
    parse_hadamard,
    parse_lie,
    parse_shape,
    parse_tree,
    parse_words,
    render,
    to_payload,
)


class TestWordTuples:
    """D∞ and Q elements."""

    def test_single_tuple(self):
        assert parse_words("d2|1|1") == word_element(D_INF, (2,), (), ())

    def test_coefficients_and_separators(self):
        x = parse_words("2 · d1|1 - 1/2 * 1|d1")
        assert x.text() == "-1/2 · 1|d1 + 2 · d1|1"

    def test_canonical_text_parses_back(self):
        x = parse_words("-1 · d1|d1|1 + 1 · d1.d1|1|1")
        assert parse_words(x.text()) == x
        assert x.text() == "-1 · d1|d1|1 + 1 · d1.d1|1|1"

    def test_repeated_terms_are_combined(self):
        assert parse_words("d1|1 + d1|1") == word_element(D_INF, (1,), (), coeff=2)

    def test_d0_needs_q(self):
        with pytest.raises(ContextError):
            parse_words("d0|1")
        assert parse_words("d0|1", Q) == word_element(Q, (0,), ())

    def test_error_position(self):
        with pytest.raises(ParseError) as excinfo:
            parse_words("d1|x")
        assert excinfo.value.position == 4
        assert excinfo.value.exit_code == 2

    def test_empty_text(self):
        with pytest.raises(ParseError) as excinfo:
            parse_words("   ")
        assert excinfo.value.position == 4

    def test_zero_has_no_arity(self):
        with pytest.raises(ParseError):
            parse_words("0")

    def test_zero_denominator(self):
        with pytest.raises(ParseError):
            parse_words("1/0 · d1|1")


class TestLieText:
    """Bracket words and Lie combinations."""

    def test_bracket_word_with_letters(self):
        word = parse_bracket_word("{d2.d1(1),2,3,4}")
        assert word == bracket(Leaf(1, (2, 1)), 2, 3, 4)

    def test_applied_letters(self):
        word = parse_bracket_word("d0{d0(1),2}")
        assert word == Applied((0,), Bracket(Leaf(1, (0,)), Leaf(2)))

    def test_bracket_needs_two_entries(self):
        with pytest.raises(ParseError):
            parse_bracket_word("{1}")

    def test_trailing_text(self):
        with pytest.raises(ParseError):
            parse_bracket_word("{1,2}}")

    def test_lie_combination(self):
        assert parse_lie("{2,1}").text() == "-1 · {1,2}"
        assert parse_lie("{1,2,3}") == normalize(bracket(1, 2, 3))

    def test_jacobi(self):
        assert parse_lie("{1,{2,3}} + {2,{3,1}} + {3,{1,2}}") == 0


class TestHadamardText:
    """Lie⊗D∞ keys and derived brackets."""

    def test_key_form(self):
        assert parse_hadamard("{1,2}#d1|1") == theta_generator(2)

    def test_derived_bracket_form(self):
        assert parse_hadamard("{d1(1),2}") == theta_generator(2)
        assert parse_hadamard("{d2(1),2,3}") == theta_generator(3)

    def test_canonical_text_parses_back(self):
        x = theta_generator(3)
        assert parse_hadamard(x.text()) == x


class TestTreeText:
    """Tree monomials in sΛLeib∞."""

    def test_nested_monomial(self):
        c2 = corolla(2)
        assert parse_tree("T2(T2(1,2),3)") == compose_partial(SHLEIB, c2, 1, c2)

    def test_grafting_syntax(self):
        c2 = corolla(2)
        assert parse_tree("T2(1,2)@2:T2(1,2)") == compose_partial(SHLEIB, c2, 2, c2)

    def test_unit(self):
        assert parse_tree("1") == SHLEIB.unit()

    def test_canonical_text_parses_back(self):
        x = tree_diff(corolla(3))
        assert parse_tree(x.text()) == x

    @pytest.mark.parametrize("text", ["T2(1,1)", "T2(1,2,3)", "T1(1)", "T2(1,", "T2(1,3)"])
    def test_malformed_trees(self, text):
        with pytest.raises(ParseError):
            parse_tree(text)


class TestShapesAndCorollas:
    """Planar shapes and corolla multisets."""

    def test_shape(self):
        assert parse_shape("((..).)").text() == "((∙∙)∙)"
        assert parse_shape("(∙∙∙)").leaves == 3

    @pytest.mark.parametrize("text", ["(.)", "(..", "(..)x"])
    def test_malformed_shapes(self, text):
        with pytest.raises(ParseError):
            parse_shape(text)

    def test_corollas(self):
        assert parse_corollas("c2:1, c3:1") == CorollaMultiset((1, 1))

    @pytest.mark.parametrize("text", ["c1:2", "c2:1,c2:1", "c2:0", "c2", ""])
    def test_malformed_corollas(self, text):
        with pytest.raises(ParseError):
            parse_corollas(text)


class TestRendering:
    """Canonical text and JSON payloads."""

    def test_render(self):
        x = parse_words("d2|1|1")
        assert render(x) == "1 · d2|1|1"

    def test_payload(self):
        x = parse_words("-d1.d1|1|1")
        assert to_payload(x).model_dump() == {
            "arity": 3,
            "terms": [{"key": "d1.d1|1|1", "coeff": "-1"}],
        }
