# File: tests/test_trees.py
"""Tests for planar trees, grafting and the counting formulas."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from operad_forge.core.errors import ArgumentError
from operad_forge.services.exact import Permutation
from operad_forge.services.trees import (
    CorollaMultiset,
    LabeledTree,
    PlanarTree,
    compositions,
    count_by_arity_profile,
    count_trees_from_corollas,
    enumerate_trees,
    fuss_catalan,
    graft,
    schroeder,
    trees_with_vertices,
)
from operad_forge.utils.textform import parse_shape

SCHROEDER = [1, 1, 3, 11, 45, 197, 903, 4279, 20793, 103049]


class TestPlanarTree:
    """Shapes, codes and grafting."""

    def test_corolla(self):
        c = PlanarTree.corolla(3)
        assert c.leaves == 3
        assert c.vertices == 1
        assert c.code == (3, 0, 0, 0)
        assert c.text() == "(∙∙∙)"
        assert c.text(ascii_only=True) == "(...)"

    def test_unary_vertices_are_rejected(self):
        with pytest.raises(ArgumentError):
            PlanarTree((PlanarTree.leaf(),))

    def test_corolla_needs_arity_two(self):
        with pytest.raises(ArgumentError):
            PlanarTree.corolla(1)

    def test_arity_profile(self):
        t = parse_shape("((..)(...))")
        assert t.arity_profile() == {2: 2, 3: 1}
        assert t.leaves == 5

    def test_vertex_spans(self):
        t = parse_shape("(.(..))")
        spans = [(first, last) for _, first, last in t.vertex_spans()]
        assert spans == [(1, 3), (2, 3)]

    def test_graft_planar(self):
        c2 = PlanarTree.corolla(2)
        assert graft(c2, 2, c2).text() == "(∙(∙∙))"
        assert graft(c2, 1, c2).text() == "((∙∙)∙)"

    def test_graft_slot_out_of_range(self):
        c2 = PlanarTree.corolla(2)
        with pytest.raises(ArgumentError):
            graft(c2, 3, c2)

    def test_graft_needs_matching_kinds(self):
        c2 = PlanarTree.corolla(2)
        with pytest.raises(ArgumentError):
            graft(c2, 1, LabeledTree.standard(c2))


class TestLabeledTree:
    """Leaf labels and operadic relabeling."""

    def test_graft_relabels(self):
        c2 = PlanarTree.corolla(2)
        host = LabeledTree(c2, Permutation((2, 1)))
        result = graft(host, 1, LabeledTree.standard(c2))
        assert result.shape.text() == "(∙(∙∙))"
        assert result.labels == Permutation((3, 1, 2))

    def test_label_count_must_match_leaves(self):
        with pytest.raises(ArgumentError):
            LabeledTree(PlanarTree.corolla(2), Permutation((1, 2, 3)))

    def test_relabel_and_leaf_lookup(self):
        t = LabeledTree(PlanarTree.corolla(3), Permutation((2, 3, 1)))
        assert t.leaf_of_label(1) == 3
        assert t.relabel(Permutation((2, 1, 3))).labels == Permutation((1, 3, 2))
        assert str(t) == "(∙∙∙)[2,3,1]"


class TestEnumeration:
    """Enumeration agrees with the Schröder numbers."""

    @pytest.mark.parametrize("n", range(1, 8))
    def test_enumeration_matches_schroeder(self, n):
        assert len(enumerate_trees(n)) == schroeder(n) == SCHROEDER[n - 1]

    def test_schroeder_table(self):
        assert [schroeder(n) for n in range(1, 11)] == SCHROEDER

    def test_enumeration_is_ordered_and_distinct(self):
        trees = enumerate_trees(5)
        codes = [t.code for t in trees]
        assert codes == sorted(codes)
        assert len(set(trees)) == len(trees)

    def test_schroeder_needs_positive_n(self):
        with pytest.raises(ArgumentError):
            schroeder(0)

    def test_trees_with_vertices(self):
        assert len(trees_with_vertices(4, 3)) == 5
        assert len(trees_with_vertices(4, 1)) == 1

    def test_compositions(self):
        assert list(compositions(4, 2)) == [(1, 3), (2, 2), (3, 1)]


class TestCorollaCounts:
    """Counting trees built from a given multiset of corollas."""

    def test_count_by_arity_profile(self):
        tally = count_by_arity_profile(4)
        assert tally[frozenset({(4, 1)})] == 1
        assert tally[frozenset({(2, 1), (3, 1)})] == 5
        assert tally[frozenset({(2, 3)})] == 5

    def test_examples(self):
        assert count_trees_from_corollas(CorollaMultiset.from_counts({2: 1, 3: 1})) == 5
        assert count_trees_from_corollas(CorollaMultiset.from_counts({3: 2})) == 3

    @pytest.mark.parametrize("n", range(2, 7))
    def test_formula_matches_enumeration(self, n):
        for profile, count in count_by_arity_profile(n).items():
            multiset = CorollaMultiset.from_counts(dict(profile))
            assert count_trees_from_corollas(multiset) == count

    def test_fuss_catalan(self):
        assert [fuss_catalan(2, m) for m in range(1, 6)] == [1, 2, 5, 14, 42]
        assert fuss_catalan(3, 2) == 3

    def test_empty_multiset(self):
        with pytest.raises(ArgumentError):
            count_trees_from_corollas(CorollaMultiset(()))

    def test_multiset_shape(self):
        multiset = CorollaMultiset.from_counts({2: 2, 4: 1})
        assert multiset.multiplicities == (2, 0, 1)
        assert multiset.total == 3
        assert multiset.leaves == 6
        assert str(multiset) == "c2:2,c4:1"

    def test_negative_multiplicity(self):
        with pytest.raises(ArgumentError):
            CorollaMultiset((1, -1))

    @given(st.integers(2, 5), st.integers(1, 6))
    def test_single_corolla_type_is_fuss_catalan(self, k, m):
        count = count_trees_from_corollas(CorollaMultiset.from_counts({k: m}))
        assert count == fuss_catalan(k, m)
