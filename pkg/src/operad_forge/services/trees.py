"""Planar rooted trees: enumeration, grafting, Schröder and corolla counting."""

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import comb, factorial, prod

from operad_forge.core.cache import memoize
from operad_forge.core.errors import ArgumentError
from operad_forge.core.logging import get_logger
from operad_forge.core.validators import validate_arity, validate_slot
from operad_forge.services.exact import Permutation

logger = get_logger(__name__)

LEAF_GLYPH = "∙"
ASCII_LEAF_GLYPH = "."


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarTree:
    """A leaf (no children) or an internal vertex with at least two ordered children.

    `decoration` names the generator sitting on an internal vertex when the
    tree is a free-operad monomial; plain shapes leave it unset.
    """

    children: tuple["PlanarTree", ...] = ()
    decoration: str | None = None

    def __post_init__(self):
        if len(self.children) == 1:
            raise ArgumentError("internal vertices need arity >= 2")
        if not self.children and self.decoration is not None:
            raise ArgumentError("leaves carry no decoration")

    @classmethod
    def leaf(cls) -> "PlanarTree":
        return _LEAF

    @classmethod
    def corolla(cls, k: int, decoration: str | None = None) -> "PlanarTree":
        validate_arity(k, 2, "k")
        return cls(tuple(_LEAF for _ in range(k)), decoration)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def arity(self) -> int:
        """Arity of the root vertex (0 for a leaf)."""
        return len(self.children)

    @cached_property
    def leaves(self) -> int:
        if self.is_leaf:
            return 1
        return sum(child.leaves for child in self.children)

    @cached_property
    def code(self) -> tuple[int, ...]:
        """Preorder arity word; leaves are 0."""
        if self.is_leaf:
            return (0,)
        return (self.arity,) + tuple(c for child in self.children for c in child.code)

    @cached_property
    def vertices(self) -> int:
        return sum(1 for c in self.code if c)

    def arity_profile(self) -> Counter:
        """Multiset of internal-vertex arities."""
        return Counter(c for c in self.code if c)

    def vertex_spans(self) -> list[tuple["PlanarTree", int, int]]:
        """Internal vertices in preorder with their first and last leaf positions (1-based)."""
        spans: list[tuple[PlanarTree, int, int]] = []

        def walk(node: PlanarTree, start: int) -> None:
            if node.is_leaf:
                return
            spans.append((node, start, start + node.leaves - 1))
            offset = start
            for child in node.children:
                walk(child, offset)
                offset += child.leaves

        walk(self, 1)
        return spans

    def text(self, ascii_only: bool = False) -> str:
        glyph = ASCII_LEAF_GLYPH if ascii_only else LEAF_GLYPH
        if self.is_leaf:
            return glyph
        return "(" + "".join(child.text(ascii_only) for child in self.children) + ")"

    def __str__(self) -> str:
        return self.text()

    def __lt__(self, other: "PlanarTree") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        decorations = tuple(node.decoration or "" for node, _, _ in self.vertex_spans())
        return (self.code, decorations)


_LEAF = PlanarTree()


def graft_planar(host: PlanarTree, i: int, graft: PlanarTree) -> PlanarTree:
    """Replace the i-th leaf (planar order) of host by graft."""
    validate_slot(i, host.leaves)

    def walk(node: PlanarTree, position: int) -> PlanarTree:
        if node.is_leaf:
            return graft
        children = []
        offset = 0
        for child in node.children:
            if offset < position <= offset + child.leaves:
                children.append(walk(child, position - offset))
            else:
                children.append(child)
            offset += child.leaves
        return PlanarTree(tuple(children), node.decoration)

    return walk(host, i)


@dataclass(frozen=True)
class LabeledTree:
    """A planar tree with leaf labels listed in planar order."""

    shape: PlanarTree
    labels: Permutation

    def __post_init__(self):
        if self.labels.size != self.shape.leaves:
            raise ArgumentError(
                f"{self.labels.size} labels for a tree with {self.shape.leaves} leaves"
            )

    @classmethod
    def standard(cls, shape: PlanarTree) -> "LabeledTree":
        return cls(shape, Permutation.identity(shape.leaves))

    @property
    def arity(self) -> int:
        return self.shape.leaves

    def leaf_of_label(self, label: int) -> int:
        """Planar position of the leaf carrying label."""
        return self.labels.images.index(label) + 1

    def relabel(self, sigma: Permutation) -> "LabeledTree":
        """Label j becomes σ(j)."""
        return LabeledTree(self.shape, Permutation(tuple(sigma(j) for j in self.labels)))

    def __str__(self) -> str:
        return f"{self.shape.text()}[{','.join(str(j) for j in self.labels)}]"


def graft_labels(host: Permutation, i: int, graft: Permutation) -> tuple[Permutation, int]:
    """
    Operadic relabeling for grafting at input i.

    Returns:
        (labels of the grafted tree in planar order, planar position of input i in host)
    """
    m = graft.size
    position = host.images.index(i) + 1
    labels: list[int] = []
    for j in host.images:
        if j == i:
            labels.extend(k + i - 1 for k in graft.images)
        elif j > i:
            labels.append(j + m - 1)
        else:
            labels.append(j)
    return Permutation(tuple(labels)), position


def graft(host, i: int, other):
    """
    Graft `other` into input i of `host`.

    PlanarTree hosts graft at the i-th leaf; LabeledTree hosts graft at the
    leaf labelled i with the standard operadic relabeling.

    Raises:
        ArgumentError: If i is out of range or the kinds differ
    """
    if isinstance(host, PlanarTree) and isinstance(other, PlanarTree):
        return graft_planar(host, i, other)
    if isinstance(host, LabeledTree) and isinstance(other, LabeledTree):
        validate_slot(i, host.arity)
        labels, position = graft_labels(host.labels, i, other.labels)
        return LabeledTree(graft_planar(host.shape, position, other.shape), labels)
    raise ArgumentError("graft needs two PlanarTrees or two LabeledTrees")


# ---------------------------------------------------------------------------
# Enumeration and counting
# ---------------------------------------------------------------------------


def compositions(n: int, k: int):
    """Ordered k-tuples of positive integers summing to n."""
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


@memoize("trees.enumerate")
def _enumerate(n: int) -> tuple[PlanarTree, ...]:
    if n == 1:
        return (_LEAF,)
    trees: list[PlanarTree] = []
    for k in range(2, n + 1):
        for sizes in compositions(n, k):
            partial: list[tuple[PlanarTree, ...]] = [()]
            for size in sizes:
                partial = [prefix + (t,) for prefix in partial for t in _enumerate(size)]
            trees.extend(PlanarTree(children) for children in partial)
    return tuple(sorted(trees, key=lambda t: t.code))


def enumerate_trees(n: int) -> list[PlanarTree]:
    """
    All planar rooted trees with n leaves and internal arities >= 2,
    ordered by preorder arity code.

    Raises:
        ArgumentError: If n < 1
    """
    validate_arity(n)
    trees = list(_enumerate(n))
    logger.debug("trees.enumerated", n=n, count=len(trees))
    return trees


def schroeder(n: int) -> int:
    """
    Small Schröder number s(n): planar rooted trees with n leaves.

    Uses (k+1)a(k) = 3(2k−1)a(k−1) − (k−2)a(k−2), a(0)=a(1)=1, s(n)=a(n−1).
    """
    validate_arity(n)
    a_prev, a_cur = 1, 1  # a(0), a(1)
    if n - 1 == 0:
        return a_prev
    for k in range(2, n):
        a_prev, a_cur = a_cur, (3 * (2 * k - 1) * a_cur - (k - 2) * a_prev) // (k + 1)
    return a_cur


def trees_with_vertices(n: int, a: int) -> list[PlanarTree]:
    """Trees with n leaves and exactly a internal vertices."""
    return [t for t in enumerate_trees(n) if t.vertices == a]


def count_by_arity_profile(n: int) -> Counter:
    """Brute-force tally: vertex-arity multiset → number of n-leaf trees."""
    tally: Counter = Counter()
    for t in enumerate_trees(n):
        tally[frozenset(t.arity_profile().items())] += 1
    return tally


@dataclass(frozen=True)
class CorollaMultiset:
    """λ_i copies of the corolla c_{i+1}; multiplicities[0] is λ_1."""

    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if any(isinstance(m, bool) or not isinstance(m, int) or m < 0 for m in self.multiplicities):
            raise ArgumentError(f"multiplicities must be nonnegative: {self.multiplicities}")
        trimmed = tuple(self.multiplicities)
        while trimmed and trimmed[-1] == 0:
            trimmed = trimmed[:-1]
        object.__setattr__(self, "multiplicities", trimmed)

    @classmethod
    def from_counts(cls, counts: dict[int, int]) -> "CorollaMultiset":
        """From {corolla arity k: copies}."""
        if any(k < 2 for k in counts):
            raise ArgumentError("corolla arities start at 2")
        top = max(counts, default=1)
        return cls(tuple(counts.get(k, 0) for k in range(2, top + 1)))

    @property
    def total(self) -> int:
        """Λ, the number of corollas."""
        return sum(self.multiplicities)

    @property
    def leaves(self) -> int:
        """|T| = Σ i·λ_i + 1."""
        return sum(i * m for i, m in enumerate(self.multiplicities, start=1)) + 1

    def as_profile(self) -> frozenset:
        return frozenset((i + 1, m) for i, m in enumerate(self.multiplicities, start=1) if m)

    def __str__(self) -> str:
        return ",".join(
            f"c{i + 1}:{m}" for i, m in enumerate(self.multiplicities, start=1) if m
        )


def count_trees_from_corollas(c: CorollaMultiset) -> int:
    """
    Number of planar trees built from exactly the given corollas:
    (1/|T|)·C(|T|+Λ−1, Λ)·Λ!/∏λ_i!.

    Raises:
        ArgumentError: If the multiset is empty
    """
    if c.total == 0:
        raise ArgumentError("corolla multiset is empty")
    leaves, total = c.leaves, c.total
    numerator = comb(leaves + total - 1, total) * factorial(total)
    numerator //= prod(factorial(m) for m in c.multiplicities)
    if numerator % leaves:
        raise ArgumentError(f"non-integral count for {c}")  # cannot happen for valid input
    return numerator // leaves


def fuss_catalan(k: int, m: int) -> int:
    """
    k-ary trees with m internal vertices, via count_trees_from_corollas({c_k: m}).

    Raises:
        ArgumentError: If k < 2 or m < 1, or the closed form disagrees
    """
    validate_arity(k, 2, "k")
    validate_arity(m, 1, "m")
    count = count_trees_from_corollas(CorollaMultiset.from_counts({k: m}))
    closed = comb(k * m, m) // ((k - 1) * m + 1)
    if count != closed:
        raise ArgumentError(f"Fuss-Catalan mismatch for k={k}, m={m}: {count} != {closed}")
    return count
