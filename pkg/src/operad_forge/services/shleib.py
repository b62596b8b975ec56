"""sΛLeib∞, the derived-bracket map θ and its verification.

sΛLeib∞ is the free operad on one degree-1 corolla T_k per arity k >= 2 with
the tree differential

    d_t T_n = − Σ_{i+j=n+1} T_i T_j,
    T_i T_j = Σ_{k=j}^{n} Σ_{σ ∈ Unsh(k−j, j−1)} T_i ∘_{k−j+1} T_j,

the grafted tree carrying the labels σ(1), …, σ(k−1), k, k+1, …, n in planar order.

θ sends T_n to the normal derived bracket {d_{n−1}(1), 2, …, n} in Lie⊗D∞
and is extended over graftings by composition in Lie⊗D∞.
"""

from collections import defaultdict
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from operad_forge.core.cache import memoize
from operad_forge.core.config import get_settings
from operad_forge.core.errors import ArgumentError, ContextError, ResourceLimitError
from operad_forge.core.logging import get_logger
from operad_forge.core.validators import validate_arity
from operad_forge.services.deform import (
    D_INF,
    LambdaProfile,
    Q,
    QOperad,
    WordOperad,
    WordTuple,
    dim_D,
)
from operad_forge.services.exact import (
    Permutation,
    koszul_sign,
    matrix_from_images,
    rank,
    row_basis,
    sign_power,
    unshuffles,
)
from operad_forge.services.lie import (
    LIE,
    Applied,
    Bracket,
    BracketWord,
    Leaf,
    adjoint_embed,
    bracket,
    key_word,
    leaf_labels,
    left_fold,
    normalize,
    weight,
)
from operad_forge.services.operad import (
    Element,
    FreeOperad,
    GeneratorSpec,
    HadamardOperad,
    add_into,
    basis_element,
    compose_partial,
    differential,
    gamma,
    symmetric_action,
)
from operad_forge.services.trees import (
    LabeledTree,
    PlanarTree,
    graft_planar,
    schroeder,
    trees_with_vertices,
)

logger = get_logger(__name__)

# Generators exist in every arity; the free operad needs a finite table.
GENERATOR_ARITY_CAP = 16
GENERATOR = "T"


# ---------------------------------------------------------------------------
# Zinbiel coproduct
# ---------------------------------------------------------------------------


Splitting = tuple[tuple, tuple, int]


def zinbiel_coproduct(word: Sequence, degrees: Sequence[int] | None = None) -> list[Splitting]:
    """
    Half-shuffle splittings of (x_1, …, x_{n+1}) with x_{n+1} kept last on the right.

    Args:
        word: The letters x_1..x_{n+1}
        degrees: Their degrees (all 0 when omitted)

    Returns:
        (left, right, ε(σ)) for i = 1..n and σ over the (i, n−i)-unshuffles

    Raises:
        ArgumentError: If the word has fewer than two letters
    """
    items = tuple(word)
    if len(items) < 2:
        raise ArgumentError("the coproduct needs a word of length >= 2")
    degrees = list(degrees) if degrees is not None else [0] * len(items)
    n = len(items) - 1
    splittings: list[Splitting] = []
    for i in range(1, n + 1):
        for sigma in unshuffles(i, n - i):
            picked = tuple(items[k - 1] for k in sigma.images)
            sign = koszul_sign(sigma, degrees[:n])
            splittings.append((picked[:i], picked[i:] + (items[-1],), sign))
    return splittings


def _degree_map(word: Sequence, degrees: Sequence[int] | None) -> dict:
    return dict(zip(word, degrees if degrees is not None else [0] * len(word)))


def _coproduct_of(part: tuple, degree_of: dict) -> list[Splitting]:
    if len(part) < 2:
        return []
    return zinbiel_coproduct(part, [degree_of[x] for x in part])


def zinbiel_identity_defect(word: Sequence, degrees: Sequence[int] | None = None) -> dict:
    """
    (id⊗Δ)Δ − (Δ⊗id)Δ − (τ⊗id)(Δ⊗id)Δ on a word of distinct letters.

    Returns:
        The nonzero coefficients of the defect, keyed by triples of parts
    """
    degree_of = _degree_map(word, degrees)

    def part_degree(part: tuple) -> int:
        return sum(degree_of[x] for x in part)

    out: dict = {}
    for left, right, sign in zinbiel_coproduct(word, degrees):
        for a, b, s in _coproduct_of(right, degree_of):
            add_into(out, (left, a, b), sign * s)
        for a, b, s in _coproduct_of(left, degree_of):
            add_into(out, (a, b, right), -sign * s)
            swap = sign_power(part_degree(a) * part_degree(b))
            add_into(out, (b, a, right), -sign * s * swap)
    return out


def deshuffle_coproduct(word: Sequence, degrees: Sequence[int] | None = None) -> list[Splitting]:
    """All splittings into two nonempty order-preserving parts, with Koszul signs."""
    items = tuple(word)
    degrees = list(degrees) if degrees is not None else [0] * len(items)
    n = len(items)
    out: list[Splitting] = []
    for i in range(1, n):
        for sigma in unshuffles(i, n - i):
            picked = tuple(items[k - 1] for k in sigma.images)
            out.append((picked[:i], picked[i:], koszul_sign(sigma, degrees)))
    return out


def deshuffle_coassociativity_defect(word: Sequence, degrees: Sequence[int] | None = None) -> dict:
    """(id⊗Δ)Δ − (Δ⊗id)Δ for the full deshuffle coproduct."""
    degree_of = _degree_map(word, degrees)
    out: dict = {}
    for left, right, sign in deshuffle_coproduct(word, degrees):
        if len(right) > 1:
            for a, b, s in deshuffle_coproduct(right, [degree_of[x] for x in right]):
                add_into(out, (left, a, b), sign * s)
        if len(left) > 1:
            for a, b, s in deshuffle_coproduct(left, [degree_of[x] for x in left]):
                add_into(out, (a, b, right), -sign * s)
    return out


# ---------------------------------------------------------------------------
# The free operad and the tree differential
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplittingTerm:
    """One term T_i ∘_{position} T_j of T_i T_j, labeled."""

    i: int
    j: int
    k: int
    sigma: Permutation
    tree: LabeledTree

    @property
    def regular(self) -> bool:
        return self.sigma.is_identity()


def splitting_terms(i: int, j: int) -> Iterator[SplittingTerm]:
    """The labeled graftings making up T_i T_j, in arity i + j − 1."""
    validate_arity(i, 2, "i")
    validate_arity(j, 2, "j")
    n = i + j - 1
    for k in range(j, n + 1):
        position = k - j + 1
        shape = graft_planar(
            PlanarTree.corolla(i, GENERATOR), position, PlanarTree.corolla(j, GENERATOR)
        )
        for sigma in unshuffles(k - j, j - 1):
            labels = sigma.images + (k,) + tuple(range(k + 1, n + 1))
            yield SplittingTerm(i, j, k, sigma, LabeledTree(shape, Permutation(labels)))


@memoize("shleib.generator_differential")
def generator_differential(name: str, n: int) -> dict[LabeledTree, int]:
    """d_t T_n as {labeled tree: coefficient}; d_t T_2 = 0."""
    out: dict[LabeledTree, int] = {}
    for i in range(2, n):
        for term in splitting_terms(i, n + 1 - i):
            add_into(out, term.tree, -1)
    return out


class ShLeibOperad(FreeOperad):
    """sΛLeib∞ with the tree differential."""

    def __init__(self):
        super().__init__(
            GeneratorSpec.corollas(GENERATOR_ARITY_CAP, GENERATOR, 1),
            name="sΛLeib∞",
            generator_differential=generator_differential,
        )


SHLEIB = ShLeibOperad()
LIE_D = HadamardOperad(LIE, D_INF)
LIE_Q = HadamardOperad(LIE, Q)


def corolla(k: int, labels: Sequence[int] | None = None) -> Element:
    """T_k(labels) in sΛLeib∞."""
    return SHLEIB.generator(k, GENERATOR, labels)


def tree_product(i: int, j: int) -> Element:
    """T_i T_j."""
    out: dict[LabeledTree, int] = {}
    for term in splitting_terms(i, j):
        add_into(out, term.tree, 1)
    return Element(SHLEIB, i + j - 1, out)


def tree_diff(x: Element) -> Element:
    """d_t x, extended from generators as a degree +1 operadic derivation."""
    if x.operad is not SHLEIB:
        raise ContextError(f"the tree differential acts on sΛLeib∞, got {x.operad.name}")
    return differential(SHLEIB, x)


def sleib_dim(n: int, degree: int | None = None) -> int:
    """n!·(planar trees with n leaves and `degree` vertices, or all of them)."""
    validate_arity(n)
    if n == 1:
        return 1 if degree in (None, 0) else 0
    count = schroeder(n) if degree is None else len(trees_with_vertices(n, degree))
    return factorial(n) * count


def lie_d_dim(n: int, degree: int | None = None) -> int:
    validate_arity(n)
    d_part = dim_D(n) if degree is None else len(D_INF.basis(n, degree))
    return factorial(n - 1) * d_part


# ---------------------------------------------------------------------------
# Derived brackets in Lie⊗D∞ and Lie⊗Q
# ---------------------------------------------------------------------------


def _apply_letter(letter: int, w: BracketWord) -> dict[BracketWord, int]:
    """d{A,B} = {dA,B} + (−1)^{|A|}{A,dB}."""
    match w:
        case Leaf(label=label, word=word):
            return {Leaf(label, (letter,) + word): 1}
        case Bracket(left=left, right=right):
            out: dict[BracketWord, int] = {}
            for image, c in _apply_letter(letter, left).items():
                add_into(out, Bracket(image, right), c)
            sign = sign_power(_letter_degree(left))
            for image, c in _apply_letter(letter, right).items():
                add_into(out, Bracket(left, image), sign * c)
            return out
    raise ContextError(f"cannot apply a derivation letter to {w!r}")


def _letter_degree(w: BracketWord) -> int:
    match w:
        case Leaf(word=word):
            return len(word)
        case Bracket(left=left, right=right):
            return _letter_degree(left) + _letter_degree(right)
    raise ContextError(f"not a derived bracket: {w!r}")


def push_letters(w: BracketWord) -> dict[BracketWord, int]:
    """Rewrite so that derivation letters sit on leaves only."""
    match w:
        case Leaf():
            return {w: 1}
        case Bracket(left=left, right=right):
            out: dict[BracketWord, int] = {}
            for a, ca in push_letters(left).items():
                for b, cb in push_letters(right).items():
                    add_into(out, Bracket(a, b), ca * cb)
            return out
        case Applied(letters=letters, inner=inner):
            current = push_letters(inner)
            for letter in reversed(letters):
                following: dict[BracketWord, int] = {}
                for word, c in current.items():
                    for image, c2 in _apply_letter(letter, word).items():
                        add_into(following, image, c * c2)
                current = following
            return current
    raise ContextError(f"derived brackets contain labels and letters only, got {w!r}")


def _strip(w: BracketWord) -> BracketWord:
    match w:
        case Leaf(label=label):
            return Leaf(label)
        case Bracket(left=left, right=right):
            return Bracket(_strip(left), _strip(right))
    raise ContextError(f"not a derived bracket: {w!r}")


def _leaf_words(w: BracketWord) -> dict[int, tuple[int, ...]]:
    match w:
        case Leaf(label=label, word=word):
            return {label: word}
        case Bracket(left=left, right=right):
            return _leaf_words(left) | _leaf_words(right)
    raise ContextError(f"not a derived bracket: {w!r}")


def derived_bracket(w: BracketWord, context: HadamardOperad = LIE_D) -> Element:
    """
    Read a derived-bracket expression as an element of Lie⊗D∞ (or Lie⊗Q).

    The term l ⊗ (w_1, …, w_n) is the bracket l with the word w_j on leaf j,
    times the Koszul sign of l's leaf order for the word degrees.

    Raises:
        ArgumentError: On repeated or missing labels
        ContextError: If a slot word does not belong to the word operad
    """
    right: WordOperad = context.right
    out: dict = {}
    arity = len(leaf_labels(w))
    for term, coeff in push_letters(w).items():
        words = _leaf_words(term)
        n = len(words)
        if sorted(words) != list(range(1, n + 1)):
            raise ArgumentError("derived bracket labels must be 1..n once each")
        slots = WordTuple(tuple(words[j] for j in range(1, n + 1)))
        if not right.admits(slots):
            if isinstance(right, QOperad) and all(x == 0 for x in slots.letters()):
                continue
            right.validate_key(slots)
        order = Permutation(tuple(leaf_labels(term)))
        sign = koszul_sign(order, [len(word) for word in slots.slots])
        for lie_key, c in normalize(_strip(term)).terms.items():
            add_into(out, (lie_key, slots), coeff * sign * c)
    return Element(context, arity, out)


def hadamard_key_word(key) -> BracketWord:
    """The derived bracket spelled by a Hadamard key: the Lie word with w_j on leaf j."""
    lie_key, slots = key
    word = key_word(lie_key)

    def decorate(node: BracketWord) -> BracketWord:
        match node:
            case Leaf(label=label):
                return Leaf(label, slots.slots[label - 1])
            case Bracket(left=left, right=right):
                return Bracket(decorate(left), decorate(right))
        return node

    return decorate(word)


def normal_derived_bracket(labels: Sequence[int], letter: int | None = None) -> BracketWord:
    """{d_{n−1}(l_1), l_2, …, l_n}."""
    labels = list(labels)
    n = len(labels)
    letter = n - 1 if letter is None else letter
    return bracket(Leaf(labels[0], (letter,)), *labels[1:])


# ---------------------------------------------------------------------------
# θ
# ---------------------------------------------------------------------------


@memoize("shleib.theta_generator")
def theta_generator(k: int) -> Element:
    """θ(T_k) = {d_{k−1}(1), 2, …, k}."""
    validate_arity(k, 2, "k")
    lie_part = normalize(left_fold(list(range(1, k + 1))))
    slots = WordTuple(((k - 1,),) + tuple(() for _ in range(k - 1)))
    return Element(LIE_D, k, {(key, slots): c for key, c in lie_part.terms.items()})


@memoize("shleib.theta_shape")
def _theta_shape(shape: PlanarTree) -> Element:
    if shape.is_leaf:
        return LIE_D.unit()
    return gamma(LIE_D, theta_generator(shape.arity), [_theta_shape(c) for c in shape.children])


def theta_key(key: LabeledTree) -> Element:
    image = _theta_shape(key.shape)
    if key.labels.is_identity():
        return image
    return symmetric_action(LIE_D, key.labels, image)


def theta(x: Element) -> Element:
    """θ: sΛLeib∞ → Lie⊗D∞."""
    if x.operad is not SHLEIB:
        raise ContextError(f"θ is defined on sΛLeib∞, got {x.operad.name}")
    out: dict = {}
    for key, coeff in x.terms.items():
        for image, c in theta_key(key).terms.items():
            add_into(out, image, coeff * c)
    return Element(LIE_D, x.arity, out)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def _bounded(n: int, bound: int | None, default: int, what: str) -> None:
    validate_arity(n, 2)
    limit = bound if bound is not None else default
    if n > limit:
        raise ResourceLimitError(
            f"{what}({n}) exceeds the arity bound {limit}", details={"n": n, "bound": limit}
        )


def _profile_of_tree(key: LabeledTree) -> frozenset:
    return frozenset(key.shape.arity_profile().items())


def _profile_of_hadamard(key) -> frozenset:
    letters = LambdaProfile.of_key(key[1]).multiplicities
    return frozenset((k + 1, m) for k, m in enumerate(letters, start=1) if m)


@dataclass
class IsoResult:
    n: int
    source_dim: int
    target_dim: int
    rank: int
    blocks: int

    @property
    def passed(self) -> bool:
        return self.source_dim == self.target_dim == self.rank


def verify_iso(n: int, bound: int | None = None) -> IsoResult:
    """
    Rank of θ on the n!·s(n) tree monomials against the (n−1)!·dim D∞(n) Hadamard basis.

    θ preserves the multiset of vertex arities (read on the D∞ side as the
    letter multiset), so the matrix is block diagonal and each block is
    ranked on its own.

    Raises:
        ResourceLimitError: If n exceeds the arity bound (OPERAD_FORGE_MAX_ARITY by default)
    """
    _bounded(n, bound, get_settings().max_arity, "verify_iso")
    sources: dict[frozenset, list[LabeledTree]] = defaultdict(list)
    for key in SHLEIB.basis(n):
        sources[_profile_of_tree(key)].append(key)
    targets: dict[frozenset, list] = defaultdict(list)
    for key in LIE_D.basis(n):
        targets[_profile_of_hadamard(key)].append(key)

    total_rank = 0
    for profile in sorted(set(sources) | set(targets), key=sorted):
        columns = {key: c for c, key in enumerate(targets.get(profile, []))}
        rows = (theta_key(key).terms for key in sources.get(profile, []))
        block = matrix_from_images(rows, columns, what=f"θ block in arity {n}")
        block_rank = rank(block)
        total_rank += block_rank
        logger.debug(
            "verify.iso.block", n=n, rows=block.rows, cols=block.cols, rank=block_rank
        )
    result = IsoResult(
        n=n,
        source_dim=sum(len(v) for v in sources.values()),
        target_dim=sum(len(v) for v in targets.values()),
        rank=total_rank,
        blocks=len(set(sources) | set(targets)),
    )
    logger.info(
        "verify.iso.done",
        n=n,
        source=result.source_dim,
        target=result.target_dim,
        rank=result.rank,
    )
    return result


@dataclass
class ChainMapResult:
    n: int
    checked: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def chain_map_defect(x: Element) -> Element:
    """θ(d_t x) − (id⊗∂)θ(x)."""
    return theta(tree_diff(x)) - differential(LIE_D, theta(x))


def verify_chain_map(n: int, bound: int | None = None) -> ChainMapResult:
    """
    θ∘d_t = (id⊗∂)∘θ on every basis tree monomial of arity n.

    Raises:
        ResourceLimitError: If n exceeds the bound (OPERAD_FORGE_CHAIN_MAP_ARITY by default)
    """
    _bounded(n, bound, get_settings().chain_map_arity, "verify_chain_map")
    result = ChainMapResult(n=n, checked=0)
    for key in SHLEIB.basis(n):
        defect = chain_map_defect(basis_element(SHLEIB, key))
        result.checked += 1
        if defect:
            result.failures.append(SHLEIB.key_text(key))
    logger.info("verify.chain_map.done", n=n, checked=result.checked, failed=len(result.failures))
    return result


def _reduce_span(elements: Sequence[Element], operad, n: int) -> list[Element]:
    """Echelon basis of the span of elements, columns in first-seen key order."""
    columns: dict = {}
    for x in elements:
        for key in x.terms:
            columns.setdefault(key, len(columns))
    matrix = matrix_from_images((x.terms for x in elements), columns, what="span")
    keys = list(columns)
    return [Element(operad, n, {keys[c]: v for c, v in row.items()}) for row in row_basis(matrix)]


def _symmetric_closure(elements: Sequence[Element], operad, n: int) -> list[Element]:
    """Basis of the smallest S_n-stable subspace containing elements."""
    swaps = [Permutation.transposition(n, a, a + 1) for a in range(1, n)]
    span = _reduce_span(elements, operad, n)
    while True:
        moved = span + [symmetric_action(operad, s, x) for x in span for s in swaps]
        grown = _reduce_span(moved, operad, n)
        if len(grown) == len(span):
            return span
        span = grown


def binary_bracket() -> Element:
    """The derived bracket {d_0(1), 2} in Lie⊗Q."""
    return derived_bracket(Bracket(Leaf(1, (0,)), Leaf(2)), LIE_Q)


def sleib_generated_dims(max_n: int) -> dict[int, int]:
    """
    Dimensions of the suboperad of Lie⊗Q generated by the binary derived bracket.

    Arity m is spanned by x ∘_i g for x spanning arity m − 1 and g in the
    S_2-orbit of the bracket, closed under S_m.
    """
    validate_arity(max_n)
    b = binary_bracket()
    generators = [b, symmetric_action(LIE_Q, Permutation((2, 1)), b)]
    span = [LIE_Q.unit()]
    dims = {1: 1}
    for m in range(2, max_n + 1):
        composites = [
            compose_partial(LIE_Q, x, i, g)
            for x in span
            for i in range(1, m)
            for g in generators
        ]
        span = _symmetric_closure(composites, LIE_Q, m)
        dims[m] = len(span)
        logger.debug("shleib.generated", n=m, rank=dims[m])
    return dims


@dataclass
class LeibnizResult:
    identity_holds: bool
    prefix_rule_holds: bool
    dims: dict[int, tuple[int, int]]

    @property
    def passed(self) -> bool:
        return (
            self.identity_holds
            and self.prefix_rule_holds
            and all(a == b for a, b in self.dims.values())
        )


def binary_leibniz_check(max_n: int = 4) -> LeibnizResult:
    """
    The odd Leibniz identity of the derived bracket {d_0(1), 2} in Lie⊗Q, and
    the rank of the suboperad it generates against n! for n <= max_n.
    """
    d0 = (0,)
    lhs = derived_bracket(Bracket(Leaf(1, d0), Bracket(Leaf(2, d0), Leaf(3))), LIE_Q)
    rhs = -derived_bracket(
        Bracket(Applied(d0, Bracket(Leaf(1, d0), Leaf(2))), Leaf(3)), LIE_Q
    ) - derived_bracket(Bracket(Leaf(2, d0), Bracket(Leaf(1, d0), Leaf(3))), LIE_Q)

    prefixed = derived_bracket(Applied(d0, Bracket(Leaf(1), Leaf(2))), LIE_Q)
    expanded = derived_bracket(Bracket(Leaf(1, d0), Leaf(2)), LIE_Q) + derived_bracket(
        Bracket(Leaf(1), Leaf(2, d0)), LIE_Q
    )
    generated = sleib_generated_dims(max_n)
    dims = {n: (generated[n], factorial(n)) for n in range(1, max_n + 1)}
    return LeibnizResult(lhs == rhs, bool(prefixed) and prefixed == expanded, dims)


def ass_infinity_differential(n: int) -> Element:
    """
    d T_n in sΛAss∞ with identity labels: −Σ T_i ∘_p T_j over the blocks of
    j consecutive leaves, 2 <= j <= n − 1, starting at leaf p.
    """
    validate_arity(n, 2)
    out: dict[LabeledTree, int] = {}
    labels = Permutation.identity(n)
    for j in range(2, n):
        for p in range(1, n - j + 2):
            children = (
                (PlanarTree.leaf(),) * (p - 1)
                + (PlanarTree.corolla(j, GENERATOR),)
                + (PlanarTree.leaf(),) * (n - j - p + 1)
            )
            add_into(out, LabeledTree(PlanarTree(children, GENERATOR), labels), -1)
    return Element(SHLEIB, n, out)


@dataclass
class RegularPart:
    n: int
    regular: Element
    irregular: Element
    associahedron: Element

    @property
    def passed(self) -> bool:
        return self.regular == self.associahedron


def regular_part(n: int, bound: int | None = None) -> RegularPart:
    """Split d_t T_n into identity-labeled terms and the rest; compare with sΛAss∞."""
    _bounded(n, bound, get_settings().max_arity, "regular_part")
    regular: dict[LabeledTree, Fraction] = {}
    irregular: dict[LabeledTree, Fraction] = {}
    for key, coeff in tree_diff(corolla(n)).terms.items():
        target = regular if key.labels.is_identity() else irregular
        target[key] = coeff
    return RegularPart(
        n=n,
        regular=Element(SHLEIB, n, regular),
        irregular=Element(SHLEIB, n, irregular),
        associahedron=ass_infinity_differential(n),
    )


def verify_bracket_splitting(n: int) -> list[str]:
    """
    θ(T_iT_j + T_jT_i) = {[d_{i−1}, d_{j−1}](1), 2, …, n} for every i + j = n + 1.

    Returns:
        The pairs (as "i,j") where the identity fails
    """
    validate_arity(n, 3)
    failures = []
    for i in range(2, n):
        j = n + 1 - i
        if j < i:
            continue
        lhs = theta(tree_product(i, j) + tree_product(j, i))
        rhs = LIE_D.zero(n)
        for word in {(i - 1, j - 1), (j - 1, i - 1)}:
            rhs = rhs + derived_bracket(bracket(Leaf(1, word), *range(2, n + 1)))
        if i == j:
            rhs = rhs * 2
        if lhs != rhs:
            failures.append(f"{i},{j}")
    return failures


@dataclass
class NormalBracketResult:
    n: int
    rank: int
    count: int
    dim: int

    @property
    def passed(self) -> bool:
        return self.rank == self.count == self.dim


def normal_bracket_check(n: int) -> NormalBracketResult:
    """The n! normal derived brackets θ(T_n(σ)) form a basis of (Lie⊗D^1∞)(n)."""
    validate_arity(n, 2)
    columns = {key: c for c, key in enumerate(LIE_D.basis(n, 1))}
    keys = [key for key in SHLEIB.basis(n) if key.shape.vertices == 1]
    images = (theta_key(key).terms for key in keys)
    matrix = matrix_from_images(images, columns, what="normal brackets")
    return NormalBracketResult(n=n, rank=rank(matrix), count=len(keys), dim=len(columns))


def theta_weight_check(n: int) -> list[str]:
    """Hadamard keys in θ's image at arity n whose adjoint embedding has nonzero weight."""
    validate_arity(n, 2)
    offenders = []
    seen = set()
    for key in SHLEIB.basis(n):
        if not key.labels.is_identity():
            continue
        for image in theta_key(key).terms:
            if image in seen:
                continue
            seen.add(image)
            if weight(adjoint_embed(hadamard_key_word(image))) != 0:
                offenders.append(LIE_D.key_text(image))
    return offenders
