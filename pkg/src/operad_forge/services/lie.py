"""The Lie operad, graded free Lie words and the elimination rewriting.

Bracket words are small immutable trees over label leaves (degree 0), odd
symbols δ_k (degree 1), T-elements {δ_k, l_1, …, l_f} and derivation-applied
leaves. Normal forms go through the multilinear associative expansion: a Lie
element is determined by the coefficients of the words ending in its largest
atom, and those coefficients are exactly its right-normed coordinates.
"""

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Union

from operad_forge.core.cache import memoize
from operad_forge.core.errors import ArgumentError, ContextError, VerificationError
from operad_forge.core.logging import get_logger
from operad_forge.core.validators import validate_arity
from operad_forge.services.exact import (
    Permutation,
    SparseMatrix,
    all_permutations,
    format_scalar,
    koszul_sign,
    rank,
    sign_power,
)
from operad_forge.services.operad import Element, Operad, add_into

logger = get_logger(__name__)


# ---------------------------------------------------------------------------
# Bracket words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    """Input `label`, optionally with derivation letters applied (outermost first)."""

    label: int
    word: tuple[int, ...] = ()


@dataclass(frozen=True)
class Delta:
    """The odd symbol δ_k."""

    index: int


@dataclass(frozen=True)
class TElement:
    """{δ_k, l_1, …, l_f}, the left-normed bracket of δ_k with labels."""

    delta: int
    labels: tuple[int, ...] = ()


@dataclass(frozen=True)
class Bracket:
    left: "BracketWord"
    right: "BracketWord"


@dataclass(frozen=True)
class Applied:
    """Derivation letters applied to a whole bracket, e.g. d0{d0(1),2}."""

    letters: tuple[int, ...]
    inner: "BracketWord"


BracketWord = Union[Leaf, Delta, TElement, Bracket, Applied]
Atom = Union[int, Delta]
Combination = dict[BracketWord, Fraction]


def bracket(*words: BracketWord | int) -> BracketWord:
    """Left-normed bracket {w_1, w_2, …, w_k} = {{w_1, w_2}, …, w_k}; ints become leaves."""
    if not words:
        raise ArgumentError("bracket needs at least one argument")
    items = [Leaf(w) if isinstance(w, int) else w for w in words]
    result = items[0]
    for item in items[1:]:
        result = Bracket(result, item)
    return result


def left_fold(labels: Sequence[int]) -> BracketWord:
    """{{{l_1, l_2}, …}, l_n}."""
    if not labels:
        raise ArgumentError("left_fold needs a nonempty sequence")
    return bracket(*labels)


def right_normed(atoms: Sequence[Atom]) -> BracketWord:
    """{a_1, {a_2, …, {a_{n−1}, a_n}}}."""
    if not atoms:
        raise ArgumentError("right_normed needs a nonempty sequence")
    nodes = [Leaf(a) if isinstance(a, int) else a for a in atoms]
    result = nodes[-1]
    for node in reversed(nodes[:-1]):
        result = Bracket(node, result)
    return result


def degree(w: BracketWord) -> int:
    match w:
        case Leaf(word=word):
            return len(word)
        case Delta() | TElement():
            return 1
        case Bracket(left=left, right=right):
            return degree(left) + degree(right)
        case Applied(letters=letters, inner=inner):
            return len(letters) + degree(inner)
    raise ArgumentError(f"not a bracket word: {w!r}")


def leaf_labels(w: BracketWord) -> list[int]:
    """Labels in left-to-right order."""
    match w:
        case Leaf(label=label):
            return [label]
        case Delta():
            return []
        case TElement(labels=labels):
            return list(labels)
        case Bracket(left=left, right=right):
            return leaf_labels(left) + leaf_labels(right)
        case Applied(inner=inner):
            return leaf_labels(inner)
    raise ArgumentError(f"not a bracket word: {w!r}")


def relabel(w: BracketWord, mapping: Mapping[int, int]) -> BracketWord:
    match w:
        case Leaf(label=label, word=word):
            return Leaf(mapping.get(label, label), word)
        case Delta():
            return w
        case TElement(delta=k, labels=labels):
            return TElement(k, tuple(mapping.get(j, j) for j in labels))
        case Bracket(left=left, right=right):
            return Bracket(relabel(left, mapping), relabel(right, mapping))
        case Applied(letters=letters, inner=inner):
            return Applied(letters, relabel(inner, mapping))
    raise ArgumentError(f"not a bracket word: {w!r}")


def substitute(w: BracketWord, label: int, replacement: BracketWord) -> BracketWord:
    """Replace the leaf carrying `label` by `replacement`."""
    match w:
        case Leaf(label=j) if j == label:
            return replacement
        case Bracket(left=left, right=right):
            return Bracket(
                substitute(left, label, replacement), substitute(right, label, replacement)
            )
        case Applied(letters=letters, inner=inner):
            return Applied(letters, substitute(inner, label, replacement))
    return w


def letters_text(letters: Sequence[int]) -> str:
    return ".".join(f"d{k}" for k in letters)


def word_text(w: BracketWord) -> str:
    """Text form: "{1,{2,3}}", "D2", "d2.d1(1)", "d0{d0(1),2}"."""
    match w:
        case Leaf(label=label, word=()):
            return str(label)
        case Leaf(label=label, word=word):
            return f"{letters_text(word)}({label})"
        case Delta(index=k):
            return f"D{k}"
        case TElement(delta=k, labels=()):
            return f"D{k}"
        case TElement(delta=k, labels=labels):
            return "{" + ",".join([f"D{k}", *(str(j) for j in labels)]) + "}"
        case Bracket(left=left, right=right):
            return "{" + word_text(left) + "," + word_text(right) + "}"
        case Applied(letters=letters, inner=inner):
            return letters_text(letters) + word_text(inner)
    raise ArgumentError(f"not a bracket word: {w!r}")


def combination_text(combo: Mapping[BracketWord, Fraction]) -> str:
    if not combo:
        return "0"
    parts = []
    for index, (w, c) in enumerate(sorted(combo.items(), key=lambda kv: word_text(kv[0]))):
        body = f"{format_scalar(abs(c))} · {word_text(w)}"
        if index == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def as_combination(w: BracketWord | Mapping[BracketWord, int | Fraction]) -> Combination:
    if isinstance(w, Mapping):
        return {k: Fraction(v) for k, v in w.items() if v}
    return {w: Fraction(1)}


# ---------------------------------------------------------------------------
# Associative expansion
# ---------------------------------------------------------------------------


def _atom_rank(atom: Atom) -> tuple[int, int]:
    return (1, atom.index) if isinstance(atom, Delta) else (0, atom)


def _atom_degree(atom: Atom) -> int:
    return 1 if isinstance(atom, Delta) else 0


def expand(
    w: BracketWord | Mapping[BracketWord, int | Fraction],
) -> dict[tuple[Atom, ...], Fraction]:
    """
    Image in the free associative algebra, with [a,b] = ab − (−1)^{|a||b|} ba.

    Raises:
        ContextError: If a leaf carries derivation letters (read those through
            adjoint_embed or the derived-bracket reading instead)
    """
    out: dict[tuple[Atom, ...], Fraction] = {}
    for word, coeff in as_combination(w).items():
        for atoms, c in _expand_word(word).items():
            add_into(out, atoms, coeff * c)
    return out


@memoize("lie.expand")
def _expand_word(w: BracketWord) -> dict[tuple[Atom, ...], int]:
    match w:
        case Leaf(label=label, word=()):
            return {(label,): 1}
        case Leaf() | Applied():
            raise ContextError(f"derivation letters in {word_text(w)} have no associative image")
        case Delta():
            return {(w,): 1}
        case TElement(delta=k, labels=labels):
            return _expand_word(bracket(Delta(k), *labels))
        case Bracket(left=left, right=right):
            a, b = _expand_word(left), _expand_word(right)
            twist = -sign_power(degree(left) * degree(right))
            out: dict[tuple[Atom, ...], int] = {}
            for wa, ca in a.items():
                for wb, cb in b.items():
                    add_into(out, wa + wb, ca * cb)
                    add_into(out, wb + wa, twist * ca * cb)
            return out
    raise ArgumentError(f"not a bracket word: {w!r}")


def atoms_of(w: BracketWord) -> list[Atom]:
    match w:
        case Leaf(label=label):
            return [label]
        case Delta():
            return [w]
        case TElement(delta=k, labels=labels):
            return [Delta(k), *labels]
        case Bracket(left=left, right=right):
            return atoms_of(left) + atoms_of(right)
        case Applied(inner=inner):
            return atoms_of(inner)
    raise ArgumentError(f"not a bracket word: {w!r}")


def right_normed_coordinates(
    combo: Mapping[BracketWord, int | Fraction],
) -> dict[tuple[Atom, ...], Fraction]:
    """
    Coordinates of a multilinear Lie combination in the right-normed basis
    {a_1, {a_2, …, {a_{n−1}, top}}}, top the largest atom (labels < δ's).

    Returns:
        {(a_1, …, a_{n−1}, top): coefficient}

    Raises:
        ArgumentError: If the terms are not multilinear over one atom set
    """
    combo = as_combination(combo)
    if not combo:
        return {}
    atom_sets = {tuple(sorted(atoms_of(w), key=_atom_rank)) for w in combo}
    if len(atom_sets) != 1:
        raise ArgumentError("terms use different atoms")
    atoms = next(iter(atom_sets))
    if len(set(atoms)) != len(atoms):
        raise ArgumentError("repeated atoms: not multilinear")
    top = atoms[-1]
    return {word: c for word, c in expand(combo).items() if word[-1] == top}


# ---------------------------------------------------------------------------
# The Lie operad
# ---------------------------------------------------------------------------


def key_word(key: tuple[int, ...]) -> BracketWord:
    """Right-normed word of a Lie basis key (σ(1), …, σ(n−1))."""
    return right_normed(list(key) + [len(key) + 1])


def _check_labels(w: BracketWord) -> int:
    labels = leaf_labels(w)
    if sorted(labels) != list(range(1, len(labels) + 1)):
        raise ArgumentError(f"repeated or missing labels in {word_text(w)}")
    return len(labels)


class LieOperad(Operad):
    """Lie, concentrated in degree 0, basis right-normed with n innermost-last."""

    name = "Lie"

    def key_arity(self, key: tuple[int, ...]) -> int:
        return len(key) + 1

    def degree(self, key) -> int:
        return 0

    def basis(self, n: int, degree: int | None = None) -> list[tuple[int, ...]]:
        validate_arity(n)
        if degree not in (None, 0):
            return []
        return [p.images for p in all_permutations(n - 1)] if n > 1 else [()]

    def compose_keys(self, p, i, q):
        return _lie_compose(p, i, q)

    def act_key(self, sigma, key):
        return _lie_act(sigma, key)

    def unit_key(self):
        return ()

    def key_text(self, key) -> str:
        return word_text(key_word(key))

    def sort_key(self, key):
        return key


LIE = LieOperad()


def normalize(w: BracketWord | Mapping[BracketWord, int | Fraction]) -> Element:
    """
    Express a label-linear bracket word (or combination) in the right-normed basis.

    Raises:
        ArgumentError: On repeated or missing labels
        ContextError: If a leaf carries δ-symbols or derivation letters
    """
    combo = as_combination(w)
    arities = {_check_labels(word) for word in combo}
    for word in combo:
        if any(isinstance(a, Delta) for a in atoms_of(word)):
            raise ContextError("δ-symbols are not Lie-operad inputs")
    if len(arities) > 1:
        raise ArgumentError("terms of different arities")
    n = arities.pop() if arities else 1
    if n == 1:
        total = sum(combo.values(), Fraction(0))
        return Element(LIE, 1, {(): total})
    coords = right_normed_coordinates(combo)
    return Element(LIE, n, {word[:-1]: c for word, c in coords.items()})


@memoize("lie.compose")
def _lie_compose(p: tuple[int, ...], i: int, q: tuple[int, ...]) -> dict:
    n, m = len(p) + 1, len(q) + 1
    host = relabel(key_word(p), {j: j + m - 1 for j in range(i + 1, n + 1)})
    inner = relabel(key_word(q), {j: j + i - 1 for j in range(1, m + 1)})
    return normalize(substitute(host, i, inner)).terms


@memoize("lie.act")
def _lie_act(sigma: Permutation, key: tuple[int, ...]) -> dict:
    word = relabel(key_word(key), {j: sigma(j) for j in range(1, sigma.size + 1)})
    return normalize(word).terms


def expansion_rank(n: int) -> int:
    """Rank of the right-normed basis words expanded into the n!-dimensional multilinear space."""
    validate_arity(n)
    keys = LIE.basis(n)
    columns = {p.images: c for c, p in enumerate(all_permutations(n))}
    rows = []
    for key in keys:
        rows.append({columns[w]: c for w, c in expand(key_word(key)).items()})
    return rank(SparseMatrix.from_rows(rows, cols=len(columns)))


def lie_dim(n: int, check: bool = False) -> int:
    """
    dim Lie(n) = (n−1)!.

    With check=True the value is confirmed by expansion_rank.

    Raises:
        VerificationError: If check=True and the ranks disagree
    """
    validate_arity(n)
    dim = factorial(n - 1)
    if check:
        observed = expansion_rank(n)
        if observed != dim:
            raise VerificationError(f"expansion rank {observed} != (n-1)! = {dim}")
    return dim


# ---------------------------------------------------------------------------
# Adjoint embedding, weight, elimination
# ---------------------------------------------------------------------------


def adjoint_embed(w: BracketWord) -> BracketWord:
    """Replace each derivation letter d_k by bracketing with δ_k, innermost letter first."""
    match w:
        case Leaf(label=label, word=word):
            result: BracketWord = Leaf(label)
            for k in reversed(word):
                result = Bracket(Delta(k), result)
            return result
        case Applied(letters=letters, inner=inner):
            result = adjoint_embed(inner)
            for k in reversed(letters):
                result = Bracket(Delta(k), result)
            return result
        case Bracket(left=left, right=right):
            return Bracket(adjoint_embed(left), adjoint_embed(right))
    return w


def weight(w: BracketWord) -> int:
    """w(δ_k) = k+1, labels 0, each bracket −1; derivation letters d_k count k."""
    match w:
        case Leaf(word=word):
            return sum(word)
        case Delta(index=k):
            return k + 1
        case TElement(delta=k, labels=labels):
            return k + 1 - len(labels)
        case Bracket(left=left, right=right):
            return weight(left) + weight(right) - 1
        case Applied(letters=letters, inner=inner):
            return sum(letters) + weight(inner)
    raise ArgumentError(f"not a bracket word: {w!r}")


@dataclass(frozen=True)
class Elimination:
    """w = t_part + n_part with t_part built from T-elements and n_part from labels."""

    t_part: Mapping[BracketWord, Fraction]
    n_part: Mapping[BracketWord, Fraction]

    def total(self) -> Combination:
        out: Combination = {}
        for part in (self.t_part, self.n_part):
            for w, c in part.items():
                add_into(out, w, c)
        return out


def _is_t_word(w: BracketWord) -> bool:
    match w:
        case TElement():
            return True
        case Bracket(left=left, right=right):
            return _is_t_word(left) and _is_t_word(right)
    return False


def _scaled_bracket(a: Combination, b: Combination, sign: int = 1) -> Combination:
    out: Combination = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            add_into(out, Bracket(wa, wb), sign * ca * cb)
    return out


def _merge(*parts: Combination) -> Combination:
    out: Combination = {}
    for part in parts:
        for w, c in part.items():
            add_into(out, w, c)
    return out


def _extend(x: BracketWord, label: int) -> Combination:
    """{x, label} for a T-word x, rewritten onto T-elements."""
    match x:
        case TElement(delta=k, labels=labels):
            return {TElement(k, labels + (label,)): Fraction(1)}
        case Bracket(left=left, right=right):
            # {{x1,x2},l} = {x1,{x2,l}} + {{x1,l},x2}
            return _merge(
                _scaled_bracket({left: Fraction(1)}, _extend(right, label)),
                _scaled_bracket(_extend(left, label), {right: Fraction(1)}),
            )
    raise ArgumentError(f"not a T-word: {word_text(x)}")


def _bracket_with_labels(x: Combination, y: BracketWord) -> Combination:
    """{x, y} for T-words x and a pure-label word y."""
    match y:
        case Leaf(label=label):
            return _merge(*(
                {w: c * cx for w, c in _extend(wx, label).items()} for wx, cx in x.items()
            ))
        case Bracket(left=left, right=right):
            # {x,{a,b}} = {{x,a},b} − {{x,b},a}
            first = _bracket_with_labels(_bracket_with_labels(x, left), right)
            second = _bracket_with_labels(_bracket_with_labels(x, right), left)
            return _merge(first, {w: -c for w, c in second.items()})
    raise ArgumentError(f"not a label word: {word_text(y)}")


def _split(w: BracketWord) -> tuple[Combination, Combination]:
    match w:
        case Leaf(word=()):
            return {}, {w: Fraction(1)}
        case Delta(index=k):
            return {TElement(k): Fraction(1)}, {}
        case TElement():
            return {w: Fraction(1)}, {}
        case Bracket(left=left, right=right):
            at, an = _split(left)
            bt, bn = _split(right)
            t_part = _scaled_bracket(at, bt)
            for wn, cn in bn.items():
                t_part = _merge(
                    t_part, {k: v * cn for k, v in _bracket_with_labels(at, wn).items()}
                )
            for wn, cn in an.items():
                # {n, t} = −{t, n}
                t_part = _merge(
                    t_part, {k: -v * cn for k, v in _bracket_with_labels(bt, wn).items()}
                )
            return t_part, _scaled_bracket(an, bn)
    raise ContextError(f"eliminate needs δ/label words, got {word_text(w)}")


def eliminate(w: BracketWord | Mapping[BracketWord, int | Fraction]) -> Elimination:
    """
    Rewrite a word over δ's and labels as brackets of T-elements plus a pure-label part.

    Derivation-applied leaves are embedded first. The result re-expands to the
    same associative image as the input.
    """
    t_total: Combination = {}
    n_total: Combination = {}
    for word, coeff in as_combination(w).items():
        t_part, n_part = _split(adjoint_embed(word))
        for part, total in ((t_part, t_total), (n_part, n_total)):
            for key, c in part.items():
                add_into(total, key, coeff * c)
    return Elimination(t_total, n_total)


def t_elements(w: BracketWord) -> list[TElement]:
    match w:
        case TElement():
            return [w]
        case Bracket(left=left, right=right):
            return t_elements(left) + t_elements(right)
    return []


def has_normal_factor(w: BracketWord) -> bool:
    """
    Every T-term of eliminate(w) contains a factor {δ_j, l_1, …, l_f} with f >= j+1.

    Holds for every weight-0 word containing a δ.
    """
    elimination = eliminate(w)
    if not elimination.t_part:
        return False
    return all(
        any(len(t.labels) >= t.delta + 1 for t in t_elements(term))
        for term in elimination.t_part
    )


def weight_zero_words(n_labels: int, deltas: Iterable[int]) -> list[BracketWord]:
    """All binary bracketings of δ's then labels, permuted; used for exhaustive checks."""
    atoms: list[BracketWord] = [Delta(k) for k in deltas] + [
        Leaf(j) for j in range(1, n_labels + 1)
    ]
    words: set[BracketWord] = set()

    def shapes(items: tuple[BracketWord, ...]) -> Iterable[BracketWord]:
        if len(items) == 1:
            yield items[0]
            return
        for cut in range(1, len(items)):
            for left in shapes(items[:cut]):
                for right in shapes(items[cut:]):
                    yield Bracket(left, right)

    for order in permutations(atoms):
        for word in shapes(tuple(order)):
            if weight(word) == 0:
                words.add(word)
    return sorted(words, key=word_text)


def is_normal_t_element(t: TElement) -> bool:
    return len(t.labels) >= t.delta + 1


def sign_of_leaf_order(w: BracketWord, degrees: Mapping[int, int]) -> int:
    """Koszul sign of the leaf order of w relative to 1..n for the given label degrees."""
    order = leaf_labels(w)
    n = len(order)
    return koszul_sign(Permutation(tuple(order)), [degrees.get(j, 0) for j in range(1, n + 1)])
