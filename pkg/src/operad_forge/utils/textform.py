# File: src/operad_forge/utils/textform.py
"""Element text grammar: parsing and rendering.

    combination := term (("+" | "-") term)* | "0"
    term        := ["-"] [rational ("·" | "*")] key
    lie word    := INT | "D" INT | letters "(" INT ")" | [letters] "{" word ("," word)+ "}"
    letters     := "d" INT ("." "d" INT)*
    word tuple  := slot ("|" slot)*         slot := "1" | letters
    hadamard    := lie word "#" word tuple  (or a derived bracket such as {d1(1),2})
    tree        := monomial ("@" INT ":" monomial)*
    monomial    := "T" INT "(" (INT | monomial) ("," ...)* ")"

"{a,b,c}" is the left-normed bracket {{a,b},c}. Parse errors carry the
1-based character position.
"""

from dataclasses import dataclass
from fractions import Fraction

import pyparsing as pp

from operad_forge.core.errors import ParseError
from operad_forge.models.report_schemas import ElementPayload, TermPayload
from operad_forge.services.deform import D_INF, WordOperad, WordTuple
from operad_forge.services.exact import Permutation, format_scalar
from operad_forge.services.lie import (
    Applied,
    Bracket,
    BracketWord,
    Delta,
    Leaf,
    normalize,
)
from operad_forge.services.operad import (
    Element,
    HadamardOperad,
    compose_partial,
    tensor_elements,
)
from operad_forge.services.shleib import LIE_D, SHLEIB, derived_bracket
from operad_forge.services.trees import CorollaMultiset, LabeledTree, PlanarTree


@dataclass(frozen=True)
class _Monomial:
    shape: PlanarTree
    labels: tuple[int, ...]


@dataclass(frozen=True)
class _CorollaCount:
    arity: int
    count: int
    loc: int


def _integer() -> pp.ParserElement:
    return pp.Regex(r"\d+").set_parse_action(lambda t: int(t[0]))


def _letter_values(text: str) -> tuple[int, ...]:
    """ "d2.d1" → (2, 1); the unit slot "1" → ()."""
    if text == "1":
        return ()
    return tuple(int(part[1:]) for part in text.split("."))


def _rational(s: str, loc: int, toks: pp.ParseResults) -> Fraction:
    numerator, _, denominator = toks[0].partition("/")
    if denominator and int(denominator) == 0:
        raise pp.ParseFatalException(s, loc, "zero denominator")
    return Fraction(int(numerator), int(denominator or 1))


def _sign(toks: pp.ParseResults) -> str:
    return "+" if toks[0] == "+" else "-"


_LETTERS = pp.Regex(r"d\d+(?:\.d\d+)*")
_MINUS = pp.one_of("- −").set_parse_action(_sign)
_SIGN = pp.one_of("+ - −").set_parse_action(_sign)
_COEFF = pp.Opt(
    pp.Regex(r"\d+(?:/\d+)?").set_parse_action(_rational) + pp.Suppress(pp.one_of("· *")),
    default=Fraction(1),
)


def _combination(key: pp.ParserElement) -> pp.ParserElement:
    """Signed terms [sign, coeff, key]; the sign between terms commits to a term."""
    first = pp.Group(pp.Opt(_MINUS, default="+") + _COEFF + key)
    rest = pp.Group(_SIGN - (_COEFF + key))
    return first + pp.ZeroOrMore(rest)


# ---------------------------------------------------------------------------
# Lie words
# ---------------------------------------------------------------------------


def _left_normed(s: str, loc: int, toks: pp.ParseResults) -> BracketWord:
    if len(toks) < 2:
        raise pp.ParseFatalException(s, loc, "a bracket needs at least two entries")
    word = toks[0]
    for item in toks[1:]:
        word = Bracket(word, item)
    return word


def _lettered(toks: pp.ParseResults) -> BracketWord:
    letters, inner = _letter_values(toks[0]), toks[1]
    if isinstance(inner, int):
        return Leaf(inner, letters)
    return Applied(letters, inner)


_WORD = pp.Forward()
_BRACES = (
    pp.Suppress("{") - _WORD + pp.ZeroOrMore(pp.Suppress(",") - _WORD) - pp.Suppress("}")
).set_parse_action(_left_normed)
_WORD <<= (
    _integer().set_parse_action(lambda t: Leaf(int(t[0])))
    | pp.Regex(r"D\d+").set_parse_action(lambda t: Delta(int(t[0][1:])))
    | _BRACES
    | (
        _LETTERS
        - ((pp.Suppress("(") - _integer() - pp.Suppress(")")) | _BRACES)
    ).set_parse_action(_lettered)
)


# ---------------------------------------------------------------------------
# Word tuples
# ---------------------------------------------------------------------------

_SLOT = pp.Regex(r"1(?!\d)") | _LETTERS
_WORD_TUPLE = (_SLOT + pp.ZeroOrMore(pp.Suppress("|") - _SLOT)).set_parse_action(
    lambda t: WordTuple(tuple(_letter_values(slot) for slot in t))
)


# ---------------------------------------------------------------------------
# Tree monomials
# ---------------------------------------------------------------------------


def _monomial(s: str, loc: int, toks: pp.ParseResults) -> _Monomial:
    k = int(toks[0][1:])
    if k < 2:
        raise pp.ParseFatalException(s, loc, f"generators have arity >= 2, got T{k}")
    if len(toks) - 1 != k:
        raise pp.ParseFatalException(s, loc, f"T{k} has {len(toks) - 1} inputs")
    children: list[PlanarTree] = []
    labels: list[int] = []
    for child in toks[1:]:
        if isinstance(child, int):
            children.append(PlanarTree.leaf())
            labels.append(child)
        else:
            children.append(child.shape)
            labels.extend(child.labels)
    return _Monomial(PlanarTree(tuple(children), "T"), tuple(labels))


def _labeled(s: str, loc: int, toks: pp.ParseResults) -> Element:
    node: _Monomial = toks[0][0]
    n = len(node.labels)
    if sorted(node.labels) != list(range(1, n + 1)):
        raise pp.ParseFatalException(s, loc, f"leaf labels must be 1..{n} once each")
    return Element(SHLEIB, n, {LabeledTree(node.shape, Permutation(node.labels)): 1})


def _unit(s: str, loc: int, toks: pp.ParseResults) -> Element:
    if toks[0] != "1":
        raise pp.ParseFatalException(s, loc, "the unit is written 1")
    return SHLEIB.unit()


_MONOMIAL = pp.Forward()
_CHILD = _MONOMIAL | _integer()
_MONOMIAL <<= (
    pp.Regex(r"T\d+")
    + pp.Suppress("(")
    - _CHILD
    + pp.ZeroOrMore(pp.Suppress(",") - _CHILD)
    - pp.Suppress(")")
).set_parse_action(_monomial)
_LABELED = pp.Group(_MONOMIAL).set_parse_action(_labeled) | pp.Regex(r"\d+").set_parse_action(
    _unit
)
_TREE_KEY = pp.Group(
    _LABELED
    + pp.ZeroOrMore(pp.Group(pp.Suppress("@") - _integer() - pp.Suppress(":") - _LABELED))
)


# ---------------------------------------------------------------------------
# Shapes and corolla multisets
# ---------------------------------------------------------------------------


def _vertex(s: str, loc: int, toks: pp.ParseResults) -> PlanarTree:
    if len(toks) < 2:
        raise pp.ParseFatalException(s, loc, "internal vertices need arity >= 2")
    return PlanarTree(tuple(toks))


_SHAPE = pp.Forward()
_SHAPE <<= pp.one_of("∙ .").set_parse_action(lambda: PlanarTree.leaf()) | (
    pp.Suppress("(") - pp.ZeroOrMore(_SHAPE) - pp.Suppress(")")
).set_parse_action(_vertex)


def _corolla_count(s: str, loc: int, toks: pp.ParseResults) -> _CorollaCount:
    k = int(toks[0][1:])
    if k < 2:
        raise pp.ParseFatalException(s, loc, f"corolla arity must be >= 2, got c{k}")
    return _CorollaCount(k, toks[1], loc)


_COROLLA = (pp.Regex(r"c\d+") - pp.Suppress(":") - _integer()).set_parse_action(_corolla_count)
_COROLLAS = _COROLLA + pp.ZeroOrMore(pp.Suppress(",") - _COROLLA)


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def _parse(grammar: pp.ParserElement, text: str) -> pp.ParseResults:
    if not text.strip():
        raise ParseError("empty element", len(text) + 1, text)
    try:
        return grammar.parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        raise ParseError(str(exc.msg), exc.loc + 1, text) from None


def _terms(key: pp.ParserElement, text: str) -> list[tuple[Fraction, object]]:
    if text.strip() == "0":
        return []
    return [
        (coeff if sign == "+" else -coeff, term)
        for sign, coeff, term in _parse(_combination(key), text)
    ]


def _no_arity(text: str) -> ParseError:
    return ParseError("zero has no arity", 1, text)


def parse_bracket_word(text: str) -> BracketWord:
    """A single bracket word, e.g. "{d2.d1(1),2,3,4}"."""
    return _parse(_WORD, text)[0]


def parse_lie(text: str) -> Element:
    """A combination of label words, normalized into the right-normed basis."""
    result: Element | None = None
    for coeff, word in _terms(_WORD, text):
        term = normalize(word) * coeff
        result = term if result is None else result + term
    if result is None:
        raise _no_arity(text)
    return result


def parse_word_tuple(text: str) -> WordTuple:
    return _parse(_WORD_TUPLE, text)[0]


def parse_words(text: str, operad: WordOperad = D_INF) -> Element:
    """
    A combination of word tuples in O, D∞ or Q.

    Raises:
        ParseError: On malformed text
        ContextError: If a tuple is not an element of the operad, e.g. d0 outside Q
    """
    terms = _terms(_WORD_TUPLE, text)
    if not terms:
        raise _no_arity(text)
    arity = terms[0][1].arity
    out: dict[WordTuple, Fraction] = {}
    for coeff, key in terms:
        operad.validate_key(key)
        out[key] = out.get(key, Fraction(0)) + coeff
    return Element(operad, arity, out)


def parse_hadamard(text: str, context: HadamardOperad = LIE_D) -> Element:
    """Keys "l#w" or derived brackets such as "{d1(1),2}" in Lie⊗D∞ (or Lie⊗Q)."""
    key = pp.Group(_WORD + pp.Opt(pp.Suppress("#") - _WORD_TUPLE))
    result: Element | None = None
    for coeff, parts in _terms(key, text):
        if len(parts) == 1:
            term = derived_bracket(parts[0], context)
        else:
            slots = context.right.validate_key(parts[1])
            right = Element(context.right, slots.arity, {slots: 1})
            term = tensor_elements(context, normalize(parts[0]), right)
        result = term * coeff if result is None else result + term * coeff
    if result is None:
        raise _no_arity(text)
    return result


def parse_tree(text: str) -> Element:
    """A combination of tree monomials, e.g. "T2(T2(1,2),3) - T2(1,2)@2:T2(1,2)"."""
    result: Element | None = None
    for coeff, parts in _terms(_TREE_KEY, text):
        term = parts[0]
        for slot, inner in parts[1:]:
            term = compose_partial(SHLEIB, term, slot, inner)
        result = term * coeff if result is None else result + term * coeff
    if result is None:
        raise _no_arity(text)
    return result


def parse_shape(text: str) -> PlanarTree:
    """Planar shapes written with leaves "∙" or ".", e.g. "((..).)"."""
    return _parse(_SHAPE, text)[0]


def parse_corollas(text: str) -> CorollaMultiset:
    """ "c2:1,c3:1" → one c_2 and one c_3."""
    counts: dict[int, int] = {}
    for entry in _parse(_COROLLAS, text):
        if entry.arity in counts:
            raise ParseError(f"c{entry.arity} given twice", entry.loc + 1, text)
        counts[entry.arity] = entry.count
    multiset = CorollaMultiset.from_counts(counts)
    if multiset.total == 0:
        raise ParseError("no corollas given", 1, text)
    return multiset


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def render(x: Element) -> str:
    """Canonical text form."""
    return x.text()


def to_payload(x: Element) -> ElementPayload:
    return ElementPayload(
        arity=x.arity,
        terms=[
            TermPayload(key=x.operad.key_text(key), coeff=format_scalar(coeff))
            for key, coeff in x.sorted_terms()
        ],
    )
