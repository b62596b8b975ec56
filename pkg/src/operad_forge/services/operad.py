"""Operadic substrate: elements, partial composition, symmetric action, free
operads on planar trees, Hadamard products and operadic suspension.

An operad is described by its basis keys per arity plus three rules on keys:
partial composition, symmetric action and (optionally) a differential.
Elements are finite rational combinations of keys; every operation here
extends a key rule bilinearly.

Sign conventions (all operads built in this package):
    - the symmetric action relabels input j as σ(j);
    - p ∘_i q substitutes q into input i; signs come from evaluating on graded
      arguments with the Koszul rule, so parallel compositions commute up to
      (−1)^{|q||r|};
    - Hadamard: (p⊗q) ∘_i (p'⊗q') = (−1)^{|q||p'|} (p∘_i p')⊗(q∘_i q').
"""

from abc import ABC, abstractmethod
from collections.abc import Callable, Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import count, product

from operad_forge.core.cache import memoize
from operad_forge.core.errors import ArgumentError, ContextError
from operad_forge.core.logging import get_logger
from operad_forge.core.validators import validate_arity, validate_lengths, validate_slot
from operad_forge.services.exact import (
    Permutation,
    all_permutations,
    as_scalar,
    block_permutation,
    format_scalar,
    sign_power,
)
from operad_forge.services.trees import LabeledTree, PlanarTree, enumerate_trees, graft

logger = get_logger(__name__)

Key = Hashable
Terms = dict[Key, Fraction]


def add_into(target: Terms, key: Key, coeff) -> None:
    """target[key] += coeff, dropping zeros."""
    value = target.get(key, Fraction(0)) + coeff
    if value:
        target[key] = value
    else:
        target.pop(key, None)


# ---------------------------------------------------------------------------
# Operad interface
# ---------------------------------------------------------------------------


class Operad(ABC):
    """A graded operad with an explicit canonical basis in each arity."""

    name: str = "operad"
    has_differential: bool = False

    @abstractmethod
    def key_arity(self, key: Key) -> int: ...

    @abstractmethod
    def degree(self, key: Key) -> int: ...

    @abstractmethod
    def basis(self, n: int, degree: int | None = None) -> list[Key]: ...

    @abstractmethod
    def compose_keys(self, p: Key, i: int, q: Key) -> Mapping[Key, int | Fraction]: ...

    @abstractmethod
    def act_key(self, sigma: Permutation, key: Key) -> Mapping[Key, int | Fraction]: ...

    @abstractmethod
    def unit_key(self) -> Key: ...

    @abstractmethod
    def key_text(self, key: Key) -> str: ...

    def differential_key(self, key: Key) -> Mapping[Key, int | Fraction]:
        raise ContextError(f"{self.name} carries no differential")

    def sort_key(self, key: Key):
        return self.key_text(key)

    def dim(self, n: int, degree: int | None = None) -> int:
        return len(self.basis(n, degree))

    def element(self, terms: Mapping[Key, int | Fraction] | Iterable, arity: int | None = None):
        """Build an element from {key: coeff} or an iterable of keys (coefficient 1)."""
        if not isinstance(terms, Mapping):
            terms = {key: 1 for key in terms}
        if arity is None:
            if not terms:
                raise ArgumentError("arity is required for the zero element")
            arity = self.key_arity(next(iter(terms)))
        return Element(self, arity, terms)

    def zero(self, n: int) -> "Element":
        return Element(self, n, {})

    def unit(self) -> "Element":
        return Element(self, 1, {self.unit_key(): 1})

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class Element:
    """A finite rational combination of basis keys of one operad and arity."""

    __slots__ = ("operad", "arity", "terms")

    def __init__(self, operad: Operad, arity: int, terms: Mapping[Key, int | Fraction]):
        clean: Terms = {}
        for key, coeff in terms.items():
            if operad.key_arity(key) != arity:
                raise ArgumentError(
                    f"key {operad.key_text(key)} has arity {operad.key_arity(key)}, "
                    f"expected {arity}"
                )
            coeff = as_scalar(coeff)
            if coeff:
                clean[key] = clean.get(key, Fraction(0)) + coeff
        self.operad = operad
        self.arity = arity
        self.terms = {k: v for k, v in clean.items() if v}

    # arithmetic ------------------------------------------------------------

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise ContextError(f"cannot combine an element with {type(other).__name__}")
        if other.operad is not self.operad and other.operad.name != self.operad.name:
            raise ContextError(f"cannot mix {self.operad.name} and {other.operad.name} elements")
        if other.arity != self.arity:
            raise ArgumentError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            add_into(out, key, coeff)
        return Element(self.operad, self.arity, out)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element(self.operad, self.arity, {k: -v for k, v in self.terms.items()})

    def __mul__(self, scalar) -> "Element":
        c = as_scalar(scalar)
        return Element(self.operad, self.arity, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.operad.name == other.operad.name
            and self.arity == other.arity
            and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.operad.degree(k) for k in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        """Degree of a homogeneous nonzero element."""
        degrees = self.degrees()
        if len(degrees) != 1:
            raise ArgumentError("degree of a zero or inhomogeneous element")
        return next(iter(degrees))

    def sorted_terms(self) -> list[tuple[Key, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: self.operad.sort_key(kv[0]))

    def coefficient(self, key: Key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def text(self) -> str:
        """Canonical text "c · key + c · key - ..." or "0"."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for index, (key, coeff) in enumerate(self.sorted_terms()):
            sign = "-" if coeff < 0 else "+"
            body = f"{format_scalar(abs(coeff))} · {self.operad.key_text(key)}"
            if index == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"Element({self.operad.name}, {self.arity}, {self.text()})"


# ---------------------------------------------------------------------------
# Operations on elements
# ---------------------------------------------------------------------------


def _same_operad(op: Operad, *elements: Element) -> None:
    for x in elements:
        if x.operad is not op and x.operad.name != op.name:
            raise ContextError(f"element of {x.operad.name} used with {op.name}")


def compose_partial(op: Operad, p: Element, i: int, q: Element) -> Element:
    """
    p ∘_i q, extended bilinearly from op.compose_keys.

    Raises:
        ArgumentError: If i is outside 1..arity(p)
        ContextError: If p or q belongs to another operad
    """
    _same_operad(op, p, q)
    validate_slot(i, p.arity)
    out: Terms = {}
    for pk, pc in p.terms.items():
        for qk, qc in q.terms.items():
            for key, c in op.compose_keys(pk, i, qk).items():
                add_into(out, key, pc * qc * c)
    return Element(op, p.arity + q.arity - 1, out)


def symmetric_action(op: Operad, sigma: Permutation, p: Element) -> Element:
    """
    σ·p, relabeling input j as σ(j).

    Raises:
        ArgumentError: If σ and p have different sizes
    """
    _same_operad(op, p)
    validate_lengths(p.arity, sigma.size, "symmetric_action")
    if sigma.is_identity():
        return p
    out: Terms = {}
    for key, coeff in p.terms.items():
        for image, c in op.act_key(sigma, key).items():
            add_into(out, image, coeff * c)
    return Element(op, p.arity, out)


def gamma(op: Operad, p: Element, qs: Sequence[Element]) -> Element:
    """Full composition γ(p; q_1..q_k) = ((p ∘_1 q_1) ∘_{1+a_1} q_2) …"""
    validate_lengths(p.arity, len(qs), "gamma")
    result = p
    slot = 1
    for q in qs:
        result = compose_partial(op, result, slot, q)
        slot += q.arity
    return result


def differential(op: Operad, p: Element) -> Element:
    """
    The operad's differential applied to p.

    Raises:
        ContextError: If op has no differential
    """
    _same_operad(op, p)
    if not op.has_differential:
        raise ContextError(f"{op.name} carries no differential")
    out: Terms = {}
    for key, coeff in p.terms.items():
        for image, c in op.differential_key(key).items():
            add_into(out, image, coeff * c)
    return Element(op, p.arity, out)


def basis_element(op: Operad, key: Key) -> Element:
    return Element(op, op.key_arity(key), {key: 1})


# ---------------------------------------------------------------------------
# Hadamard product
# ---------------------------------------------------------------------------


class HadamardOperad(Operad):
    """P⊗Q: keys are pairs, diagonal action, additive degree."""

    def __init__(self, left: Operad, right: Operad):
        self.left = left
        self.right = right
        self.name = f"{left.name}⊗{right.name}"
        self.has_differential = left.has_differential or right.has_differential

    def key_arity(self, key) -> int:
        return self.left.key_arity(key[0])

    def degree(self, key) -> int:
        return self.left.degree(key[0]) + self.right.degree(key[1])

    def basis(self, n: int, degree: int | None = None) -> list:
        keys = [
            (a, b)
            for a in self.left.basis(n)
            for b in self.right.basis(n)
            if degree is None or self.left.degree(a) + self.right.degree(b) == degree
        ]
        return sorted(keys, key=self.sort_key)

    def compose_keys(self, p, i, q):
        (a, b), (c, d) = p, q
        sign = sign_power(self.right.degree(b) * self.left.degree(c))
        left = self.left.compose_keys(a, i, c)
        if not left:
            return {}
        right = self.right.compose_keys(b, i, d)
        out: Terms = {}
        for lk, lc in left.items():
            for rk, rc in right.items():
                add_into(out, (lk, rk), sign * lc * rc)
        return out

    def act_key(self, sigma, key):
        a, b = key
        left = self.left.act_key(sigma, a)
        right = self.right.act_key(sigma, b)
        out: Terms = {}
        for lk, lc in left.items():
            for rk, rc in right.items():
                add_into(out, (lk, rk), lc * rc)
        return out

    def unit_key(self):
        return (self.left.unit_key(), self.right.unit_key())

    def differential_key(self, key):
        a, b = key
        out: Terms = {}
        if self.left.has_differential:
            for lk, lc in self.left.differential_key(a).items():
                add_into(out, (lk, b), lc)
        if self.right.has_differential:
            sign = sign_power(self.left.degree(a))
            for rk, rc in self.right.differential_key(b).items():
                add_into(out, (a, rk), sign * rc)
        return out

    def key_text(self, key) -> str:
        return f"{self.left.key_text(key[0])}#{self.right.key_text(key[1])}"

    def sort_key(self, key):
        return (self.left.sort_key(key[0]), self.right.sort_key(key[1]))


def hadamard(left: Operad, right: Operad) -> HadamardOperad:
    return HadamardOperad(left, right)


def tensor_elements(op: HadamardOperad, x: Element, y: Element) -> Element:
    """x⊗y as an element of the Hadamard product."""
    validate_lengths(x.arity, y.arity, "tensor_elements")
    out: Terms = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            add_into(out, (a, b), ca * cb)
    return Element(op, x.arity, out)


# ---------------------------------------------------------------------------
# Operadic suspension
# ---------------------------------------------------------------------------


class SuspendedOperad(Operad):
    """ΛP (shift=+1) or Λ^{-1}P (shift=−1).

    Same keys as P; degree shifted by shift·(n−1); action twisted by sgn(σ);
    for p of arity n and q of arity m,
        p ∘_i q  ↦  (−1)^{(i−1)(m−1) + (n−1)|q|_P} p ∘_i q,
    with an extra (n−1)(m−1) in the exponent when shift=−1.
    """

    def __init__(self, base: Operad, shift: int = 1):
        if shift not in (1, -1):
            raise ArgumentError("suspension shift must be +1 or -1")
        self.base = base
        self.shift = shift
        self.name = ("Λ" if shift == 1 else "Λ⁻¹") + base.name
        self.has_differential = base.has_differential

    def key_arity(self, key) -> int:
        return self.base.key_arity(key)

    def degree(self, key) -> int:
        return self.base.degree(key) + self.shift * (self.base.key_arity(key) - 1)

    def basis(self, n: int, degree: int | None = None) -> list:
        base_degree = None if degree is None else degree - self.shift * (n - 1)
        return self.base.basis(n, base_degree)

    def compose_keys(self, p, i, q):
        n, m = self.base.key_arity(p), self.base.key_arity(q)
        exponent = (i - 1) * (m - 1) + (n - 1) * self.base.degree(q)
        if self.shift == -1:
            exponent += (n - 1) * (m - 1)
        sign = sign_power(exponent)
        return {k: sign * c for k, c in self.base.compose_keys(p, i, q).items()}

    def act_key(self, sigma, key):
        s = sigma.sign()
        return {k: s * c for k, c in self.base.act_key(sigma, key).items()}

    def unit_key(self):
        return self.base.unit_key()

    def differential_key(self, key):
        return self.base.differential_key(key)

    def key_text(self, key) -> str:
        return self.base.key_text(key)

    def sort_key(self, key):
        return self.base.sort_key(key)


def suspend(base: Operad, shift: int = 1) -> Operad:
    """ΛP, or Λ^{-1}P for shift=−1; Λ^{-1}ΛP and ΛΛ^{-1}P collapse back to P."""
    if isinstance(base, SuspendedOperad) and base.shift == -shift:
        return base.base
    return SuspendedOperad(base, shift)


# ---------------------------------------------------------------------------
# Free operads on planar trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSpec:
    """Generators with free S_k-orbits: names per arity and a degree per name."""

    names: Mapping[int, tuple[str, ...]]
    degrees: Mapping[str, int]

    @classmethod
    def corollas(cls, max_arity: int, name: str = "T", degree: int = 1) -> "GeneratorSpec":
        """One generator per arity 2..max_arity, all of the same degree."""
        return cls({k: (name,) for k in range(2, max_arity + 1)}, {name: degree})

    def arities(self) -> list[int]:
        return sorted(k for k, names in self.names.items() if names)


def _decorated_shapes(shape: PlanarTree, spec: GeneratorSpec) -> list[PlanarTree]:
    if shape.is_leaf:
        return [shape]
    names = spec.names.get(shape.arity, ())
    child_options = [_decorated_shapes(child, spec) for child in shape.children]
    return [
        PlanarTree(tuple(children), name)
        for name in names
        for children in product(*child_options)
    ]


def free_operad_basis(
    spec: GeneratorSpec, n: int, vertices: int | None = None
) -> list[LabeledTree]:
    """
    All decorated planar trees with leaves labeled 1..n.

    With one generator per arity k >= 2 this has n!·s(n) elements.
    """
    validate_arity(n)
    if n == 1:
        return [LabeledTree.standard(PlanarTree.leaf())] if vertices in (None, 0) else []
    shapes: list[PlanarTree] = []
    for shape in enumerate_trees(n):
        if vertices is not None and shape.vertices != vertices:
            continue
        if any(k not in spec.names for k in shape.arity_profile()):
            continue
        shapes.extend(_decorated_shapes(shape, spec))
    perms = all_permutations(n)
    keys = [LabeledTree(shape, sigma) for shape in shapes for sigma in perms]
    return sorted(keys, key=_free_sort_key)


def _free_sort_key(key: LabeledTree):
    return (key.shape.sort_key(), key.labels.images)


def tree_text(shape: PlanarTree, labels: Sequence[int]) -> str:
    """Nested text: "T2(T2(1,2),3)"."""
    it = iter(labels)

    def render(node: PlanarTree) -> str:
        if node.is_leaf:
            return str(next(it))
        inner = ",".join(render(child) for child in node.children)
        return f"{node.decoration or 'T'}{node.arity}({inner})"

    return render(shape)


class FreeOperad(Operad):
    """The free operad on generators with free symmetric orbits.

    A basis key (t, λ) is λ applied to the composite of t's generators with
    standard labels. Composition grafts with the operadic relabeling and the
    sign (−1)^{|s|·N}, N being the degree of t's vertices lying wholly to the
    right of the grafting leaf. The action relabels leaves without sign.
    """

    _serial = count(1)

    def __init__(
        self,
        spec: GeneratorSpec,
        name: str = "Free",
        generator_differential: Callable[[str, int], Mapping[LabeledTree, int]] | None = None,
    ):
        self.spec = spec
        self.name = name
        self._gen_diff = generator_differential
        self.has_differential = generator_differential is not None
        # keys the shared differential cache per instance
        self._tag = f"{name}#{next(self._serial)}"

    def key_arity(self, key: LabeledTree) -> int:
        return key.arity

    def degree(self, key: LabeledTree) -> int:
        return self.shape_degree(key.shape)

    def shape_degree(self, shape: PlanarTree) -> int:
        return sum(self.spec.degrees[node.decoration] for node, _, _ in shape.vertex_spans())

    def basis(self, n: int, degree: int | None = None) -> list[LabeledTree]:
        keys = free_operad_basis(self.spec, n)
        if degree is None:
            return keys
        return [k for k in keys if self.degree(k) == degree]

    def compose_keys(self, p: LabeledTree, i: int, q: LabeledTree):
        position = p.leaf_of_label(i)
        right_degree = sum(
            self.spec.degrees[node.decoration]
            for node, first, _ in p.shape.vertex_spans()
            if first > position
        )
        sign = sign_power(self.degree(q) * right_degree)
        return {graft(p, i, q): sign}

    def act_key(self, sigma: Permutation, key: LabeledTree):
        return {key.relabel(sigma): 1}

    def unit_key(self) -> LabeledTree:
        return LabeledTree.standard(PlanarTree.leaf())

    def key_text(self, key: LabeledTree) -> str:
        return tree_text(key.shape, key.labels.images)

    def sort_key(self, key: LabeledTree):
        return _free_sort_key(key)

    def generator(self, k: int, name: str | None = None, labels: Sequence[int] | None = None):
        """The generator of arity k as an element (labels in planar order)."""
        validate_arity(k, 2, "k")
        names = self.spec.names.get(k, ())
        if not names:
            raise ArgumentError(f"{self.name} has no generator of arity {k}")
        name = name or names[0]
        sigma = Permutation(tuple(labels) if labels else tuple(range(1, k + 1)))
        return basis_element(self, LabeledTree(PlanarTree.corolla(k, name), sigma))

    def standard_element(self, shape: PlanarTree) -> Element:
        return basis_element(self, LabeledTree.standard(shape))

    def decompose(self, shape: PlanarTree) -> tuple[Element, list[Element]]:
        """(root generator, standard subtrees) with shape = γ(root; subtrees)."""
        root = self.standard_element(PlanarTree.corolla(shape.arity, shape.decoration))
        return root, [self.standard_element(child) for child in shape.children]

    def differential_key(self, key: LabeledTree):
        if self._gen_diff is None:
            raise ContextError(f"{self.name} carries no differential")
        if key.shape.is_leaf:
            return {}
        standard = self._standard_differential(key.shape)
        if key.labels.is_identity():
            return standard.terms
        return symmetric_action(self, key.labels, standard).terms

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self._tag}>"

    @memoize("operad.free_differential")
    def _standard_differential(self, shape: PlanarTree) -> Element:
        root, subtrees = self.decompose(shape)
        k = shape.arity
        generator_image = Element(self, k, self._gen_diff(shape.decoration, k))
        result = gamma(self, generator_image, subtrees)
        running = self.spec.degrees[shape.decoration]
        for j, child in enumerate(shape.children):
            if not child.is_leaf:
                d_sub = differential(self, subtrees[j])
                if d_sub:
                    replaced = list(subtrees)
                    replaced[j] = d_sub
                    result = result + sign_power(running) * gamma(self, root, replaced)
            running += self.shape_degree(child)
        return result


# ---------------------------------------------------------------------------
# Axiom checks
# ---------------------------------------------------------------------------


def check_unit(op: Operad, p: Element) -> bool:
    """p ∘_i 1 = p for every i, and 1 ∘_1 p = p."""
    one = op.unit()
    left = compose_partial(op, one, 1, p) == p
    return left and all(compose_partial(op, p, i, one) == p for i in range(1, p.arity + 1))


def sequential_defect(op: Operad, p: Element, i: int, q: Element, j: int, r: Element) -> Element:
    """(p∘_i q)∘_{i+j−1} r − p∘_i(q∘_j r)."""
    lhs = compose_partial(op, compose_partial(op, p, i, q), i + j - 1, r)
    rhs = compose_partial(op, p, i, compose_partial(op, q, j, r))
    return lhs - rhs


def parallel_defect(op: Operad, p: Element, i: int, q: Element, k: int, r: Element) -> Element:
    """(p∘_i q)∘_{k+m−1} r − (−1)^{|q||r|} (p∘_k r)∘_i q for i < k."""
    if not i < k:
        raise ArgumentError("parallel composition needs i < k")
    m = q.arity
    lhs = compose_partial(op, compose_partial(op, p, i, q), k + m - 1, r)
    rhs = compose_partial(op, compose_partial(op, p, k, r), i, q)
    if q and r:
        rhs = rhs * sign_power(q.degree * r.degree)
    return lhs - rhs


def equivariance_defect(op: Operad, sigma: Permutation, p: Element, i: int, q: Element) -> Element:
    """(σ·p)∘_{σ(i)} q − σ'·(p∘_i q), σ' the block permutation of σ at i."""
    lhs = compose_partial(op, symmetric_action(op, sigma, p), sigma(i), q)
    rhs = symmetric_action(
        op, block_permutation(sigma, i, q.arity), compose_partial(op, p, i, q)
    )
    return lhs - rhs


def inner_equivariance_defect(
    op: Operad, p: Element, i: int, tau: Permutation, q: Element
) -> Element:
    """p∘_i(τ·q) − τ''·(p∘_i q), τ'' acting by τ on the block i..i+m−1."""
    n, m = p.arity, q.arity
    images = list(range(1, i)) + [i - 1 + tau(k) for k in range(1, m + 1)]
    images += list(range(i + m, n + m))
    lifted = Permutation(tuple(images))
    lhs = compose_partial(op, p, i, symmetric_action(op, tau, q))
    rhs = symmetric_action(op, lifted, compose_partial(op, p, i, q))
    return lhs - rhs


def leibniz_defect(op: Operad, p: Element, i: int, q: Element) -> Element:
    """d(p∘_i q) − (dp∘_i q + (−1)^{|p|} p∘_i dq) for homogeneous p."""
    lhs = differential(op, compose_partial(op, p, i, q))
    rhs = compose_partial(op, differential(op, p), i, q)
    if p:
        rhs = rhs + sign_power(p.degree) * compose_partial(op, p, i, differential(op, q))
    return lhs - rhs

