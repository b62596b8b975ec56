"""Word-tuple operads: O, Q, the deformation operad D∞ and the permutation operad.

An element of O(n) is a combination of n-tuples of words in the odd derivation
letters d_1, d_2, …; Q uses the single letter d_0 with d_0d_0 = 0. A word in a
slot is read outermost letter first, so its last letter acts first. D∞ is the
weight-zero part of O, with the differential ∂ coming from [d_0, d_n] +
Σ_{i+j=n} d_i d_j = 0.
"""

from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import comb, factorial, prod

from operad_forge.core.cache import memoize
from operad_forge.core.config import get_settings
from operad_forge.core.errors import (
    ArgumentError,
    ContextError,
    ResourceLimitError,
    VerificationError,
)
from operad_forge.core.logging import get_logger
from operad_forge.core.validators import validate_arity, validate_nonnegative
from operad_forge.services.exact import (
    Permutation,
    all_permutations,
    koszul_sign,
    matrix_from_images,
    permute_sequence,
    rank,
    row_basis,
    sign_power,
)
from operad_forge.services.operad import (
    Element,
    Operad,
    SuspendedOperad,
    add_into,
    basis_element,
    compose_partial,
    symmetric_action,
)
from operad_forge.services.trees import compositions

logger = get_logger(__name__)

Word = tuple[int, ...]


# ---------------------------------------------------------------------------
# Word tuples
# ---------------------------------------------------------------------------


def word_text(word: Word) -> str:
    return ".".join(f"d{k}" for k in word) if word else "1"


@dataclass(frozen=True, order=True)
class WordTuple:
    """(w_1, …, w_n): one derivation word per input slot."""

    slots: tuple[Word, ...]

    def __post_init__(self):
        if not self.slots:
            raise ArgumentError("a word tuple needs at least one slot")
        slots = tuple(tuple(word) for word in self.slots)
        for word in slots:
            for letter in word:
                if isinstance(letter, bool) or not isinstance(letter, int) or letter < 0:
                    raise ArgumentError(f"invalid derivation letter {letter!r}")
        object.__setattr__(self, "slots", slots)

    @classmethod
    def empty(cls, n: int) -> "WordTuple":
        validate_arity(n)
        return cls(tuple(() for _ in range(n)))

    @property
    def arity(self) -> int:
        return len(self.slots)

    @property
    def degree(self) -> int:
        return sum(len(word) for word in self.slots)

    @property
    def weight(self) -> int:
        """Σ k over letters d_k, plus 1 − n."""
        return sum(sum(word) for word in self.slots) + 1 - self.arity

    def letters(self) -> Counter:
        return Counter(letter for word in self.slots for letter in word)

    def text(self) -> str:
        return "|".join(word_text(word) for word in self.slots)

    def __str__(self) -> str:
        return self.text()


def apply_letter(letter: int, slots: Sequence[Word]) -> dict[tuple[Word, ...], int]:
    """d(u_1, …, u_m) = Σ_s (−1)^{|u_1|+…+|u_{s−1}|} (…, d·u_s, …)."""
    out: dict[tuple[Word, ...], int] = {}
    running = 0
    slots = tuple(slots)
    for s, word in enumerate(slots):
        replaced = slots[:s] + ((letter,) + word,) + slots[s + 1 :]
        add_into(out, replaced, sign_power(running))
        running += len(word)
    return out


def apply_word(word: Word, slots: Sequence[Word]) -> dict[tuple[Word, ...], int]:
    """Distribute a word over the slots by the Leibniz rule, innermost letter first."""
    current: dict[tuple[Word, ...], int] = {tuple(slots): 1}
    for letter in reversed(word):
        following: dict[tuple[Word, ...], int] = {}
        for state, coeff in current.items():
            for image, c in apply_letter(letter, state).items():
                add_into(following, image, coeff * c)
        current = following
    return current


def differential_word(word: Word) -> dict[Word, int]:
    """∂ on one slot: a graded derivation with ∂d_n = −Σ_{i+j=n} d_i d_j."""
    out: dict[Word, int] = {}
    for position, n in enumerate(word):
        for i in range(1, n):
            image = word[:position] + (i, n - i) + word[position + 1 :]
            add_into(out, image, -sign_power(position))
    return out


# ---------------------------------------------------------------------------
# Word-tuple operads
# ---------------------------------------------------------------------------


class WordOperad(Operad):
    """Shared composition and action rules for O, D∞ and Q."""

    def key_arity(self, key: WordTuple) -> int:
        return key.arity

    def degree(self, key: WordTuple) -> int:
        return key.degree

    def admits(self, key: WordTuple) -> bool:
        return True

    def validate_key(self, key: WordTuple) -> WordTuple:
        """
        Raises:
            ContextError: If the key uses letters this operad does not have
        """
        if not self.admits(key):
            raise ContextError(f"{key.text()} is not an element of {self.name}")
        return key

    def compose_keys(self, p: WordTuple, i: int, q: WordTuple):
        tail = sum(len(word) for word in p.slots[i:])
        sign = sign_power(q.degree * tail)
        out: dict[WordTuple, int] = {}
        for expanded, c in apply_word(p.slots[i - 1], q.slots).items():
            key = WordTuple(p.slots[: i - 1] + expanded + p.slots[i:])
            if self.admits(key):
                add_into(out, key, sign * c)
        return out

    def act_key(self, sigma: Permutation, key: WordTuple):
        tau = sigma.inverse()
        sign = koszul_sign(tau, [len(word) for word in key.slots])
        return {WordTuple(permute_sequence(tau, key.slots)): sign}

    def unit_key(self) -> WordTuple:
        return WordTuple(((),))

    def key_text(self, key: WordTuple) -> str:
        return key.text()

    def sort_key(self, key: WordTuple):
        return (key.degree, key.slots)


class OOperad(WordOperad):
    """O: words in d_1, d_2, … over commutative products, any weight."""

    name = "O"

    def admits(self, key: WordTuple) -> bool:
        return all(letter >= 1 for word in key.slots for letter in word)

    def basis(self, n: int, degree: int | None = None) -> list[WordTuple]:
        raise ContextError("O(n) is infinite-dimensional; use the weight-zero part D∞")


class DeformationOperad(OOperad):
    """D∞: the weight-zero part of O, with the differential ∂."""

    name = "D∞"
    has_differential = True

    def admits(self, key: WordTuple) -> bool:
        return super().admits(key) and key.weight == 0

    def basis(self, n: int, degree: int | None = None) -> list[WordTuple]:
        return basis_D(n, degree)

    def differential_key(self, key: WordTuple):
        out: dict[WordTuple, int] = {}
        running = 0
        for s, word in enumerate(key.slots):
            for image, c in differential_word(word).items():
                slots = key.slots[:s] + (image,) + key.slots[s + 1 :]
                add_into(out, WordTuple(slots), sign_power(running) * c)
            running += len(word)
        return out


class QOperad(WordOperad):
    """Q: the letter d_0 over commutative products, d_0d_0 = 0."""

    name = "Q"

    def admits(self, key: WordTuple) -> bool:
        return all(word in ((), (0,)) for word in key.slots)

    def basis(self, n: int, degree: int | None = None) -> list[WordTuple]:
        validate_arity(n)
        keys = [WordTuple(slots) for slots in product(((), (0,)), repeat=n)]
        if degree is not None:
            keys = [k for k in keys if k.degree == degree]
        return sorted(keys, key=self.sort_key)


class SPermOperad(QOperad):
    """(Q^{n−1}(n)): the top-degree part of Q, a model of sΛPerm."""

    name = "sΛPerm"

    def admits(self, key: WordTuple) -> bool:
        return super().admits(key) and key.degree == key.arity - 1

    def basis(self, n: int, degree: int | None = None) -> list[WordTuple]:
        if degree is not None and degree != n - 1:
            return []
        return basis_sperm(n)


O = OOperad()
D_INF = DeformationOperad()
Q = QOperad()
SPERM = SPermOperad()


def compose_partial_o(p: Element, i: int, q: Element) -> Element:
    """p ∘_i q in O (or D∞ for weight-zero inputs)."""
    return compose_partial(p.operad, p, i, q)


def word_element(operad: WordOperad, *slots: Word, coeff: int = 1) -> Element:
    key = operad.validate_key(WordTuple(tuple(slots)))
    return Element(operad, key.arity, {key: coeff})


# ---------------------------------------------------------------------------
# D∞: bases, profiles and dimensions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LambdaProfile:
    """Letter multiplicities (λ_1, λ_2, …) of d_1, d_2, …; trailing zeros dropped."""

    multiplicities: tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.multiplicities)
        for m in values:
            validate_nonnegative(m, "multiplicity")
        while values and values[-1] == 0:
            values = values[:-1]
        object.__setattr__(self, "multiplicities", values)

    @classmethod
    def of_key(cls, key: WordTuple) -> "LambdaProfile":
        counts = key.letters()
        top = max(counts, default=0)
        return cls(tuple(counts.get(k, 0) for k in range(1, top + 1)))

    @property
    def a(self) -> int:
        """Number of letters, the degree."""
        return sum(self.multiplicities)

    @property
    def letter_sum(self) -> int:
        return sum(i * m for i, m in enumerate(self.multiplicities, start=1))

    def check(self, n: int) -> None:
        """
        Raises:
            ArgumentError: If Σ i·λ_i != n − 1
        """
        if self.letter_sum != n - 1:
            raise ArgumentError(
                f"profile {self.text(n)} has letter sum {self.letter_sum}, expected {n - 1}"
            )

    def text(self, n: int | None = None) -> str:
        width = max(len(self.multiplicities), (n or 1) - 1)
        values = list(self.multiplicities) + [0] * (width - len(self.multiplicities))
        return "(" + ",".join(str(v) for v in values) + ")"

    def __str__(self) -> str:
        return self.text()


def profiles(n: int, a: int | None = None) -> list[LambdaProfile]:
    """All profiles with Σ i·λ_i = n − 1 (and Σ λ_i = a when given)."""
    validate_arity(n)
    found: list[LambdaProfile] = []

    def walk(part: int, remaining: int, prefix: list[int]) -> None:
        if part > n - 1:
            if remaining == 0:
                found.append(LambdaProfile(tuple(prefix)))
            return
        for m in range(remaining // part + 1):
            walk(part + 1, remaining - m * part, prefix + [m])

    if n == 1:
        found.append(LambdaProfile(()))
    else:
        walk(1, n - 1, [])
    if a is not None:
        found = [p for p in found if p.a == a]
    return sorted(found, key=lambda p: (p.a, p.multiplicities))


@memoize("deform.basis_D")
def _basis_D(n: int, a: int) -> tuple[WordTuple, ...]:
    keys: list[WordTuple] = []
    for letters in compositions(n - 1, a):
        for placement in combinations_with_replacement(range(n), a):
            slots: list[list[int]] = [[] for _ in range(n)]
            for letter, slot in zip(letters, placement):
                slots[slot].append(letter)
            keys.append(WordTuple(tuple(tuple(word) for word in slots)))
    return tuple(sorted(keys, key=D_INF.sort_key))


def basis_D(n: int, a: int | None = None) -> list[WordTuple]:
    """
    Basis of D∞(n), or of its degree-a part D^a∞(n).

    Tuples of words in d_1, d_2, … with a letters whose indices sum to n − 1;
    D∞(1) is spanned by the empty tuple.
    """
    validate_arity(n)
    if n == 1:
        return [WordTuple(((),))] if a in (None, 0) else []
    degrees = range(1, n) if a is None else [a] if 1 <= a <= n - 1 else []
    return [key for d in degrees for key in _basis_D(n, d)]


def dim_delta(profile: LambdaProfile, n: int) -> int:
    """
    dim Δ^{(λ)}(n) = C(n+a−1, a)·a!/(λ_1!…λ_{n−1}!).

    Raises:
        ArgumentError: If the profile's letter sum is not n − 1
    """
    validate_arity(n)
    profile.check(n)
    a = profile.a
    return comb(n + a - 1, a) * factorial(a) // prod(factorial(m) for m in profile.multiplicities)


def dim_formula(n: int, a: int) -> int:
    """
    dim D^a∞(n) = C(n+a−1, a)·C(n−2, a−1).

    Raises:
        ArgumentError: Unless n >= 2 and 1 <= a <= n−1
    """
    validate_arity(n, 2)
    if not 1 <= a <= n - 1:
        raise ArgumentError(f"degree a must be in 1..{n - 1}, got {a}", details={"a": a})
    return comb(n + a - 1, a) * comb(n - 2, a - 1)


def dim_D(n: int) -> int:
    validate_arity(n)
    if n == 1:
        return 1
    return sum(dim_formula(n, a) for a in range(1, n))


def deformation_schroeder(n: int) -> int:
    """
    s(n) = dim D∞(n) / n.

    Raises:
        VerificationError: If the quotient is not an integer
    """
    total = dim_D(n)
    if total % n:
        raise VerificationError(f"dim D∞({n}) = {total} is not divisible by {n}")
    return total // n


# ---------------------------------------------------------------------------
# ∂ and homology
# ---------------------------------------------------------------------------


def differential_D(x: Element) -> Element:
    """∂x for x in D∞."""
    if not isinstance(x.operad, DeformationOperad):
        raise ContextError(f"∂ acts on D∞, got an element of {x.operad.name}")
    out: dict[WordTuple, int] = {}
    for key, coeff in x.terms.items():
        for image, c in D_INF.differential_key(key).items():
            add_into(out, image, coeff * c)
    return Element(D_INF, x.arity, out)


@memoize("deform.differential_matrix")
def differential_matrix(n: int, a: int):
    """∂: D^a∞(n) → D^{a+1}∞(n), one row per source basis element."""
    columns = {key: c for c, key in enumerate(basis_D(n, a + 1))}
    images = (D_INF.differential_key(key) for key in basis_D(n, a))
    return matrix_from_images(images, columns, what=f"∂ on D^{a}({n})")


def homology_D(n: int, bound: int | None = None) -> tuple[int, ...]:
    """
    (dim H^1, …, dim H^{n−1}) of (D∞(n), ∂).

    Raises:
        ArgumentError: If n < 2
        ResourceLimitError: If n exceeds the arity bound (OPERAD_FORGE_MAX_ARITY by default)
    """
    validate_arity(n, 2)
    limit = bound if bound is not None else get_settings().max_arity
    if n > limit:
        raise ResourceLimitError(
            f"homology_D({n}) exceeds the arity bound {limit}", details={"n": n, "bound": limit}
        )
    dims = [len(basis_D(n, a)) for a in range(1, n)]
    ranks = [rank(differential_matrix(n, a)) for a in range(1, n - 1)]
    homology = []
    for a in range(1, n):
        outgoing = ranks[a - 1] if a <= n - 2 else 0
        incoming = ranks[a - 2] if a >= 2 else 0
        homology.append(dims[a - 1] - outgoing - incoming)
    logger.info("homology.done", n=n, dims=dims, ranks=ranks, homology=homology)
    return tuple(homology)


def differential_square_defects(n: int) -> list[WordTuple]:
    """Basis elements of D∞(n) with ∂∂ != 0 (empty when ∂ squares to zero)."""
    offenders = []
    for key in basis_D(n):
        if differential_D(differential_D(basis_element(D_INF, key))):
            offenders.append(key)
    return offenders


def generated_by_degree_one(n: int) -> tuple[int, int]:
    """
    (rank of the span of iterated compositions of D^1∞ generators in D∞(n), dim D∞(n)).

    Arity m is built from the spanning rows of arity < m by grafting one
    generator d_{k−1} (in any slot) at any input.
    """
    validate_arity(n)
    spans: dict[int, list[Element]] = {1: [D_INF.unit()]}
    for m in range(2, n + 1):
        columns = {key: c for c, key in enumerate(basis_D(m))}
        images = []
        for k in range(2, m + 1):
            generators = [basis_element(D_INF, key) for key in basis_D(k, 1)]
            for x in spans[m - k + 1]:
                for i in range(1, x.arity + 1):
                    for g in generators:
                        images.append(compose_partial(D_INF, x, i, g).terms)
        matrix = matrix_from_images(images, columns, what=f"span of D^1 composites in D({m})")
        keys = list(columns)
        spans[m] = [
            Element(D_INF, m, {keys[c]: v for c, v in row.items()}) for row in row_basis(matrix)
        ]
    achieved = len(spans[n])
    logger.debug("deform.generated", n=n, rank=achieved, dim=dim_D(n))
    return achieved, dim_D(n)


# ---------------------------------------------------------------------------
# Perm and sΛPerm
# ---------------------------------------------------------------------------


def basis_sperm(n: int) -> list[WordTuple]:
    """The n tuples with d_0 in every slot but one."""
    validate_arity(n)
    return [
        WordTuple(tuple(() if s == empty else (0,) for s in range(n)))
        for empty in reversed(range(n))
    ]


class PermOperad(Operad):
    """Perm: e_j in arity n marks input j; degree 0."""

    name = "Perm"

    def key_arity(self, key: tuple[int, int]) -> int:
        return key[0]

    def degree(self, key) -> int:
        return 0

    def basis(self, n: int, degree: int | None = None) -> list[tuple[int, int]]:
        validate_arity(n)
        return [(n, j) for j in range(1, n + 1)] if degree in (None, 0) else []

    def compose_keys(self, p, i, q):
        (n, j), (m, k) = p, q
        if j == i:
            return {(n + m - 1, i + k - 1): 1}
        return {(n + m - 1, j + m - 1 if j > i else j): 1}

    def act_key(self, sigma, key):
        n, j = key
        return {(n, sigma(j)): 1}

    def unit_key(self):
        return (1, 1)

    def key_text(self, key) -> str:
        return f"e{key[1]}"

    def sort_key(self, key):
        return key


PERM = PermOperad()
SUSPENDED_PERM = SuspendedOperad(PERM, 1)


def sperm_image(key: tuple[int, int]) -> Element:
    """e_j ↦ (−1)^{j+1+C(n−1,2)} (d_0 in every slot except j)."""
    n, j = key
    slots = tuple(() if s == j else (0,) for s in range(1, n + 1))
    return Element(SPERM, n, {WordTuple(slots): sign_power(j + 1 + comb(n - 1, 2))})


def sperm_map(x: Element) -> Element:
    """Linear extension of sperm_image to ΛPerm."""
    out = SPERM.zero(x.arity)
    for key, coeff in x.terms.items():
        out = out + coeff * sperm_image(key)
    return out


def sperm_isomorphism_defects(max_n: int = 4) -> list[str]:
    """
    Witnesses where ΛPerm → (Q^{n−1}(n)) fails to commute with ∘_i or the
    symmetric action, over arities with n + m − 1 <= max_n.
    """
    witnesses: list[str] = []
    for n in range(1, max_n + 1):
        for p in SUSPENDED_PERM.basis(n):
            x = basis_element(SUSPENDED_PERM, p)
            for sigma in all_permutations(n):
                lhs = sperm_map(symmetric_action(SUSPENDED_PERM, sigma, x))
                rhs = symmetric_action(SPERM, sigma, sperm_map(x))
                if lhs != rhs:
                    witnesses.append(f"action {sigma} on e{p[1]} in arity {n}")
            for m in range(1, max_n - n + 2):
                for q in SUSPENDED_PERM.basis(m):
                    y = basis_element(SUSPENDED_PERM, q)
                    for i in range(1, n + 1):
                        lhs = sperm_map(compose_partial(SUSPENDED_PERM, x, i, y))
                        rhs = compose_partial(SPERM, sperm_map(x), i, sperm_map(y))
                        if lhs != rhs:
                            witnesses.append(f"e{p[1]} o_{i} e{q[1]} in arities {n},{m}")
    return witnesses


def profile_dims(n: int) -> Mapping[LambdaProfile, int]:
    """Enumerated size of each Δ^{(λ)}(n) inside basis_D(n)."""
    tally: Counter = Counter(LambdaProfile.of_key(key) for key in basis_D(n))
    return dict(tally)
