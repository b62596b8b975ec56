"""Exact scalars, permutations, Koszul signs and sparse rational linear algebra.

Every routine here is pure; values are immutable once built. Rank and kernel
computations run on sympy DomainMatrix: fraction-free Gauss-Jordan over ZZ
after clearing row denominators, with a GF(p) full-rank certificate as a fast path.
"""

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations, permutations
from math import lcm

from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from operad_forge.core.config import get_settings
from operad_forge.core.errors import ArgumentError, ParseError, ResourceLimitError
from operad_forge.core.logging import get_logger
from operad_forge.core.validators import (
    validate_lengths,
    validate_nonnegative,
    validate_permutation,
    validate_slot,
)

logger = get_logger(__name__)

Scalar = Fraction
SparseVector = dict[int, Fraction]

# Large prime for the modular rank certificate
MODULUS = 2_147_483_647


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------


def as_scalar(value: int | Fraction | str) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ArgumentError(f"not a scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"invalid rational {text!r}", 1, text) from None
    raise ArgumentError(f"not a scalar: {value!r}")


def format_scalar(c: Fraction) -> str:
    """Render as "p" or "p/q"."""
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def sign_power(exponent: int) -> int:
    """(−1)^exponent."""
    return -1 if exponent % 2 else 1


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..n}, stored by images (σ(1), ..., σ(n))."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", validate_permutation(self.images))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = images[b - 1], images[a - 1]
        return cls(tuple(images))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    def compose(self, other: "Permutation") -> "Permutation":
        """self ∘ other, i.e. j ↦ self(other(j))."""
        validate_lengths(self.size, other.size, "compose")
        return Permutation(tuple(self.images[k - 1] for k in other.images))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.compose(other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for j, image in enumerate(self.images, start=1):
            inv[image - 1] = j
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(image == j for j, image in enumerate(self.images, start=1))

    def inversions(self) -> Iterator[tuple[int, int]]:
        """Position pairs (a, b), a < b, with σ(a) > σ(b)."""
        imgs = self.images
        for a in range(len(imgs)):
            for b in range(a + 1, len(imgs)):
                if imgs[a] > imgs[b]:
                    yield a + 1, b + 1

    def sign(self) -> int:
        return sign_power(sum(1 for _ in self.inversions()))

    def __str__(self) -> str:
        return "(" + ",".join(str(i) for i in self.images) + ")"


def all_permutations(n: int) -> list[Permutation]:
    """S_n in lexicographic order of images."""
    return [Permutation(p) for p in permutations(range(1, n + 1))]


def koszul_sign(perm: Permutation, degrees: Sequence[int]) -> int:
    """
    Sign of reordering homogeneous factors x_1..x_n into x_σ(1)..x_σ(n).

    Args:
        perm: The reordering σ
        degrees: Degrees of x_1..x_n

    Returns:
        +1 or −1: the product of (−1)^{|x_i||x_j|} over the pairs that cross

    Raises:
        ArgumentError: If len(degrees) differs from the size of perm
    """
    validate_lengths(perm.size, len(degrees), "koszul_sign")
    exponent = 0
    for a, b in perm.inversions():
        exponent += degrees[perm(a) - 1] * degrees[perm(b) - 1]
    return sign_power(exponent)


def unshuffles(p: int, q: int) -> list[Permutation]:
    """
    All (p, q)-unshuffles σ ∈ S_{p+q}: σ(1)<…<σ(p) and σ(p+1)<…<σ(p+q).

    Ordered lexicographically by the first block, so the identity comes first.
    """
    validate_nonnegative(p, "p")
    validate_nonnegative(q, "q")
    universe = range(1, p + q + 1)
    result = []
    for first in combinations(universe, p):
        chosen = set(first)
        rest = tuple(j for j in universe if j not in chosen)
        result.append(Permutation(first + rest))
    return result


def block_permutation(sigma: Permutation, i: int, m: int) -> Permutation:
    """
    The permutation of n+m−1 positions induced by σ ∈ S_n when slot i is
    expanded into a block of m consecutive positions.

    The block keeps its internal order and lands at σ(i); other images above
    σ(i) shift up by m−1.
    """
    validate_slot(i, sigma.size)
    target = sigma(i)

    def shifted(value: int) -> int:
        return value + m - 1 if value > target else value

    images: list[int] = []
    for j in range(1, sigma.size + 1):
        if j == i:
            images.extend(range(target, target + m))
        else:
            images.append(shifted(sigma(j)))
    return Permutation(tuple(images))


def permute_sequence(perm: Permutation, items: Sequence) -> tuple:
    """(x_σ(1), ..., x_σ(n))."""
    validate_lengths(perm.size, len(items), "permute_sequence")
    return tuple(items[k - 1] for k in perm.images)


# ---------------------------------------------------------------------------
# Sparse matrices
# ---------------------------------------------------------------------------


def check_cells(rows: int, cols: int, what: str = "matrix") -> None:
    """Raise ResourceLimitError when rows × cols exceeds OPERAD_FORGE_MAX_CELLS."""
    limit = get_settings().max_cells
    if rows * cols > limit:
        raise ResourceLimitError(
            f"{what} of {rows}×{cols} exceeds OPERAD_FORGE_MAX_CELLS={limit}",
            details={"rows": rows, "cols": cols, "max_cells": limit},
        )


@dataclass(frozen=True)
class SparseMatrix:
    """Finite (row, col) → Fraction association with no stored zeros."""

    rows: int
    cols: int
    entries: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        check_cells(self.rows, self.cols)
        clean: dict[tuple[int, int], Fraction] = {}
        for (r, c), value in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ArgumentError(f"entry ({r},{c}) outside {self.rows}×{self.cols}")
            value = as_scalar(value)
            if value:
                clean[(r, c)] = value
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, Fraction] | Sequence], cols: int | None = None):
        """Build from row dicts (col → value) or dense row lists."""
        entries: dict[tuple[int, int], Fraction] = {}
        width = 0
        for r, row in enumerate(rows):
            items = row.items() if isinstance(row, Mapping) else enumerate(row)
            if not isinstance(row, Mapping):
                width = max(width, len(row))
            for c, value in items:
                if value:
                    entries[(r, c)] = as_scalar(value)
                    width = max(width, c + 1)
        return cls(len(rows), cols if cols is not None else width, entries)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, {})

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def row_dicts(self) -> list[SparseVector]:
        result: list[SparseVector] = [{} for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            result[r][c] = value
        return result

    def to_dense(self) -> list[list[Fraction]]:
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            dense[r][c] = value
        return dense

    def __matmul__(self, vector: Mapping[int, Fraction]) -> SparseVector:
        out: SparseVector = {}
        for (r, c), value in self.entries.items():
            x = vector.get(c)
            if x:
                out[r] = out.get(r, Fraction(0)) + value * x
        return {r: v for r, v in out.items() if v}

    @property
    def nnz(self) -> int:
        return len(self.entries)


# ---------------------------------------------------------------------------
# Rank and kernel
# ---------------------------------------------------------------------------


def _integer_rows(m: SparseMatrix) -> dict[int, dict[int, int]]:
    """Nonzero rows, each scaled by the lcm of its denominators."""
    rows: dict[int, dict[int, int]] = {}
    for r, row in enumerate(m.row_dicts()):
        if row:
            scale = reduce(lcm, (v.denominator for v in row.values()), 1)
            rows[r] = {c: int(v * scale) for c, v in row.items()}
    return rows


def to_domain_matrix(m: SparseMatrix, domain: Domain = QQ) -> DomainMatrix:
    """
    The sparse DomainMatrix of m over QQ, or over ZZ after clearing row denominators.

    Row scaling preserves rank, row space and kernel.
    """
    if domain == ZZ:
        rows = {
            r: {c: ZZ(v) for c, v in row.items()} for r, row in _integer_rows(m).items()
        }
    else:
        rows = {
            r: {c: QQ(v.numerator, v.denominator) for c, v in row.items()}
            for r, row in enumerate(m.row_dicts())
            if row
        }
    return DomainMatrix(rows, (m.rows, m.cols), domain)


def _rref_den(m: SparseMatrix) -> tuple[dict[int, dict[int, Fraction]], int, tuple[int, ...]]:
    """Fraction-free Gauss-Jordan over ZZ: (rows by index, denominator, pivot columns)."""
    reduced, den, pivots = to_domain_matrix(m, ZZ).rref_den()
    rows = {
        i: {c: Fraction(int(v)) for c, v in row.items()}
        for i, row in reduced.to_sparse().rep.items()
    }
    return rows, int(den), tuple(pivots)


def rank_fraction_free(m: SparseMatrix) -> int:
    """Exact rank from the fraction-free reduced echelon form over the integers."""
    if not m.entries:
        return 0
    return len(_rref_den(m)[2])


def rank_mod_p(m: SparseMatrix, p: int = MODULUS) -> int:
    """Rank over GF(p) of the row-scaled integer matrix; never exceeds the rational rank."""
    field_p = GF(p)
    rows = {}
    for r, row in _integer_rows(m).items():
        reduced = {c: field_p(v % p) for c, v in row.items() if v % p}
        if reduced:
            rows[r] = reduced
    if not rows:
        return 0
    return DomainMatrix(rows, (m.rows, m.cols), field_p).rank()


def rank_rational(m: SparseMatrix) -> int:
    """Exact rank over QQ."""
    if not m.entries:
        return 0
    return to_domain_matrix(m, QQ).rank()


def rank(m: SparseMatrix) -> int:
    """
    Exact rank over the rationals.

    A full rank modulo a large prime certifies full rational rank (the rational
    rank can only be larger); otherwise fall back to fraction-free elimination.
    """
    bound = min(m.rows, m.cols)
    if bound == 0 or not m.entries:
        return 0
    modular = rank_mod_p(m)
    if modular == bound:
        logger.debug("rank.modular_certificate", rows=m.rows, cols=m.cols, rank=modular)
        return modular
    result = rank_fraction_free(m)
    logger.debug("rank.fraction_free", rows=m.rows, cols=m.cols, rank=result)
    return result


def row_basis(m: SparseMatrix) -> list[SparseVector]:
    """A basis of the row space: reduced echelon rows with unit pivots, in pivot order."""
    if not m.entries:
        return []
    rows, den, pivots = _rref_den(m)
    return [{c: v / den for c, v in rows[i].items()} for i in range(len(pivots))]


def kernel_basis(m: SparseMatrix) -> list[SparseVector]:
    """Basis of {x : m·x = 0}, one vector per free column, in column order."""
    if not m.entries:
        return [{c: Fraction(1)} for c in range(m.cols)]
    rows, den, pivots = _rref_den(m)
    pivot_set = set(pivots)
    basis: list[SparseVector] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vector: SparseVector = {free: Fraction(1)}
        for i, pc in enumerate(pivots):
            coeff = rows[i].get(free)
            if coeff:
                vector[pc] = -coeff / den
        basis.append(vector)
    return basis


def matrix_from_images(
    images: Iterable[Mapping], columns: Mapping, *, what: str = "matrix"
) -> SparseMatrix:
    """
    Rows are the images of basis elements written in the column basis.

    Args:
        images: One mapping key → coefficient per row
        columns: key → column index for the target basis

    Raises:
        ArgumentError: If an image has a key outside the column basis
    """
    entries: dict[tuple[int, int], Fraction] = {}
    count = 0
    for r, image in enumerate(images):
        count = r + 1
        for key, coeff in image.items():
            try:
                c = columns[key]
            except KeyError:
                raise ArgumentError(f"{what}: image key {key} outside target basis") from None
            entries[(r, c)] = as_scalar(coeff)
    return SparseMatrix(count, len(columns), entries)
