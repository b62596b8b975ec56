"""Reusable validation utilities for operation arguments."""

from collections.abc import Sequence

from operad_forge.core.errors import ArgumentError


def validate_arity(n: int, minimum: int = 1, name: str = "n") -> int:
    """
    Validate an arity argument.

    Args:
        n: Arity to validate
        minimum: Smallest admissible arity
        name: Argument name for error messages

    Returns:
        The arity as an int

    Raises:
        ArgumentError: If n is not an integer or is below minimum
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise ArgumentError(f"{name} must be an integer, got {n!r}")
    if n < minimum:
        raise ArgumentError(f"{name} must be >= {minimum}, got {n}", details={name: n})
    return n


def validate_slot(i: int, arity: int) -> int:
    """
    Validate a 1-based input slot of an operation of the given arity.

    Raises:
        ArgumentError: If i is outside 1..arity
    """
    if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= arity:
        raise ArgumentError(
            f"slot index {i!r} out of range 1..{arity}", details={"i": i, "arity": arity}
        )
    return i


def validate_permutation(images: Sequence[int]) -> tuple[int, ...]:
    """
    Validate a 1-indexed permutation given by its images.

    Args:
        images: Sequence (σ(1), ..., σ(n))

    Returns:
        The images as a tuple

    Raises:
        ArgumentError: If the images are not exactly 1..n in some order
    """
    values = tuple(images)
    if sorted(values) != list(range(1, len(values) + 1)):
        raise ArgumentError(f"not a permutation of 1..{len(values)}: {list(values)}")
    return values


def validate_lengths(expected: int, actual: int, what: str) -> None:
    """
    Validate that two sizes agree.

    Raises:
        ArgumentError: On mismatch
    """
    if expected != actual:
        raise ArgumentError(
            f"{what}: expected length {expected}, got {actual}",
            details={"expected": expected, "actual": actual},
        )


def validate_nonnegative(value: int, name: str) -> int:
    """Validate a nonnegative integer argument."""
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ArgumentError(f"{name} must be a nonnegative integer, got {value!r}")
    return value
