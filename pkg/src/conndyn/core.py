"""Bitmask plumbing shared by every module.

Finite point sets are index ranges 0..n-1 and subsets are integer bitmasks,
so set algebra is machine-word arithmetic and families of subsets are plain
frozensets of ints.  Supports are capped at 63 points; operations that have
to walk the full powerset carry a tighter cap.
"""

from __future__ import annotations

from typing import Iterable, Iterator

MAX_POINTS = 63
# cap for operations that enumerate all 2^n subsets of the support
MAX_ENUM_POINTS = 20
# cap for operations that enumerate all disjoint pairs (3^n of them)
MAX_PAIR_ENUM_POINTS = 12


class InputError(ValueError):
    """Malformed input: bad indices, mismatched supports, bad tables."""


class CapacityError(InputError):
    """Support size exceeds what exact enumeration is willing to do."""


class DomainError(ValueError):
    """Structurally well-formed input that violates an operation's precondition."""


def check_support(n: int) -> int:
    if not isinstance(n, int) or n < 0:
        raise InputError(f"support size must be a non-negative integer, got {n!r}")
    if n > MAX_POINTS:
        raise CapacityError(f"support size {n} exceeds the {MAX_POINTS}-point capacity")
    return n


def check_enum_support(n: int, what: str = "operation") -> int:
    check_support(n)
    if n > MAX_ENUM_POINTS:
        raise CapacityError(
            f"{what} enumerates 2^{n} subsets; supports above {MAX_ENUM_POINTS} points are rejected"
        )
    return n


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(indices: Iterable[int], n: int) -> int:
    """Bitmask of an index collection, validated against the support size."""
    m = 0
    for i in indices:
        if not isinstance(i, int) or i < 0 or i >= n:
            raise InputError(f"point index {i!r} out of range for support of size {n}")
        m |= 1 << i
    return m


def bits(mask: int) -> tuple[int, ...]:
    """Indices of the set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def iter_masks(n: int) -> Iterator[int]:
    """All subsets of an n-point support, the empty one first."""
    return iter(range(1 << n))


def iter_submasks(mask: int) -> Iterator[int]:
    """All submasks of a mask, including 0 and the mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def family_of(subsets: Iterable[Iterable[int]], n: int) -> frozenset[int]:
    return frozenset(mask_of(s, n) for s in subsets)


def sorted_family(fam: Iterable[int]) -> list[tuple[int, ...]]:
    """Family as index tuples in canonical (lexicographic) order."""
    return sorted(bits(m) for m in fam)


def image_mask(pointmap: tuple[int, ...], mask: int) -> int:
    """Direct image of a subset under a point map given as a tuple."""
    out = 0
    for i in bits(mask):
        out |= 1 << pointmap[i]
    return out


def check_pointmap(pointmap: tuple[int, ...], source: int, target: int) -> tuple[int, ...]:
    pointmap = tuple(pointmap)
    if len(pointmap) != source:
        raise InputError(f"point map has {len(pointmap)} entries, expected {source}")
    for v in pointmap:
        if not isinstance(v, int) or v < 0 or v >= target:
            raise InputError(f"point map value {v!r} out of range for target of size {target}")
    return pointmap
