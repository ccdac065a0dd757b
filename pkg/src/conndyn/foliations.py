"""Connective foliations: one support, an internal and an external structure.

Leaves are the connected components of the internal structure.  The set of
leaves carries two natural spaces: the induced one, where a set of leaves
is connected exactly when the union of its members is externally
connected, and the quotient one, obtained by collapsing the external
space along the leaf partition.  The induced space is always finer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import (
    InputError,
    bits,
    check_enum_support,
    check_pointmap,
    check_support,
    image_mask,
    iter_masks,
    mask_of,
)
from .spaces import (
    PartialEquiv,
    Space,
    components_within,
    pe_of_structure,
    quotient_partial,
    validate_structure,
)


@dataclass(frozen=True)
class Foliation:
    n: int
    internal: frozenset[int]
    external: frozenset[int]

    def __post_init__(self) -> None:
        check_support(self.n)
        object.__setattr__(self, "internal", frozenset(self.internal))
        object.__setattr__(self, "external", frozenset(self.external))
        if not validate_structure(self.n, self.internal):
            raise InputError("internal family is not a connectivity structure")
        if not validate_structure(self.n, self.external):
            raise InputError("external family is not a connectivity structure")

    @classmethod
    def build(cls, n: int, internal: Iterable[Iterable[int]], external: Iterable[Iterable[int]]) -> "Foliation":
        return cls(
            n,
            frozenset(mask_of(s, n) for s in internal) | {0},
            frozenset(mask_of(s, n) for s in external) | {0},
        )

    @property
    def internal_space(self) -> Space:
        return Space(self.n, self.internal)

    @property
    def external_space(self) -> Space:
        return Space(self.n, self.external)


def is_regular(fol: Foliation) -> bool:
    """Regular means every internally connected part is externally connected."""
    return fol.internal <= fol.external


def leaves(fol: Foliation) -> tuple[int, ...]:
    """Connected components of the internal structure, by least member."""
    return components_within(fol.internal_space, (1 << fol.n) - 1)


def domain(fol: Foliation) -> int:
    out = 0
    for leaf in leaves(fol):
        out |= leaf
    return out


def leaf_space_induced(fol: Foliation) -> Space:
    """Space on the leaves: a leaf set is connected iff its union is
    externally connected."""
    lvs = leaves(fol)
    check_enum_support(len(lvs), "the induced leaf space")
    fam = set()
    for combo in iter_masks(len(lvs)):
        union = 0
        for i in bits(combo):
            union |= lvs[i]
        if union in fol.external:
            fam.add(combo)
    return Space(len(lvs), frozenset(fam))


def leaf_space_quotient(fol: Foliation) -> Space:
    """Quotient of the external space by the leaf partition."""
    return quotient_partial(fol.external_space, pe_of_structure(fol.internal_space))


def foliation_morphism_check(
    pointmap: tuple[int, ...], fol: Foliation, fol2: Foliation, strict: bool = False
) -> bool:
    """Connective for the internal and the external structure; with the
    strict flag, every leaf must land exactly on a leaf."""
    pointmap = check_pointmap(pointmap, fol.n, fol2.n)
    for k in fol.internal:
        if image_mask(pointmap, k) not in fol2.internal:
            return False
    for k in fol.external:
        if image_mask(pointmap, k) not in fol2.external:
            return False
    if strict:
        target_leaves = set(leaves(fol2))
        for leaf in leaves(fol):
            if image_mask(pointmap, leaf) not in target_leaves:
                return False
    return True


def leaf_partition(fol: Foliation) -> PartialEquiv:
    return pe_of_structure(fol.internal_space)
