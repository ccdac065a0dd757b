"""Finite connectivity spaces.

A space is a point count n together with the family of its connected
subsets.  The family must contain the empty set and be closed under the
union of any two members that meet; on a finite support this pairwise
closure is equivalent to closure under unions of arbitrary families with
a common point (induct on the family size, anchoring at a shared point),
which is what makes an O(|family|^2) validity check sound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import (
    CapacityError,
    DomainError,
    InputError,
    MAX_PAIR_ENUM_POINTS,
    bits,
    check_enum_support,
    check_pointmap,
    check_support,
    family_of,
    full_mask,
    image_mask,
    iter_masks,
    iter_submasks,
    mask_of,
    sorted_family,
)


def validate_structure(n: int, fam: Iterable[int]) -> bool:
    """True iff the family is a connectivity structure on n points."""
    check_support(n)
    fam = frozenset(fam)
    limit = full_mask(n)
    for m in fam:
        if not isinstance(m, int) or m < 0 or m > limit:
            raise InputError(f"subset {m!r} out of range for support of size {n}")
    if 0 not in fam:
        return False
    members = sorted(fam)
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if a & b and (a | b) not in fam:
                return False
    return True


def generate(n: int, fam: Iterable[int], integral: bool = False) -> frozenset[int]:
    """Least connectivity structure containing the family.

    With ``integral`` set, every singleton is thrown in as well.
    """
    check_support(n)
    limit = full_mask(n)
    seed = set()
    for m in fam:
        if not isinstance(m, int) or m < 0 or m > limit:
            raise InputError(f"subset {m!r} out of range for support of size {n}")
        seed.add(m)
    seed.add(0)
    if integral:
        seed.update(1 << i for i in range(n))
    closed: set[int] = set(seed)
    fresh = set(seed)
    while fresh:
        additions = set()
        for a in fresh:
            for b in closed:
                if a & b:
                    u = a | b
                    if u not in closed:
                        additions.add(u)
        additions -= closed
        closed |= additions
        fresh = additions
    return frozenset(closed)


@dataclass(frozen=True)
class Space:
    """A finite connectivity space: support size and connected family."""

    n: int
    connected: frozenset[int]

    def __post_init__(self) -> None:
        check_support(self.n)
        object.__setattr__(self, "connected", frozenset(self.connected))
        if not validate_structure(self.n, self.connected):
            raise InputError("family is not a connectivity structure (missing empty set or an intersecting union)")

    @classmethod
    def build(cls, n: int, subsets: Iterable[Iterable[int]], integral: bool = False) -> "Space":
        """Space from index lists; generates the closure rather than rejecting."""
        return cls(n, generate(n, family_of(subsets, n), integral))

    def is_connected(self, mask: int) -> bool:
        return mask in self.connected

    def subsets(self) -> list[tuple[int, ...]]:
        return sorted_family(self.connected)

    def __repr__(self) -> str:  # compact, index-based
        return f"Space({self.n}, {self.subsets()!r})"


def desintegrated(n: int) -> Space:
    return Space(n, frozenset({0}))


def discrete_integral(n: int) -> Space:
    return Space(n, frozenset({0}) | {1 << i for i in range(n)})


def grossier(n: int) -> Space:
    check_enum_support(n, "the indiscrete structure")
    return Space(n, frozenset(iter_masks(n)))


def is_integral(sp: Space) -> bool:
    return all((1 << i) in sp.connected for i in range(sp.n))


def generated_space(n: int, fam: Iterable[int], integral: bool = False) -> Space:
    return Space(n, generate(n, fam, integral))


def connected_components(sp: Space) -> tuple[tuple[int, ...], int]:
    """Inclusion-maximal nonempty connected parts, plus the absent part."""
    comps = components_within(sp, full_mask(sp.n))
    present = 0
    for c in comps:
        present |= c
    return comps, full_mask(sp.n) & ~present


def components_within(sp: Space, area: int) -> tuple[int, ...]:
    """Maximal nonempty connected parts contained in a given subset."""
    inside = [k for k in sp.connected if k and (k & ~area) == 0]
    maximal = [k for k in inside if not any(k != m and (k & ~m) == 0 for m in inside)]
    return tuple(sorted(maximal, key=lambda m: (m & -m).bit_length()))


def induced(sp: Space, area: int) -> Space:
    """Restriction to a subset, points re-indexed in ascending original order."""
    if area & ~full_mask(sp.n):
        raise InputError("subset exceeds the support")
    positions = bits(area)
    where = {p: i for i, p in enumerate(positions)}
    fam = set()
    for k in sp.connected:
        if (k & ~area) == 0:
            fam.add(mask_of((where[p] for p in bits(k)), len(positions)))
    return Space(len(positions), frozenset(fam))


def initial_structure(pointmap: tuple[int, ...], target: Space, n: int) -> Space:
    """Largest structure on n points making the map connective into the target."""
    check_enum_support(n, "the initial structure")
    pointmap = check_pointmap(pointmap, n, target.n)
    fam = frozenset(k for k in iter_masks(n) if image_mask(pointmap, k) in target.connected)
    return Space(n, fam)


def final_structure(pointmap: tuple[int, ...], source: Space, m: int, integral: bool = False) -> Space:
    """Smallest structure on m points making the map connective from the source."""
    check_support(m)
    pointmap = check_pointmap(pointmap, source.n, m)
    images = {image_mask(pointmap, k) for k in source.connected}
    return Space(m, generate(m, images, integral))


@dataclass(frozen=True)
class PartialEquiv:
    """Pairwise-disjoint nonempty classes over an n-point support."""

    n: int
    classes: tuple[int, ...]

    def __post_init__(self) -> None:
        check_support(self.n)
        seen = 0
        limit = full_mask(self.n)
        cls = []
        for c in self.classes:
            if not isinstance(c, int) or c <= 0 or c > limit:
                raise InputError(f"class {c!r} must be a nonempty subset of the support")
            if c & seen:
                raise InputError("classes must be pairwise disjoint")
            seen |= c
            cls.append(c)
        object.__setattr__(self, "classes", tuple(sorted(cls, key=lambda m: (m & -m).bit_length())))

    @classmethod
    def build(cls, n: int, classes: Iterable[Iterable[int]]) -> "PartialEquiv":
        return cls(n, tuple(mask_of(c, n) for c in classes))

    @property
    def present(self) -> int:
        out = 0
        for c in self.classes:
            out |= c
        return out

    @property
    def absent(self) -> int:
        return full_mask(self.n) & ~self.present

    def class_of(self, point: int) -> int | None:
        bit = 1 << point
        for i, c in enumerate(self.classes):
            if c & bit:
                return i
        return None


def class_map(pe: PartialEquiv) -> tuple[int, ...]:
    """Point-to-class surjection; only valid when classes cover the support."""
    if pe.present != full_mask(pe.n):
        raise InputError("classes do not cover the support")
    return tuple(pe.class_of(p) for p in range(pe.n))


def quotient(sp: Space, pe: PartialEquiv) -> Space:
    """Quotient space along a total partition, class indices by least member."""
    if pe.n != sp.n:
        raise InputError("partition support does not match the space")
    smap = class_map(pe)
    return final_structure(smap, sp, len(pe.classes))


def quotient_partial(sp: Space, pe: PartialEquiv) -> Space:
    """Quotient by a partial equivalence: restrict to the present part, then collapse."""
    if pe.n != sp.n:
        raise InputError("partial equivalence support does not match the space")
    present = pe.present
    positions = bits(present)
    where = {p: i for i, p in enumerate(positions)}
    restricted = induced(sp, present)
    rclasses = tuple(mask_of((where[p] for p in bits(c)), len(positions)) for c in pe.classes)
    return quotient(restricted, PartialEquiv(len(positions), rclasses))


def structural_quotient(sp: Space, pe: PartialEquiv) -> Space:
    """Same support as sp; a part is connected iff its class image is connected in the quotient."""
    check_enum_support(sp.n, "the structural quotient")
    q = quotient(sp, pe)
    smap = class_map(pe)
    fam = frozenset(a for a in iter_masks(sp.n) if image_mask(smap, a) in q.connected)
    return Space(sp.n, fam)


def saturate(sp: Space) -> Space:
    """A part is connected iff it sits inside some connected part of sp."""
    check_enum_support(sp.n, "saturation")
    fam: set[int] = set()
    for k in sp.connected:
        for sub in iter_submasks(k):
            fam.add(sub)
    return Space(sp.n, frozenset(fam))


def pe_of_structure(sp: Space) -> PartialEquiv:
    """Partial equivalence whose classes are the connected components."""
    comps, _ = connected_components(sp)
    return PartialEquiv(sp.n, comps)


def space_from_partial_equiv(n: int, pe: PartialEquiv) -> Space:
    """Connected = contained in one class (the empty set included)."""
    if pe.n != n:
        raise InputError("partial equivalence support mismatch")
    fam: set[int] = {0}
    for c in pe.classes:
        for sub in iter_submasks(c):
            fam.add(sub)
    return Space(n, frozenset(fam))


@dataclass(frozen=True)
class SeparationDevice:
    """Unordered pairs of disjoint nonempty separator subsets."""

    n: int
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        check_support(self.n)
        limit = full_mask(self.n)
        norm = set()
        for pair in self.pairs:
            s, t = pair
            if not (0 < s <= limit and 0 < t <= limit):
                raise InputError("separators must be nonempty subsets of the support")
            if s & t:
                raise InputError("separators in a pair must be disjoint")
            norm.add((s, t) if s <= t else (t, s))
        object.__setattr__(self, "pairs", frozenset(norm))

    @classmethod
    def build(cls, n: int, pairs: Iterable[tuple[Iterable[int], Iterable[int]]]) -> "SeparationDevice":
        return cls(n, frozenset((mask_of(s, n), mask_of(t, n)) for s, t in pairs))


def separated(dev: SeparationDevice, area: int) -> bool:
    """True iff some pair covers the part and both separators meet it."""
    for s, t in dev.pairs:
        if (area & ~(s | t)) == 0 and (area & s) and (area & t):
            return True
    return False


def space_from_device(n: int, dev: SeparationDevice) -> Space:
    """Integral space of the parts no pair separates."""
    check_enum_support(n, "building a space from a device")
    if dev.n != n:
        raise InputError("device support mismatch")
    fam = frozenset(a for a in iter_masks(n) if not separated(dev, a))
    return Space(n, fam)


def canonical_device(sp: Space) -> SeparationDevice:
    """All disjoint nonempty pairs whose joint components fall wholly on one side.

    Defined for integral spaces; building a space back from this device
    recovers the original structure.
    """
    if not is_integral(sp):
        raise DomainError("the canonical device is only defined for integral spaces")
    if sp.n > MAX_PAIR_ENUM_POINTS:
        raise CapacityError(
            f"canonical device enumerates 3^{sp.n} pairs; supports above {MAX_PAIR_ENUM_POINTS} points are rejected"
        )
    pairs = set()
    for a in range(1, 1 << sp.n):
        rest = full_mask(sp.n) & ~a
        for b in iter_submasks(rest):
            if b == 0 or b < a:
                continue
            ok = True
            for comp in components_within(sp, a | b):
                if (comp & ~a) != 0 and (comp & ~b) != 0:
                    ok = False
                    break
            if ok:
                pairs.add((a, b))
    return SeparationDevice(sp.n, frozenset(pairs))


def lattice_meet(n: int, spaces: Iterable[Space]) -> Space:
    """Intersection of structures; the empty meet is the indiscrete top."""
    spaces = list(spaces)
    for sp in spaces:
        if sp.n != n:
            raise InputError("all spaces in a meet must share the support size")
    if not spaces:
        return grossier(n)
    fam = frozenset.intersection(*(sp.connected for sp in spaces))
    return Space(n, fam)


def lattice_join(n: int, spaces: Iterable[Space], integral: bool = False) -> Space:
    """Structure generated by the union of the given structures."""
    fam: set[int] = set()
    for sp in spaces:
        if sp.n != n:
            raise InputError("all spaces in a join must share the support size")
        fam |= sp.connected
    return Space(n, generate(n, fam, integral))


def morphism_check(pointmap: tuple[int, ...], source: Space, target: Space) -> bool:
    """True iff every connected image is connected."""
    pointmap = check_pointmap(pointmap, source.n, target.n)
    return all(image_mask(pointmap, k) in target.connected for k in source.connected)


def graph_to_space(n: int, edges: Iterable[tuple[int, int]]) -> Space:
    """Integral space whose connected parts are the graph-connected subsets."""
    check_enum_support(n, "graph connectivity")
    adj = [0] * n
    for a, b in edges:
        if not (0 <= a < n and 0 <= b < n):
            raise InputError(f"edge ({a}, {b}) out of range")
        if a != b:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    fam = {0}
    for m in iter_masks(n):
        if m == 0:
            continue
        seen = m & -m
        while True:
            grown = seen
            for i in bits(seen):
                grown |= adj[i] & m
            if grown == seen:
                break
            seen = grown
        if seen == m:
            fam.add(m)
    return Space(n, frozenset(fam))
