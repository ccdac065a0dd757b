"""Connective representations and their interplay with foliations.

A representation sends every point of its object space to a nonempty part
of its ambient space so that unions of images over connected parts stay
connected.  Representations compose by unioning images over intermediate
points, with the singleton embedding as two-sided unit.

The bridge to foliations runs in both directions: ``phi`` turns a
representation into a foliation whose internal structure is generated by
selected parts of the images, and ``r_down``/``r_up`` turn a foliation
into a representation of its induced or quotient leaf space.  Restricted
to regular foliations and to clear, distinct representations of integral
objects, ``r_down`` and ``phi`` with the identity selector are adjoint;
``adjunction_verify`` checks the whole bijection by brute enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import (
    CapacityError,
    DomainError,
    InputError,
    MAX_ENUM_POINTS,
    bits,
    check_enum_support,
    check_pointmap,
    full_mask,
    image_mask,
    iter_masks,
    iter_submasks,
    mask_of,
)
from .foliations import (
    Foliation,
    foliation_morphism_check,
    is_regular,
    leaf_space_induced,
    leaf_space_quotient,
    leaves,
)
from .spaces import Space, generate, is_integral, morphism_check

ADJUNCTION_MAX_POINTS = 6

SELECTORS = ("D", "K", "G")


def selector_le(a: str, b: str) -> bool:
    return SELECTORS.index(a) <= SELECTORS.index(b)


def _selector_parts(selector: str, space: Space, area: int) -> set[int]:
    """Subsets of the area that the functorial selector declares connected."""
    if selector == "D":
        return {0}
    if selector == "K":
        return {k for k in space.connected if (k & ~area) == 0}
    if selector == "G":
        if area.bit_count() > MAX_ENUM_POINTS:
            raise CapacityError("indiscrete selector enumerates all parts of an image; image too large")
        return set(iter_submasks(area))
    raise InputError(f"unknown structure selector {selector!r}")


@dataclass(frozen=True)
class Representation:
    """Point-to-nonempty-subset map between an object and an ambient space."""

    object_space: Space
    ambient: Space
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        if len(images) != self.object_space.n:
            raise InputError("one image per object point is required")
        limit = full_mask(self.ambient.n)
        for m in images:
            if not isinstance(m, int) or m < 0 or m > limit:
                raise InputError(f"image {m!r} out of range for the ambient support")
        object.__setattr__(self, "images", images)

    @classmethod
    def build(cls, obj: Space, amb: Space, images: Iterable[Iterable[int]]) -> "Representation":
        return cls(obj, amb, tuple(mask_of(img, amb.n) for img in images))

    def union_image(self, part: int) -> int:
        out = 0
        for i in bits(part):
            out |= self.images[i]
        return out


def rep_validate(rho: Representation, require_connected_images: bool = False) -> bool:
    """Images nonempty and unions over connected parts connected.

    The extra flag asks every single image to be connected as well, for
    representations meant to land among the connected nonempty parts.
    """
    if any(img == 0 for img in rho.images):
        return False
    if require_connected_images and any(img not in rho.ambient.connected for img in rho.images):
        return False
    return all(rho.union_image(k) in rho.ambient.connected for k in rho.object_space.connected)


def epsilon_rep(space: Space) -> Representation:
    """Unit representation of a space in itself by singletons."""
    return Representation(space, space, tuple(1 << i for i in range(space.n)))


def compose(tau: Representation, rho: Representation) -> Representation:
    """Kleisli composite: image of a point is the union of tau over rho's image."""
    if tau.object_space != rho.ambient:
        raise InputError("composition needs the ambient of the first factor to be the object of the second")
    images = tuple(tau.union_image(img) for img in rho.images)
    return Representation(rho.object_space, tau.ambient, images)


def is_clear(rho: Representation) -> bool:
    """Non-connected parts of the object have non-connected union images."""
    check_enum_support(rho.object_space.n, "the clarity scan")
    for a in iter_masks(rho.object_space.n):
        if a not in rho.object_space.connected and rho.union_image(a) in rho.ambient.connected:
            return False
    return True


def is_distinct(rho: Representation) -> bool:
    """Images of distinct points are disjoint."""
    for i, a in enumerate(rho.images):
        for b in rho.images[i + 1:]:
            if a & b:
                return False
    return True


def canonical_double(space: Space) -> Representation:
    """Clear and distinct representation of any space in an integral space
    on twice as many points, pairing x with {x, x+n}."""
    n = space.n
    images = tuple((1 << x) | (1 << (x + n)) for x in range(n))
    fam: set[int] = {0}
    fam.update(1 << i for i in range(2 * n))
    for k in space.connected:
        if k:
            fam.add(k | (k << n))
    ambient = Space(2 * n, frozenset(fam))
    return Representation(space, ambient, images)


@dataclass(frozen=True)
class RepMorphism:
    """A pair of point maps, object side and ambient side."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]


def rep_morphism_check(m: RepMorphism, rho: Representation, rho2: Representation) -> bool:
    """Both maps connective and every image pushed forward into the target image."""
    alpha = check_pointmap(m.alpha, rho.object_space.n, rho2.object_space.n)
    beta = check_pointmap(m.beta, rho.ambient.n, rho2.ambient.n)
    if not morphism_check(alpha, rho.object_space, rho2.object_space):
        return False
    if not morphism_check(beta, rho.ambient, rho2.ambient):
        return False
    for a in range(rho.object_space.n):
        if image_mask(beta, rho.images[a]) & ~rho2.images[alpha[a]]:
            return False
    return True


def compose_rep_morphisms(second: RepMorphism, first: RepMorphism) -> RepMorphism:
    return RepMorphism(
        tuple(second.alpha[a] for a in first.alpha),
        tuple(second.beta[b] for b in first.beta),
    )


def identity_rep_morphism(rho: Representation) -> RepMorphism:
    return RepMorphism(tuple(range(rho.object_space.n)), tuple(range(rho.ambient.n)))


def double_on_morphism(pointmap: tuple[int, ...], source: Space, target: Space) -> RepMorphism:
    """Action of the doubling construction on a connective point map."""
    if not morphism_check(pointmap, source, target):
        raise DomainError("the doubling construction acts on connective maps only")
    n, m = source.n, target.n
    beta = tuple(pointmap[x] if x < n else pointmap[x - n] + m for x in range(2 * n))
    return RepMorphism(tuple(pointmap), beta)


def phi(rho: Representation, gamma0: str = "K", gamma1: str = "K") -> Foliation:
    """Foliation of the ambient space generated by selected parts of the images.

    Points of the object whose singleton is connected contribute parts
    selected by ``gamma1``, the remaining points by ``gamma0``; the
    external structure is the ambient structure unchanged.
    """
    if gamma0 not in SELECTORS or gamma1 not in SELECTORS:
        raise InputError("selectors must be one of 'D', 'K', 'G'")
    if not selector_le(gamma0, gamma1):
        raise DomainError("the first selector must be at most the second")
    ambient = rho.ambient
    fam: set[int] = set()
    for a, img in enumerate(rho.images):
        sel = gamma1 if (1 << a) in rho.object_space.connected else gamma0
        fam |= _selector_parts(sel, ambient, img)
    internal = generate(ambient.n, fam)
    return Foliation(ambient.n, internal, ambient.connected)


def phi_on_morphism(m: RepMorphism) -> tuple[int, ...]:
    """The foliation morphism induced by a representation morphism is its
    ambient-side map."""
    return tuple(m.beta)


def r_down(fol: Foliation) -> Representation:
    """Each leaf, as a point of the induced leaf space, represents itself."""
    obj = leaf_space_induced(fol)
    ambient = fol.external_space
    rho = Representation(obj, ambient, leaves(fol))
    if rho.images and not (rep_validate(rho) and is_clear(rho) and is_distinct(rho)):
        raise RuntimeError("induced leaf representation failed its own guarantees")
    return rho


def r_down_on_morphism(pointmap: tuple[int, ...], fol: Foliation, fol2: Foliation) -> RepMorphism:
    """Object side sends a leaf to the internal component containing its image."""
    if not foliation_morphism_check(pointmap, fol, fol2):
        raise DomainError("not a foliation morphism")
    target_leaves = leaves(fol2)
    alpha = []
    for leaf in leaves(fol):
        img = image_mask(tuple(pointmap), leaf)
        hits = [i for i, tl in enumerate(target_leaves) if (img & ~tl) == 0]
        if len(hits) != 1:
            raise RuntimeError("leaf image not contained in a unique component")
        alpha.append(hits[0])
    return RepMorphism(tuple(alpha), tuple(pointmap))


def r_up(fol: Foliation) -> Representation:
    """Each leaf, as a point of the quotient leaf space, represents itself
    inside the integral structure generated by both structures together."""
    obj = leaf_space_quotient(fol)
    ambient = Space(fol.n, generate(fol.n, fol.internal | fol.external, integral=True))
    rho = Representation(obj, ambient, leaves(fol))
    if rho.images and not rep_validate(rho):
        raise RuntimeError("quotient leaf representation failed its own guarantees")
    return rho


def r_up_on_morphism(pointmap: tuple[int, ...], fol: Foliation, fol2: Foliation) -> RepMorphism:
    """Quotient-side analogue of the induced action; same leaf bookkeeping,
    ambient map taken pointwise."""
    down = r_down_on_morphism(pointmap, fol, fol2)
    return RepMorphism(down.alpha, tuple(pointmap))


def _require_rio(rho: Representation) -> None:
    if not (rep_validate(rho) and is_clear(rho) and is_distinct(rho) and is_integral(rho.object_space)):
        raise DomainError("representation must be valid, clear, distinct, with an integral object")


def adjunction_transpose_fwd(m: RepMorphism, fol: Foliation, rho: Representation) -> tuple[int, ...]:
    """From a morphism out of the induced leaf representation to a foliation
    morphism into the identity-selector foliation of the target."""
    if not is_regular(fol):
        raise DomainError("the foliation must be regular")
    if not rep_morphism_check(m, r_down(fol), rho):
        raise DomainError("not a representation morphism out of the leaf representation")
    beta = tuple(m.beta)
    if not foliation_morphism_check(beta, fol, phi(rho, "K", "K")):
        raise RuntimeError("transpose failed to be a foliation morphism")
    return beta


def adjunction_transpose_bwd(beta: tuple[int, ...], fol: Foliation, rho: Representation) -> RepMorphism:
    """From a foliation morphism into the identity-selector foliation back to
    the unique representation morphism with: each leaf goes to the point
    whose image contains the leaf's image."""
    if not is_regular(fol):
        raise DomainError("the foliation must be regular")
    _require_rio(rho)
    target = phi(rho, "K", "K")
    if not foliation_morphism_check(beta, fol, target):
        raise DomainError("not a foliation morphism into the image foliation")
    alpha = []
    for leaf in leaves(fol):
        img = image_mask(tuple(beta), leaf)
        hits = [a for a, ra in enumerate(rho.images) if (img & ~ra) == 0]
        if len(hits) != 1:
            raise DomainError("leaf image not contained in a unique representation image")
        alpha.append(hits[0])
    m = RepMorphism(tuple(alpha), tuple(beta))
    if not rep_morphism_check(m, r_down(fol), rho):
        raise RuntimeError("transpose failed the representation morphism check")
    return m


def _pointmaps(source: int, target: int) -> Iterator[tuple[int, ...]]:
    if source == 0:
        yield ()
        return
    if target == 0:
        return
    yield from itertools.product(range(target), repeat=source)


def connective_maps(source: Space, target: Space) -> list[tuple[int, ...]]:
    return [f for f in _pointmaps(source.n, target.n) if morphism_check(f, source, target)]


def hom_rep_morphisms(rho: Representation, rho2: Representation) -> list[RepMorphism]:
    """All representation morphisms, by brute force over both point maps."""
    out = []
    for alpha in _pointmaps(rho.object_space.n, rho2.object_space.n):
        for beta in _pointmaps(rho.ambient.n, rho2.ambient.n):
            m = RepMorphism(alpha, beta)
            if rep_morphism_check(m, rho, rho2):
                out.append(m)
    return out


def hom_foliation_morphisms(fol: Foliation, fol2: Foliation) -> list[tuple[int, ...]]:
    return [
        f
        for f in _pointmaps(fol.n, fol2.n)
        if foliation_morphism_check(f, fol, fol2)
    ]


def forced_alpha(beta: tuple[int, ...], leaf_list: tuple[int, ...], rho: Representation) -> tuple[int, ...] | None:
    """For a distinct target, the object-side map a morphism out of a leaf
    representation must use with a given ambient-side map, or None."""
    owner: dict[int, int] = {}
    for a, img in enumerate(rho.images):
        for p in bits(img):
            owner[p] = a
    alpha = []
    for leaf in leaf_list:
        img = image_mask(beta, leaf)
        points = bits(img)
        a = owner.get(points[0]) if points else None
        if a is None or (img & ~rho.images[a]):
            return None
        alpha.append(a)
    return tuple(alpha)


def hom_leaf_morphisms(down: Representation, rho: Representation) -> list[RepMorphism]:
    """Morphisms from a (clear, distinct) leaf representation into a distinct
    target: the object-side map is forced by the ambient-side one."""
    if not is_distinct(rho):
        raise DomainError("the forced-alpha enumeration needs a distinct target")
    out = []
    for beta in _pointmaps(down.ambient.n, rho.ambient.n):
        if not morphism_check(beta, down.ambient, rho.ambient):
            continue
        alpha = forced_alpha(beta, down.images, rho)
        if alpha is None:
            continue
        if morphism_check(alpha, down.object_space, rho.object_space):
            out.append(RepMorphism(alpha, beta))
    return out


def adjunction_verify(
    fol: Foliation,
    rho: Representation,
    fol_morphisms: Iterable[tuple[Foliation, tuple[int, ...]]] = (),
    rep_morphisms: Iterable[tuple[Representation, RepMorphism]] = (),
) -> dict:
    """Count both hom-sets, check the two transposes invert each other, and
    spot-check naturality squares against supplied morphisms.

    ``fol_morphisms`` are pairs (Z', g) with g a foliation morphism from a
    regular Z' into ``fol``; ``rep_morphisms`` are pairs (rho', h) with h a
    representation morphism from ``rho`` into a clear distinct rho' with
    integral object.
    """
    if not is_regular(fol):
        raise DomainError("the foliation must be regular")
    _require_rio(rho)
    for size in (fol.n, rho.object_space.n, rho.ambient.n):
        if size > ADJUNCTION_MAX_POINTS:
            raise CapacityError(
                f"adjunction enumeration is capped at {ADJUNCTION_MAX_POINTS} points per support"
            )
    down = r_down(fol)
    target = phi(rho, "K", "K")
    left = hom_leaf_morphisms(down, rho)
    right = hom_foliation_morphisms(fol, target)
    right_set = set(right)

    bijection = len(left) == len(right)
    fwd_images = set()
    for m in left:
        beta = tuple(m.beta)
        if beta not in right_set or beta in fwd_images:
            bijection = False
            break
        fwd_images.add(beta)
        if adjunction_transpose_bwd(beta, fol, rho) != m:
            bijection = False
            break
    if bijection:
        for beta in right:
            m = adjunction_transpose_bwd(beta, fol, rho)
            if tuple(m.beta) != tuple(beta):
                bijection = False
                break

    naturality = True
    checked = 0
    for z2, g in fol_morphisms:
        down2 = r_down_on_morphism(g, z2, fol)
        for m in left:
            beta_after_g = tuple(m.beta[p] for p in g)
            lhs = adjunction_transpose_bwd(beta_after_g, z2, rho)
            rhs = compose_rep_morphisms(m, down2)
            checked += 1
            if lhs != rhs:
                naturality = False
    for rho2, h in rep_morphisms:
        for m in left:
            composed = compose_rep_morphisms(h, m)
            beta_then_h = tuple(h.beta[b] for b in m.beta)
            lhs = adjunction_transpose_bwd(beta_then_h, fol, rho2)
            checked += 1
            if lhs != composed:
                naturality = False

    return {
        "hom_left": len(left),
        "hom_right": len(right),
        "bijection": bijection,
        "naturality_checked": checked,
        "naturality": naturality,
    }


def prop18_iso(rho: Representation) -> tuple[RepMorphism, RepMorphism]:
    """Isomorphism between a clear distinct representation and the leaf
    representation of its indiscrete-selector foliation."""
    if not (rep_validate(rho) and is_clear(rho) and is_distinct(rho)):
        raise DomainError("the isomorphism needs a valid, clear and distinct representation")
    down = r_down(phi(rho, "G", "G"))
    leaf_list = down.images
    leaf_index = {leaf: i for i, leaf in enumerate(leaf_list)}
    try:
        alpha = tuple(leaf_index[img] for img in rho.images)
    except KeyError as exc:
        raise RuntimeError("an image is not a leaf of its own foliation") from exc
    ident = tuple(range(rho.ambient.n))
    fwd = RepMorphism(alpha, ident)
    inverse_points = tuple(rho.images.index(leaf) for leaf in leaf_list)
    bwd = RepMorphism(inverse_points, ident)
    if not (rep_morphism_check(fwd, rho, down) and rep_morphism_check(bwd, down, rho)):
        raise RuntimeError("isomorphism candidate failed the morphism check")
    there_and_back = compose_rep_morphisms(bwd, fwd)
    back_and_there = compose_rep_morphisms(fwd, bwd)
    if there_and_back != identity_rep_morphism(rho) or back_and_there != identity_rep_morphism(down):
        raise RuntimeError("isomorphism candidate does not compose to the identities")
    return fwd, bwd
