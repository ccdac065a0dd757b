"""Finite categories as explicit composition tables.

Objects and arrows are indexed; the table maps every composable pair
(g, f) with cod(f) = dom(g) to the composite g∘f.  Construction checks
only shape, so that deliberately broken tables can be fed to the law
checker; everything downstream assumes a table that passed
``cat_validate``.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping

from .core import InputError


class FinCat:
    def __init__(
        self,
        obs: Iterable[str],
        arrows: Iterable[str],
        dom: Iterable[int],
        cod: Iterable[int],
        ident: Iterable[int],
        comp: Mapping[tuple[int, int], int],
    ) -> None:
        self.obs = tuple(str(o) for o in obs)
        self.arrows = tuple(str(a) for a in arrows)
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.ident = tuple(ident)
        self.comp = dict(comp)
        n_obs, n_arr = len(self.obs), len(self.arrows)
        if len(set(self.obs)) != n_obs or len(set(self.arrows)) != n_arr:
            raise InputError("object and arrow names must be unique")
        if len(self.dom) != n_arr or len(self.cod) != n_arr:
            raise InputError("every arrow needs a domain and a codomain")
        for x in self.dom + self.cod:
            if not 0 <= x < n_obs:
                raise InputError("arrow endpoint out of range")
        if len(self.ident) != n_obs:
            raise InputError("every object needs an identity arrow")
        for o, i in enumerate(self.ident):
            if not 0 <= i < n_arr:
                raise InputError("identity arrow index out of range")
        for (g, f), h in self.comp.items():
            if not (0 <= g < n_arr and 0 <= f < n_arr and 0 <= h < n_arr):
                raise InputError("composition table index out of range")
            if self.cod[f] != self.dom[g]:
                raise InputError("composition table keys must be composable pairs")
        for f, g in itertools.product(range(n_arr), repeat=2):
            if self.cod[f] == self.dom[g] and (g, f) not in self.comp:
                raise InputError(f"composition table misses the pair ({self.arrows[g]}, {self.arrows[f]})")

    def compose(self, g: int, f: int) -> int:
        """Composite g∘f; the pair must be composable."""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise InputError("arrows are not composable") from None

    def hom(self, a: int, b: int) -> list[int]:
        return [f for f in range(len(self.arrows)) if self.dom[f] == a and self.cod[f] == b]

    def arrow_index(self, name: str) -> int:
        try:
            return self.arrows.index(name)
        except ValueError:
            raise InputError(f"unknown arrow {name!r}") from None

    def object_index(self, name: str) -> int:
        try:
            return self.obs.index(name)
        except ValueError:
            raise InputError(f"unknown object {name!r}") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self.obs == other.obs
            and self.arrows == other.arrows
            and self.dom == other.dom
            and self.cod == other.cod
            and self.ident == other.ident
            and self.comp == other.comp
        )

    def __repr__(self) -> str:
        return f"FinCat({len(self.obs)} objects, {len(self.arrows)} arrows)"


def cat_validate(cat: FinCat) -> bool:
    """Identity and associativity laws, checked exhaustively."""
    n = len(cat.arrows)
    for o, i in enumerate(cat.ident):
        if cat.dom[i] != o or cat.cod[i] != o:
            return False
    for (g, f), h in cat.comp.items():
        if cat.dom[h] != cat.dom[f] or cat.cod[h] != cat.cod[g]:
            return False
    for f in range(n):
        if cat.comp[(f, cat.ident[cat.dom[f]])] != f:
            return False
        if cat.comp[(cat.ident[cat.cod[f]], f)] != f:
            return False
    for f in range(n):
        for g in range(n):
            if cat.cod[f] != cat.dom[g]:
                continue
            gf = cat.comp[(g, f)]
            for h in range(n):
                if cat.cod[g] != cat.dom[h]:
                    continue
                if cat.comp[(h, cat.comp[(g, f)])] != cat.comp[(cat.comp[(h, g)], f)]:
                    return False
    return True


def monoid_category(elements: Iterable[str], table: Mapping[tuple[str, str], str], unit: str) -> FinCat:
    """One-object category of a monoid, with g∘f = f*g.

    ``table[(a, b)]`` is the monoid product a*b; composing arrows in
    diagram order then matches the monoid multiplication.
    """
    elements = tuple(str(e) for e in elements)
    index = {e: i for i, e in enumerate(elements)}
    if unit not in index:
        raise InputError("the unit must be one of the elements")
    comp = {}
    for g, f in itertools.product(range(len(elements)), repeat=2):
        try:
            prod = table[(elements[f], elements[g])]
        except KeyError:
            raise InputError("multiplication table is not total") from None
        comp[(g, f)] = index[prod]
    return FinCat(
        obs=("*",),
        arrows=elements,
        dom=(0,) * len(elements),
        cod=(0,) * len(elements),
        ident=(index[unit],),
        comp=comp,
    )


def monoid_category_from_rows(elements: Iterable[str], rows: Iterable[Iterable[str]], unit: str) -> FinCat:
    """Monoid category from a row-major table: rows[i][j] = elements[i] * elements[j]."""
    elements = tuple(str(e) for e in elements)
    table = {}
    rows = [list(r) for r in rows]
    if len(rows) != len(elements) or any(len(r) != len(elements) for r in rows):
        raise InputError("multiplication table must be square over the elements")
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[(a, b)] = rows[i][j]
    return monoid_category(elements, table, unit)


def cyclic_group_category(k: int) -> FinCat:
    """The cyclic group of order k as a one-object category."""
    if k <= 0:
        raise InputError("the order must be positive")
    elements = tuple(str(i) for i in range(k))
    rows = [[str((i + j) % k) for j in range(k)] for i in range(k)]
    return monoid_category_from_rows(elements, rows, "0")


def preorder_category(elements: Iterable[str], le: Iterable[tuple[str, str]]) -> FinCat:
    """Category of a preorder: one arrow r->s per related pair, closed
    reflexively and transitively."""
    elements = tuple(str(e) for e in elements)
    index = {e: i for i, e in enumerate(elements)}
    pairs = {(index[a], index[b]) for a, b in le}
    pairs |= {(i, i) for i in range(len(elements))}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(pairs), repeat=2):
            if b == c and (a, d) not in pairs:
                pairs.add((a, d))
                changed = True
    arrows = sorted(pairs)
    arrow_index = {p: i for i, p in enumerate(arrows)}
    names = tuple(f"{elements[a]}<={elements[b]}" for a, b in arrows)
    comp = {}
    for gi, (b2, c) in enumerate(arrows):
        for fi, (a, b) in enumerate(arrows):
            if b == b2:
                comp[(gi, fi)] = arrow_index[(a, c)]
    return FinCat(
        obs=elements,
        arrows=names,
        dom=tuple(a for a, _ in arrows),
        cod=tuple(b for _, b in arrows),
        ident=tuple(arrow_index[(i, i)] for i in range(len(elements))),
        comp=comp,
    )


def chain_category(n: int) -> FinCat:
    """The total order 0 <= 1 <= ... <= n-1 as a category."""
    els = [str(i) for i in range(n)]
    return preorder_category(els, [(els[i], els[i + 1]) for i in range(n - 1)])


def path_category(vertices: int, edges: Iterable[tuple[int, int, str]]) -> FinCat:
    """Free category on a finite acyclic multigraph: arrows are paths.

    Edges are (source, target, label) triples; the graph must be acyclic
    so the arrow set stays finite.
    """
    edge_list = list(edges)
    adjacency: dict[int, list[tuple[int, str]]] = {v: [] for v in range(vertices)}
    for s, t, label in edge_list:
        if not (0 <= s < vertices and 0 <= t < vertices):
            raise InputError("edge endpoint out of range")
        adjacency[s].append((t, label))
    # collect all paths by BFS; a repeated vertex means a cycle
    paths: list[tuple[int, int, tuple[str, ...]]] = [(v, v, ()) for v in range(vertices)]
    frontier = list(paths)
    while frontier:
        nxt = []
        for (s, t, labels) in frontier:
            for (t2, label) in adjacency[t]:
                nxt.append((s, t2, labels + (label,)))
        paths.extend(nxt)
        frontier = nxt
        if len(paths) > 10_000:
            raise InputError("the edge graph must be acyclic and small")
    names = tuple("id_" + str(s) if not labels else ".".join(labels) for s, _, labels in paths)
    if len(set(names)) != len(names):
        raise InputError("edge labels must give distinct path names")
    index = {p: i for i, p in enumerate(paths)}
    comp = {}
    for gi, (s2, t2, l2) in enumerate(paths):
        for fi, (s1, t1, l1) in enumerate(paths):
            if t1 == s2:
                comp[(gi, fi)] = index[(s1, t2, l1 + l2)]
    return FinCat(
        obs=tuple(str(v) for v in range(vertices)),
        arrows=names,
        dom=tuple(s for s, _, _ in paths),
        cod=tuple(t for _, t, _ in paths),
        ident=tuple(index[(v, v, ())] for v in range(vertices)),
        comp=comp,
    )


def arrow_category() -> FinCat:
    """Two objects S, T and a single non-identity arrow f : S -> T."""
    return FinCat(
        obs=("S", "T"),
        arrows=("id_S", "id_T", "f"),
        dom=(0, 1, 0),
        cod=(0, 1, 1),
        ident=(0, 1),
        comp={(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2},
    )


def empty_category() -> FinCat:
    return FinCat((), (), (), (), (), {})


class FunctorData:
    """Object and arrow maps of a functor between two finite categories."""

    def __init__(self, obmap: Iterable[int], armap: Iterable[int]) -> None:
        self.obmap = tuple(obmap)
        self.armap = tuple(armap)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctorData):
            return NotImplemented
        return self.obmap == other.obmap and self.armap == other.armap

    def __hash__(self) -> int:
        return hash((self.obmap, self.armap))

    def __repr__(self) -> str:
        return f"FunctorData(obmap={self.obmap}, armap={self.armap})"


def functor_check(fn: FunctorData, source: FinCat, target: FinCat) -> bool:
    """Endpoint, identity and composition preservation."""
    if len(fn.obmap) != len(source.obs) or len(fn.armap) != len(source.arrows):
        raise InputError("functor data sizes do not match the source category")
    if any(not 0 <= o < len(target.obs) for o in fn.obmap):
        raise InputError("functor object map out of range")
    if any(not 0 <= a < len(target.arrows) for a in fn.armap):
        raise InputError("functor arrow map out of range")
    for f in range(len(source.arrows)):
        if target.dom[fn.armap[f]] != fn.obmap[source.dom[f]]:
            return False
        if target.cod[fn.armap[f]] != fn.obmap[source.cod[f]]:
            return False
    for o in range(len(source.obs)):
        if fn.armap[source.ident[o]] != target.ident[fn.obmap[o]]:
            return False
    for (g, f), h in source.comp.items():
        if target.comp[(fn.armap[g], fn.armap[f])] != fn.armap[h]:
            return False
    return True


def functor_faithful(fn: FunctorData) -> bool:
    """Injective on arrows (hence on objects)."""
    return len(set(fn.armap)) == len(fn.armap)


def functor_is_iso(fn: FunctorData, source: FinCat, target: FinCat) -> bool:
    return (
        functor_check(fn, source, target)
        and len(set(fn.obmap)) == len(target.obs) == len(fn.obmap)
        and len(set(fn.armap)) == len(target.arrows) == len(fn.armap)
    )


def compose_functors(second: FunctorData, first: FunctorData) -> FunctorData:
    return FunctorData(
        tuple(second.obmap[o] for o in first.obmap),
        tuple(second.armap[a] for a in first.armap),
    )


def identity_functor(cat: FinCat) -> FunctorData:
    return FunctorData(tuple(range(len(cat.obs))), tuple(range(len(cat.arrows))))


def arrow_regular_flags(cat: FinCat, f: int) -> dict:
    """Cancellation and invertibility of a single arrow, by table scan."""
    n = len(cat.arrows)
    right_regular = True
    for g in range(n):
        for h in range(n):
            if cat.cod[f] == cat.dom[g] == cat.dom[h]:
                if cat.comp[(g, f)] == cat.comp[(h, f)] and g != h:
                    right_regular = False
    left_regular = True
    for g in range(n):
        for h in range(n):
            if cat.dom[f] == cat.cod[g] == cat.cod[h]:
                if cat.comp[(f, g)] == cat.comp[(f, h)] and g != h:
                    left_regular = False
    reversible = any(
        cat.dom[g] == cat.cod[f]
        and cat.comp[(g, f)] == cat.ident[cat.dom[f]]
        and cat.comp[(f, g)] == cat.ident[cat.cod[f]]
        for g in range(n)
    )
    return {"left_regular": left_regular, "right_regular": right_regular, "reversible": reversible}
