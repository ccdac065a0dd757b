"""Seeded random generators for spaces, foliations, representations,
categories, dynamics and dynamorphisms.

Everything takes an explicit random.Random so test runs are reproducible;
constructions are valid by design wherever validity is expensive to hit
by rejection.
"""

from __future__ import annotations

import itertools
import random

from conndyn.core import bits, full_mask
from conndyn.dynamics import Dynamics, Dynamorphism, xi, zeta
from conndyn.fincat import (
    FinCat,
    FunctorData,
    chain_category,
    cyclic_group_category,
    functor_check,
    identity_functor,
    monoid_category_from_rows,
    path_category,
    preorder_category,
)
from conndyn.foliations import Foliation
from conndyn.representations import Representation, canonical_double, epsilon_rep, rep_validate
from conndyn.spaces import Space, generate, graph_to_space, is_integral


# --- spaces ------------------------------------------------------------------


def random_family(rng: random.Random, n: int, size: int | None = None) -> frozenset[int]:
    top = full_mask(n)
    if size is None:
        size = rng.randint(0, max(2 * n, 3))
    return frozenset(rng.randint(0, top) for _ in range(size))


def random_space(rng: random.Random, n: int, integral: bool = False) -> Space:
    return Space(n, generate(n, random_family(rng, n), integral))


def random_connected_partition(rng: random.Random, sp: Space) -> tuple[int, ...] | None:
    """A partition of the support into connected classes, or None if stuck."""
    remaining = full_mask(sp.n)
    classes = []
    while remaining:
        inside = [k for k in sp.connected if k and (k & ~remaining) == 0]
        if not inside:
            return None
        choice = rng.choice(inside)
        classes.append(choice)
        remaining &= ~choice
    return tuple(classes)


def random_foliation(rng: random.Random, n: int) -> Foliation:
    return Foliation(
        n,
        generate(n, random_family(rng, n), rng.random() < 0.3),
        generate(n, random_family(rng, n), rng.random() < 0.3),
    )


def random_regular_foliation(rng: random.Random, n: int) -> Foliation:
    external = generate(n, random_family(rng, n), rng.random() < 0.5)
    members = sorted(external)
    sub = [m for m in members if rng.random() < 0.5]
    internal = generate(n, sub)
    return Foliation(n, internal, external)


# --- representations ---------------------------------------------------------


def random_rio_rep(rng: random.Random, max_points: int = 3) -> Representation:
    """A valid, clear, distinct representation with an integral object."""
    n = rng.randint(0, max_points)
    obj = random_space(rng, n, integral=True)
    if rng.random() < 0.5:
        return canonical_double(obj)
    return epsilon_rep(obj)


def random_valid_rep(
    rng: random.Random, obj: Space, amb: Space, tries: int = 60
) -> Representation | None:
    top = full_mask(amb.n)
    for _ in range(tries):
        if amb.n == 0:
            if obj.n == 0:
                return Representation(obj, amb, ())
            return None
        images = tuple(rng.randint(1, top) for _ in range(obj.n))
        rho = Representation(obj, amb, images)
        if rep_validate(rho):
            return rho
    return None


def random_rep_chain(rng: random.Random, sizes: tuple[int, ...], max_tries: int = 40):
    """A composable chain of valid representations through random spaces."""
    spaces = [random_space(rng, rng.randint(1, s), rng.random() < 0.5) for s in sizes]
    reps = []
    for src, tgt in zip(spaces, spaces[1:]):
        rho = random_valid_rep(rng, src, tgt, max_tries)
        if rho is None:
            return None
        reps.append(rho)
    return reps


# --- categories --------------------------------------------------------------


def _small_monoids(order: int) -> list[list[list[str]]]:
    """All associative unital tables on 0..order-1 with unit 0, as row tables."""
    names = [str(i) for i in range(order)]
    free_cells = [(i, j) for i in range(1, order) for j in range(1, order)]
    out = []
    for values in itertools.product(range(order), repeat=len(free_cells)):
        table = [[0] * order for _ in range(order)]
        for j in range(order):
            table[0][j] = j
        for i in range(order):
            table[i][0] = i
        for (i, j), v in zip(free_cells, values):
            table[i][j] = v
        ok = all(
            table[table[a][b]][c] == table[a][table[b][c]]
            for a in range(order)
            for b in range(order)
            for c in range(order)
        )
        if ok:
            out.append([[names[v] for v in row] for row in table])
    return out


_MONOIDS2 = _small_monoids(2)
_MONOIDS3 = _small_monoids(3)


def random_dag_edges(rng: random.Random, vertices: int, max_edges: int) -> list[tuple[int, int, str]]:
    pool = [(i, j) for i in range(vertices) for j in range(vertices) if i < j]
    rng.shuffle(pool)
    picked = pool[: rng.randint(0, min(max_edges, len(pool)))]
    return [(i, j, f"e{k}") for k, (i, j) in enumerate(sorted(picked))]


def random_category(rng: random.Random, max_objects: int = 4, max_arrows: int = 8) -> FinCat:
    for _ in range(200):
        kind = rng.randrange(5)
        if kind == 0:
            cat = cyclic_group_category(rng.randint(1, 4))
        elif kind == 1:
            order = rng.choice([2, 3])
            rows = rng.choice(_MONOIDS2 if order == 2 else _MONOIDS3)
            cat = monoid_category_from_rows([str(i) for i in range(order)], rows, "0")
        elif kind == 2:
            els = [str(i) for i in range(rng.randint(1, max_objects))]
            pairs = [
                (a, b)
                for a in els
                for b in els
                if a != b and rng.random() < 0.3
            ]
            cat = preorder_category(els, pairs)
        elif kind == 3:
            vertices = rng.randint(1, max_objects)
            cat = path_category(vertices, random_dag_edges(rng, vertices, 4))
        else:
            cat = chain_category(rng.randint(1, max_objects))
        if len(cat.obs) <= max_objects and len(cat.arrows) <= max_arrows:
            return cat
    return chain_category(2)


def full_subcategory(cat: FinCat, objects: list[int]) -> tuple[FinCat, FunctorData]:
    """Full subcategory on some objects, plus its inclusion functor."""
    keep_arrows = [
        f for f in range(len(cat.arrows)) if cat.dom[f] in objects and cat.cod[f] in objects
    ]
    ob_index = {o: i for i, o in enumerate(objects)}
    ar_index = {a: i for i, a in enumerate(keep_arrows)}
    sub = FinCat(
        obs=[cat.obs[o] for o in objects],
        arrows=[cat.arrows[a] for a in keep_arrows],
        dom=[ob_index[cat.dom[a]] for a in keep_arrows],
        cod=[ob_index[cat.cod[a]] for a in keep_arrows],
        ident=[ar_index[cat.ident[o]] for o in objects],
        comp={
            (ar_index[g], ar_index[f]): ar_index[cat.comp[(g, f)]]
            for g in keep_arrows
            for f in keep_arrows
            if cat.cod[f] == cat.dom[g]
        },
    )
    inclusion = FunctorData(tuple(objects), tuple(keep_arrows))
    return sub, inclusion


def random_functor(rng: random.Random) -> tuple[FunctorData, FinCat, FinCat]:
    """A functor between two random small categories, valid by construction."""
    for _ in range(200):
        kind = rng.randrange(4)
        if kind == 0:
            cat = random_category(rng)
            return identity_functor(cat), cat, cat
        if kind == 1:
            # collapse everything onto one object of the target
            source = random_category(rng)
            target = random_category(rng)
            if not target.obs:
                continue
            o = rng.randrange(len(target.obs))
            fn = FunctorData(
                (o,) * len(source.obs), (target.ident[o],) * len(source.arrows)
            )
            return fn, source, target
        if kind == 2:
            target = random_category(rng)
            if len(target.obs) < 2:
                continue
            objects = sorted(rng.sample(range(len(target.obs)), rng.randint(1, len(target.obs))))
            source, inclusion = full_subcategory(target, objects)
            return inclusion, source, target
        # monotone map between two chains
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        source, target = chain_category(n), chain_category(m)
        values = sorted(rng.randint(0, m - 1) for _ in range(n))
        armap = []
        for f in range(len(source.arrows)):
            a, b = source.dom[f], source.cod[f]
            # the unique arrow values[a] <= values[b] in the target chain
            armap.append(target.hom(values[a], values[b])[0])
        fn = FunctorData(tuple(values), tuple(armap))
        return fn, source, target
    cat = chain_category(2)
    return identity_functor(cat), cat, cat


# --- dynamics ----------------------------------------------------------------


_STATE_COUNTER = itertools.count()


def _fresh_states(count: int) -> list[str]:
    return [f"s{next(_STATE_COUNTER)}" for _ in range(count)]


def _generating_arrows(cat: FinCat) -> list[int]:
    """Arrows that are neither identities nor composites of two non-identities."""
    idents = set(cat.ident)
    composite = set()
    for (g, f), h in cat.comp.items():
        if g not in idents and f not in idents:
            composite.add(h)
    return [a for a in range(len(cat.arrows)) if a not in idents and a not in composite]


def free_dynamics(rng: random.Random, cat: FinCat, max_states: int = 3) -> Dynamics | None:
    """Random dynamics on a freely generated category: choose transitions on
    the generating arrows and extend along factorizations."""
    states = [_fresh_states(rng.randint(0, max_states)) for _ in cat.obs]
    known: dict[int, dict] = {}
    for o in range(len(cat.obs)):
        known[cat.ident[o]] = {s: frozenset({s}) for s in states[o]}
    for a in _generating_arrows(cat):
        rel = {}
        targets = states[cat.cod[a]]
        for s in states[cat.dom[a]]:
            rel[s] = frozenset(t for t in targets if rng.random() < 0.4)
        known[a] = rel
    changed = True
    while changed and len(known) < len(cat.arrows):
        changed = False
        for (g, f), h in cat.comp.items():
            if h in known or g not in known or f not in known:
                continue
            rel = {}
            for s in states[cat.dom[f]]:
                out = set()
                for mid in known[f][s]:
                    out |= known[g][mid]
                rel[s] = frozenset(out)
            known[h] = rel
            changed = True
    if len(known) < len(cat.arrows):
        return None
    return Dynamics(cat, states, [known[a] for a in range(len(cat.arrows))])


def random_proper_dynamics(rng: random.Random) -> Dynamics:
    for _ in range(200):
        kind = rng.randrange(4)
        if kind == 0:
            cat = random_category(rng)
            return zeta(cat)
        if kind == 1:
            cat = random_category(rng)
            dyn = xi(cat)
            if sum(len(s) for s in dyn.states) <= 12:
                return dyn
            continue
        vertices = rng.randint(1, 4)
        cat = path_category(vertices, random_dag_edges(rng, vertices, 3))
        if len(cat.arrows) > 10:
            continue
        dyn = free_dynamics(rng, cat)
        if dyn is not None:
            return dyn
    return zeta(chain_category(2))


def random_improper_dynamics(rng: random.Random) -> Dynamics:
    """A dynamics on the single-arrow category whose two state sets overlap."""
    universe = [f"u{i}" for i in range(rng.randint(2, 5))]
    s_states = rng.sample(universe, rng.randint(1, len(universe)))
    t_states = rng.sample(universe, rng.randint(1, len(universe)))
    from conndyn.fincat import arrow_category

    cat = arrow_category()
    rel = {
        s: frozenset(t for t in t_states if rng.random() < 0.5)
        for s in s_states
    }
    return Dynamics(
        cat,
        [s_states, t_states],
        [{s: {s} for s in s_states}, {t: {t} for t in t_states}, rel],
    )


def forward_closed_subset(rng: random.Random, dyn: Dynamics) -> set[str]:
    """A random state set closed under every transition."""
    kept = {s for obj in dyn.states for s in obj if rng.random() < 0.5}
    changed = True
    while changed:
        changed = False
        for f in range(len(dyn.cat.arrows)):
            for s, image in dyn.trans[f].rel.items():
                if s in kept and image - kept:
                    kept |= image
                    changed = True
    return kept


def duplicate_projection(rng: random.Random, dyn: Dynamics) -> tuple[Dynamorphism, Dynamics]:
    """A surjective deterministic projection onto ``dyn`` from the disjoint
    union of ``dyn`` with a retagged forward-closed part of itself."""
    kept = forward_closed_subset(rng, dyn)
    states = []
    for obj_states in dyn.states:
        states.append([f"{s}|0" for s in obj_states] + [f"{s}|1" for s in obj_states if s in kept])
    trans = []
    for f in range(len(dyn.cat.arrows)):
        rel = {}
        for s, image in dyn.trans[f].rel.items():
            rel[f"{s}|0"] = frozenset(f"{t}|0" for t in image)
            if s in kept:
                rel[f"{s}|1"] = frozenset(f"{t}|1" for t in image)
        trans.append(rel)
    source = Dynamics(dyn.cat, states, trans)
    delta = []
    for o, obj_states in enumerate(states):
        delta.append({s: frozenset({s.rsplit("|", 1)[0]}) for s in obj_states})
    return Dynamorphism(identity_functor(dyn.cat), delta), source


def partial_identity(rng: random.Random, dyn: Dynamics) -> Dynamorphism:
    """Quasi-deterministic partial identity on a forward-closed kept set."""
    dropped = {s for obj in dyn.states for s in obj if rng.random() < 0.3}
    changed = True
    while changed:
        changed = False
        for f in range(len(dyn.cat.arrows)):
            for s, image in dyn.trans[f].rel.items():
                if s in dropped:
                    fresh = image - dropped
                    if fresh:
                        dropped |= fresh
                        changed = True
    delta = [
        {s: frozenset() if s in dropped else frozenset({s}) for s in dyn.states[o]}
        for o in range(len(dyn.cat.obs))
    ]
    return Dynamorphism(identity_functor(dyn.cat), delta)


def widen_target(rng: random.Random, dyn: Dynamics) -> Dynamics | None:
    """Enlarge some non-identity transition images, keeping functoriality."""
    widened = []
    idents = set(dyn.cat.ident)
    for f in range(len(dyn.cat.arrows)):
        if f in idents:
            widened.append(dict(dyn.trans[f].rel))
            continue
        to = dyn.cat.cod[f]
        rel = {}
        for s, image in dyn.trans[f].rel.items():
            extra = frozenset(t for t in dyn.states[to] if rng.random() < 0.2)
            rel[s] = image | extra
        widened.append(rel)
    from conndyn.dynamics import dynamics_validate

    wide = Dynamics(dyn.cat, dyn.states, widened)
    return wide if dynamics_validate(wide) else None


def random_quasidet_morphism(rng: random.Random) -> tuple[Dynamorphism, Dynamics, Dynamics]:
    """A valid quasi-deterministic dynamorphism between same-category dynamics."""
    dyn = random_proper_dynamics(rng)
    kind = rng.randrange(3)
    if kind == 0:
        m, source = duplicate_projection(rng, dyn)
        return m, source, dyn
    if kind == 1:
        m = partial_identity(rng, dyn)
        return m, dyn, dyn
    # projection into a widened target: the inclusion square still holds
    m, source = duplicate_projection(rng, dyn)
    wide = widen_target(rng, dyn)
    return (m, source, wide) if wide is not None else (m, source, dyn)
