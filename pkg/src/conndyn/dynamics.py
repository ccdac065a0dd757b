"""Set-valued dynamics over finite categories.

A dynamics assigns to every object of a finite category a state set and
to every arrow a set-valued transition, functorially: identities act as
identities and the transition of a composite is the Kleisli composite of
the transitions.  Dynamorphisms relate two dynamics through a functor and
a family of transitions satisfying an inclusion square; solutions,
interpretations, the transition category, essentialization and
verticalization are all built on top of these two notions.

State identifiers are global strings: a dynamics is proper when distinct
objects carry disjoint state sets, which is what lets a state remember
its own mode.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from .core import DomainError, InputError
from .fincat import (
    FinCat,
    FunctorData,
    compose_functors,
    functor_check,
    functor_faithful,
    functor_is_iso,
    identity_functor,
)


class Transition:
    """A set-valued map between two finite state lists."""

    def __init__(self, source: Sequence[str], target: Sequence[str], rel: Mapping[str, Iterable[str]]) -> None:
        self.source = tuple(source)
        self.target = tuple(target)
        tset = set(self.target)
        table = {}
        for s in self.source:
            image = frozenset(rel.get(s, ()))
            if image - tset:
                raise InputError(f"transition image of {s!r} leaves the target states")
            table[s] = image
        for key in rel:
            if key not in table:
                raise InputError(f"transition defined on unknown state {key!r}")
        self.rel = table

    def __call__(self, state: str) -> frozenset[str]:
        return self.rel[state]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Transition):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.rel == other.rel

    def __repr__(self) -> str:
        return f"Transition({self.rel!r})"


def transition_compose(second: Transition, first: Transition) -> Transition:
    """Kleisli composite: image of a state is the union of images of images."""
    if first.target != second.source:
        raise InputError("transitions are not composable")
    rel = {
        s: frozenset().union(*(second.rel[t] for t in first.rel[s])) if first.rel[s] else frozenset()
        for s in first.source
    }
    return Transition(first.source, second.target, rel)


def identity_transition(states: Sequence[str]) -> Transition:
    return Transition(states, states, {s: {s} for s in states})


def transition_classify(t: Transition) -> dict:
    sizes = [len(t.rel[s]) for s in t.source]
    quasi = all(k <= 1 for k in sizes)
    complete = all(k >= 1 for k in sizes)
    deterministic = quasi and complete
    reversible = False
    if deterministic:
        values = [next(iter(t.rel[s])) for s in t.source]
        reversible = len(set(values)) == len(values) and set(values) == set(t.target)
    return {
        "quasi_deterministic": quasi,
        "complete": complete,
        "deterministic": deterministic,
        "reversible": reversible,
    }


class Dynamics:
    """A functor from a finite category to sets and set-valued transitions."""

    def __init__(
        self,
        cat: FinCat,
        states: Sequence[Sequence[str]],
        trans: Sequence[Mapping[str, Iterable[str]]],
    ) -> None:
        self.cat = cat
        if len(states) != len(cat.obs):
            raise InputError("one state list per object is required")
        self.states = tuple(tuple(str(s) for s in obj_states) for obj_states in states)
        for obj_states in self.states:
            if len(set(obj_states)) != len(obj_states):
                raise InputError("state identifiers must not repeat within an object")
        if len(trans) != len(cat.arrows):
            raise InputError("one transition per arrow is required")
        built = []
        for f, rel in enumerate(trans):
            built.append(Transition(self.states[cat.dom[f]], self.states[cat.cod[f]], rel))
        self.trans = tuple(built)

    def transition(self, f: int) -> Transition:
        return self.trans[f]

    def st(self) -> tuple[str, ...]:
        """All states, in object order, without repetition."""
        seen = []
        for obj_states in self.states:
            for s in obj_states:
                if s not in seen:
                    seen.append(s)
        return tuple(seen)

    def mode_of(self, state: str) -> int:
        for o, obj_states in enumerate(self.states):
            if state in obj_states:
                return o
        raise InputError(f"unknown state {state!r}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dynamics):
            return NotImplemented
        return self.cat == other.cat and self.states == other.states and self.trans == other.trans

    def __repr__(self) -> str:
        return f"Dynamics({self.cat!r}, {sum(len(s) for s in self.states)} states)"


def dynamics_validate(dyn: Dynamics) -> bool:
    """Functor laws: identities act as identities, composites compose."""
    cat = dyn.cat
    for o in range(len(cat.obs)):
        if dyn.trans[cat.ident[o]] != identity_transition(dyn.states[o]):
            return False
    for (g, f), h in cat.comp.items():
        if transition_compose(dyn.trans[g], dyn.trans[f]) != dyn.trans[h]:
            return False
    return True


def is_proper(dyn: Dynamics) -> bool:
    seen: set[str] = set()
    for obj_states in dyn.states:
        block = set(obj_states)
        if block & seen:
            return False
        seen |= block
    return True


def state_preorder(dyn: Dynamics) -> frozenset[tuple[str, str]]:
    """Reachability in one arrow; reflexive and transitive for proper dynamics."""
    if not is_proper(dyn):
        raise DomainError("the state preorder needs a proper dynamics")
    pairs = set()
    for f in range(len(dyn.cat.arrows)):
        for a, image in dyn.trans[f].rel.items():
            for b in image:
                pairs.add((a, b))
    relation = frozenset(pairs)
    states = dyn.st()
    assert all((s, s) in relation for s in states), "preorder lost reflexivity"
    assert all(
        (a, c) in relation
        for (a, b) in relation
        for (b2, c) in relation
        if b == b2
    ), "preorder lost transitivity"
    return relation


def orbit(dyn: Dynamics, state: str) -> frozenset[str]:
    """Union of one-arrow images of the state, over arrows that act on it."""
    out: set[str] = set()
    found = False
    for f in range(len(dyn.cat.arrows)):
        rel = dyn.trans[f].rel
        if state in rel:
            found = True
            out |= rel[state]
    if not found:
        raise InputError(f"unknown state {state!r}")
    return frozenset(out)


def zeta(cat: FinCat) -> Dynamics:
    """Essential dynamics: one state per object, every arrow a forced step."""
    states = [(obj,) for obj in cat.obs]
    trans = [
        {cat.obs[cat.dom[f]]: {cat.obs[cat.cod[f]]}}
        for f in range(len(cat.arrows))
    ]
    return Dynamics(cat, states, trans)


def xi(cat: FinCat) -> Dynamics:
    """Existential dynamics: states over an object are the arrows into it,
    an arrow acts by postcomposition."""
    into = [tuple(cat.arrows[a] for a in range(len(cat.arrows)) if cat.cod[a] == o) for o in range(len(cat.obs))]
    trans = []
    for f in range(len(cat.arrows)):
        rel = {}
        for a in range(len(cat.arrows)):
            if cat.cod[a] == cat.dom[f]:
                rel[cat.arrows[a]] = {cat.arrows[cat.comp[(f, a)]]}
        trans.append(rel)
    return Dynamics(cat, into, trans)


class Dynamorphism:
    """A functor between the base categories plus one transition per object."""

    def __init__(self, functor: FunctorData, delta: Sequence[Mapping[str, Iterable[str]]]) -> None:
        self.functor = functor
        self.delta = tuple({s: frozenset(v) for s, v in d.items()} for d in delta)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dynamorphism):
            return NotImplemented
        return self.functor == other.functor and self.delta == other.delta

    def __repr__(self) -> str:
        return f"Dynamorphism({self.functor!r})"


def identity_dynamorphism(dyn: Dynamics) -> Dynamorphism:
    return Dynamorphism(
        identity_functor(dyn.cat),
        [{s: {s} for s in obj_states} for obj_states in dyn.states],
    )


def _delta_transition(m: Dynamorphism, source: Dynamics, target: Dynamics, obj: int) -> Transition:
    return Transition(
        source.states[obj],
        target.states[m.functor.obmap[obj]],
        m.delta[obj],
    )


def dynamorphism_check(m: Dynamorphism, source: Dynamics, target: Dynamics) -> dict:
    """Validity plus the completeness, determinism and faithfulness flags."""
    if len(m.delta) != len(source.cat.obs):
        raise InputError("one transition per source object is required")
    valid = functor_check(m.functor, source.cat, target.cat)
    deltas = [_delta_transition(m, source, target, o) for o in range(len(source.cat.obs))]
    if valid:
        for f in range(len(source.cat.arrows)):
            s_obj, t_obj = source.cat.dom[f], source.cat.cod[f]
            lhs = transition_compose(deltas[t_obj], source.trans[f])
            rhs = transition_compose(target.trans[m.functor.armap[f]], deltas[s_obj])
            if any(lhs.rel[s] - rhs.rel[s] for s in lhs.source):
                valid = False
                break
    sizes = [len(d.rel[s]) for d in deltas for s in d.source]
    return {
        "valid": valid,
        "complete": all(k >= 1 for k in sizes),
        "quasi_deterministic": all(k <= 1 for k in sizes),
        "deterministic": all(k == 1 for k in sizes),
        "fidele": functor_faithful(m.functor),
    }


def compose_dynamorphisms(
    second: Dynamorphism, first: Dynamorphism, source: Dynamics, middle: Dynamics, target: Dynamics
) -> Dynamorphism:
    functor = compose_functors(second.functor, first.functor)
    delta = []
    for o in range(len(source.cat.obs)):
        mid_obj = first.functor.obmap[o]
        t1 = _delta_transition(first, source, middle, o)
        t2 = _delta_transition(second, middle, target, mid_obj)
        delta.append(transition_compose(t2, t1).rel)
    return Dynamorphism(functor, delta)


def solution_check(sigma: Dynamorphism, tau: Dynamics, alpha: Dynamics) -> dict:
    """A solution is a valid quasi-deterministic dynamorphism out of a
    deterministic proper time dynamics."""
    if not (is_proper(tau) and all(transition_classify(t)["deterministic"] for t in tau.trans)):
        raise DomainError("the time dynamics must be deterministic and proper")
    flags = dynamorphism_check(sigma, tau, alpha)
    is_solution = flags["valid"] and flags["quasi_deterministic"]
    if is_solution:
        # once empty, a solution stays empty along every flow
        for f in range(len(tau.cat.arrows)):
            s_obj, t_obj = tau.cat.dom[f], tau.cat.cod[f]
            for s in tau.states[s_obj]:
                if not sigma.delta[s_obj].get(s):
                    for t in tau.trans[f].rel[s]:
                        assert not sigma.delta[t_obj].get(t), "solution regained a value after vanishing"
    return {"is_solution": is_solution, "complete": flags["complete"]}


def canonical_Z(cat: FinCat) -> Dynamorphism:
    """The complete solution of the essential dynamics by the existential one:
    every arrow into an object is sent to that object."""
    delta = []
    for o in range(len(cat.obs)):
        rel = {
            cat.arrows[a]: {cat.obs[o]}
            for a in range(len(cat.arrows))
            if cat.cod[a] == o
        }
        delta.append(rel)
    return Dynamorphism(identity_functor(cat), delta)


def zeta_on_functor(fn: FunctorData, source: FinCat, target: FinCat) -> Dynamorphism:
    """Action of the essential-dynamics construction on a functor."""
    delta = [{source.obs[o]: {target.obs[fn.obmap[o]]}} for o in range(len(source.obs))]
    return Dynamorphism(fn, delta)


def xi_on_functor(fn: FunctorData, source: FinCat, target: FinCat) -> Dynamorphism:
    """Action of the existential-dynamics construction on a functor."""
    delta = []
    for o in range(len(source.obs)):
        rel = {}
        for a in range(len(source.arrows)):
            if source.cod[a] == o:
                rel[source.arrows[a]] = {target.arrows[fn.armap[a]]}
        delta.append(rel)
    return Dynamorphism(fn, delta)


def _tc(dyn: Dynamics) -> tuple[FinCat, tuple[tuple[str, int, str], ...]]:
    if not is_proper(dyn):
        raise DomainError("the transition category needs a proper dynamics")
    states = dyn.st()
    state_index = {s: i for i, s in enumerate(states)}
    triples: list[tuple[str, int, str]] = []
    for f in range(len(dyn.cat.arrows)):
        for a, image in dyn.trans[f].rel.items():
            for b in sorted(image):
                triples.append((a, f, b))
    triples.sort(key=lambda t: (state_index[t[0]], t[1], state_index[t[2]]))
    index = {t: i for i, t in enumerate(triples)}
    names = tuple(f"({a}|{dyn.cat.arrows[f]}|{b})" for a, f, b in triples)
    ident = []
    for s in states:
        ident.append(index[(s, dyn.cat.ident[dyn.mode_of(s)], s)])
    comp = {}
    try:
        for gi, (b2, g, c) in enumerate(triples):
            for fi, (a, f, b) in enumerate(triples):
                if b == b2:
                    comp[(gi, fi)] = index[(a, dyn.cat.comp[(g, f)], c)]
    except KeyError:
        raise DomainError("the transition category needs a functorial dynamics") from None
    cat = FinCat(
        obs=states,
        arrows=names,
        dom=tuple(state_index[a] for a, _, _ in triples),
        cod=tuple(state_index[b] for _, _, b in triples),
        ident=tuple(ident),
        comp=comp,
    )
    return cat, tuple(triples)


def tc(dyn: Dynamics) -> FinCat:
    """Transition category: objects are states, arrows are witnessed steps
    (a, f, b) with b in the image of a under f."""
    return _tc(dyn)[0]


def tc_on_morphism(m: Dynamorphism, source: Dynamics, target: Dynamics) -> FunctorData:
    """A deterministic dynamorphism acts on transition categories pointwise."""
    flags = dynamorphism_check(m, source, target)
    if not (flags["valid"] and flags["deterministic"]):
        raise DomainError("the transition category acts on valid deterministic dynamorphisms")
    src_cat, src_triples = _tc(source)
    tgt_cat, tgt_triples = _tc(target)
    tgt_state_index = {s: i for i, s in enumerate(tgt_cat.obs)}
    tgt_index = {t: i for i, t in enumerate(tgt_triples)}

    def send_state(s: str) -> str:
        obj = source.mode_of(s)
        return next(iter(m.delta[obj][s]))

    obmap = tuple(tgt_state_index[send_state(s)] for s in src_cat.obs)
    armap = []
    for (a, f, b) in src_triples:
        image = (send_state(a), m.functor.armap[f], send_state(b))
        try:
            armap.append(tgt_index[image])
        except KeyError:
            raise RuntimeError("image triple is not a witnessed step of the target") from None
    fn = FunctorData(obmap, tuple(armap))
    if not functor_check(fn, src_cat, tgt_cat):
        raise RuntimeError("transition-category action failed the functor laws")
    return fn


def essentialize(dyn: Dynamics) -> Dynamics:
    """Essential dynamics of the transition category: one state per state,
    deterministic steps along witnessed transitions."""
    return zeta(tc(dyn))


def av(dyn: Dynamics) -> Dynamorphism:
    """Covering of a proper dynamics by its essentialization: each state,
    seen as an essential instant, is sent to itself."""
    cat, triples = _tc(dyn)
    fn = FunctorData(
        tuple(dyn.mode_of(s) for s in cat.obs),
        tuple(f for _, f, _ in triples),
    )
    delta = [{s: {s}} for s in cat.obs]
    return Dynamorphism(fn, delta)


def verticalize(cat: FinCat) -> FinCat:
    """Transition category of the existential dynamics."""
    return tc(xi(cat))


def prop26_functor(cat: FinCat) -> FunctorData:
    """Canonical comparison of a category with the transition category of its
    essential dynamics: f goes to (dom f, f, cod f)."""
    tc_cat, triples = _tc(zeta(cat))
    tindex = {t: i for i, t in enumerate(triples)}
    obmap = tuple(tc_cat.obs.index(obj) for obj in cat.obs)
    armap = tuple(
        tindex[(cat.obs[cat.dom[f]], f, cat.obs[cat.cod[f]])]
        for f in range(len(cat.arrows))
    )
    return FunctorData(obmap, armap)


def dynamics_isomorphic_via(
    first: Dynamics, second: Dynamics, fn: FunctorData, state_maps: Sequence[Mapping[str, str]]
) -> bool:
    """Whether a category isomorphism plus per-object state bijections carry
    one dynamics exactly onto the other."""
    if not functor_is_iso(fn, first.cat, second.cat):
        return False
    for o in range(len(first.cat.obs)):
        bij = dict(state_maps[o])
        src = first.states[o]
        tgt = second.states[fn.obmap[o]]
        if sorted(bij) != sorted(src) or sorted(bij.values()) != sorted(tgt):
            return False
    for f in range(len(first.cat.arrows)):
        o, t = first.cat.dom[f], first.cat.cod[f]
        send_s, send_t = dict(state_maps[o]), dict(state_maps[t])
        g = fn.armap[f]
        for s, image in first.trans[f].rel.items():
            if frozenset(send_t[b] for b in image) != second.trans[g].rel[send_s[s]]:
                return False
    return True


# ---------------------------------------------------------------------------
# interpretations


def _require_same_category(m: Dynamorphism, source: Dynamics, target: Dynamics) -> None:
    if source.cat != target.cat or m.functor != identity_functor(source.cat):
        raise InputError("this interpretation notion compares dynamics over one shared category")


def _inverse_rel(delta: Mapping[str, frozenset[str]], source_states: Sequence[str], target_states: Sequence[str]) -> dict:
    """Reverse a quasi-deterministic transition as a set-valued table."""
    rel: dict[str, set[str]] = {s: set() for s in target_states}
    for r in source_states:
        image = delta.get(r, frozenset())
        for s in image:
            rel[s].add(r)
    return rel


def interp_in_check(psi: Dynamorphism, alpha: Dynamics, beta: Dynamics) -> dict:
    """Incoming interpretation: conjugating every transition of the finer
    dynamics through the morphism recovers the observed one exactly.

    The direct definition and the commutation-plus-surjectivity test must
    agree; a mismatch would be a bug in this library.
    """
    _require_same_category(psi, alpha, beta)
    flags = dynamorphism_check(psi, alpha, beta)
    if not flags["quasi_deterministic"]:
        raise DomainError("an incoming interpretation must be quasi-deterministic")
    cat = alpha.cat

    entrante = flags["valid"]
    if entrante:
        for f in range(len(cat.arrows)):
            s_obj, t_obj = cat.dom[f], cat.cod[f]
            inv = _inverse_rel(psi.delta[s_obj], alpha.states[s_obj], beta.states[s_obj])
            for s in beta.states[s_obj]:
                image: set[str] = set()
                for r in inv[s]:
                    for t in alpha.trans[f].rel[r]:
                        image |= psi.delta[t_obj].get(t, frozenset())
                if image != set(beta.trans[f].rel[s]):
                    entrante = False
                    break
            if not entrante:
                break

    commutes = flags["valid"]
    if commutes:
        for f in range(len(cat.arrows)):
            s_obj, t_obj = cat.dom[f], cat.cod[f]
            lhs = transition_compose(
                _delta_transition(psi, alpha, beta, t_obj), alpha.trans[f]
            )
            rhs = transition_compose(
                beta.trans[f], _delta_transition(psi, alpha, beta, s_obj)
            )
            if lhs != rhs:
                commutes = False
                break
    surjective = all(
        set(beta.states[o])
        == {s for r in alpha.states[o] for s in psi.delta[o].get(r, frozenset())}
        for o in range(len(cat.obs))
    )
    via = commutes and surjective
    assert entrante == via, "the two incoming-interpretation tests disagree"
    return {"entrante": entrante, "via_prop28": via}


def interp_out_check(phi_m: Dynamorphism, beta: Dynamics, alpha: Dynamics) -> dict:
    """Outgoing interpretation: a dynamorphism from the observed dynamics
    whose images are nonempty and pairwise disjoint; regular when the
    square commutes exactly."""
    _require_same_category(phi_m, beta, alpha)
    flags = dynamorphism_check(phi_m, beta, alpha)
    cat = beta.cat
    nonempty = all(
        phi_m.delta[o].get(s)
        for o in range(len(cat.obs))
        for s in beta.states[o]
    )
    disjoint = True
    for o in range(len(cat.obs)):
        for s0, s1 in itertools.combinations(beta.states[o], 2):
            if phi_m.delta[o].get(s0, frozenset()) & phi_m.delta[o].get(s1, frozenset()):
                disjoint = False
    sortante = flags["valid"] and nonempty and disjoint
    reguliere = flags["valid"]
    if reguliere:
        for f in range(len(cat.arrows)):
            s_obj, t_obj = cat.dom[f], cat.cod[f]
            lhs = transition_compose(alpha.trans[f], _delta_transition(phi_m, beta, alpha, s_obj))
            rhs = transition_compose(_delta_transition(phi_m, beta, alpha, t_obj), beta.trans[f])
            if lhs != rhs:
                reguliere = False
                break
    return {"sortante": sortante, "reguliere": sortante and reguliere}


def interp_associate(m: Dynamorphism, alpha: Dynamics, beta: Dynamics, kind: str) -> tuple[Dynamorphism, dict]:
    """Build the reversed family of an interpretation and test whether the
    pair is mixed, i.e. whether the reversal is itself a dynamorphism.

    ``kind`` is "in" for an incoming interpretation of beta through alpha
    (m goes from alpha to beta) or "out" for an outgoing one (m goes from
    beta to alpha).  The regularity reported for a mixed pair is that of
    its outgoing half.
    """
    cat = alpha.cat
    if kind == "in":
        checks = interp_in_check(m, alpha, beta)
        if not checks["entrante"]:
            raise DomainError("not an incoming interpretation")
        tilde_delta = [
            {k: frozenset(v) for k, v in _inverse_rel(m.delta[o], alpha.states[o], beta.states[o]).items()}
            for o in range(len(cat.obs))
        ]
        tilde = Dynamorphism(identity_functor(cat), tilde_delta)
        mixte = dynamorphism_check(tilde, beta, alpha)["valid"]
        reguliere = interp_out_check(tilde, beta, alpha)["reguliere"] if mixte else None
        return tilde, {"mixte": mixte, "reguliere": reguliere}
    if kind == "out":
        checks = interp_out_check(m, beta, alpha)
        if not checks["sortante"]:
            raise DomainError("not an outgoing interpretation")
        tilde_delta = []
        for o in range(len(cat.obs)):
            rel: dict[str, set[str]] = {r: set() for r in alpha.states[o]}
            for s in beta.states[o]:
                for r in m.delta[o].get(s, frozenset()):
                    rel[r].add(s)
            tilde_delta.append({k: frozenset(v) for k, v in rel.items()})
        tilde = Dynamorphism(identity_functor(cat), tilde_delta)
        mixte = dynamorphism_check(tilde, alpha, beta)["valid"]
        reguliere = checks["reguliere"] if mixte else None
        return tilde, {"mixte": mixte, "reguliere": reguliere}
    raise InputError("kind must be 'in' or 'out'")


def interp_trans_check(m: Dynamorphism, beta: Dynamics, alpha: Dynamics) -> dict:
    """Interpretation across different flow categories: the functor must be
    faithful and the state images nonempty and pairwise disjoint."""
    flags = dynamorphism_check(m, beta, alpha)
    cat = beta.cat
    nonempty = all(
        m.delta[o].get(s)
        for o in range(len(cat.obs))
        for s in beta.states[o]
    )
    disjoint = True
    for o in range(len(cat.obs)):
        for s0, s1 in itertools.combinations(beta.states[o], 2):
            if m.delta[o].get(s0, frozenset()) & m.delta[o].get(s1, frozenset()):
                disjoint = False
    interpretation = flags["valid"] and flags["fidele"] and nonempty and disjoint
    reguliere = flags["valid"]
    if reguliere:
        for f in range(len(cat.arrows)):
            s_obj, t_obj = cat.dom[f], cat.cod[f]
            lhs = transition_compose(_delta_transition(m, beta, alpha, t_obj), beta.trans[f])
            rhs = transition_compose(alpha.trans[m.functor.armap[f]], _delta_transition(m, beta, alpha, s_obj))
            if lhs != rhs:
                reguliere = False
                break
    return {"interpretation": interpretation, "reguliere": interpretation and reguliere}
