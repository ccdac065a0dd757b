import random

import pytest

from conndyn.core import DomainError, InputError, bits, full_mask
from conndyn.foliations import Foliation, foliation_morphism_check, is_regular, leaves
from conndyn.representations import (
    RepMorphism,
    Representation,
    adjunction_transpose_bwd,
    adjunction_transpose_fwd,
    adjunction_verify,
    canonical_double,
    compose,
    compose_rep_morphisms,
    connective_maps,
    double_on_morphism,
    epsilon_rep,
    hom_foliation_morphisms,
    hom_rep_morphisms,
    identity_rep_morphism,
    is_clear,
    is_distinct,
    phi,
    phi_on_morphism,
    prop18_iso,
    r_down,
    r_down_on_morphism,
    r_up,
    r_up_on_morphism,
    rep_morphism_check,
    rep_validate,
)
from conndyn.spaces import Space, discrete_integral, graph_to_space, grossier, is_integral

from fixtures import B3, P3, X3, Z6
from generators import random_regular_foliation, random_rio_rep, random_space, random_valid_rep
from oracles import union_image

RNG_SEED = 20250813

P7 = graph_to_space(7, [(i, i + 1) for i in range(6)])


def three_ring_rep() -> Representation:
    # object X3 drawn along a seven-point path: two short images and one
    # three-piece image covering the rest
    return Representation.build(X3, P7, [[1], [5], [0, 2, 3, 4, 6]])


def test_rep_validate_examples():
    rho = three_ring_rep()
    assert rep_validate(rho)
    assert union_image(rho.images, 0b111) == full_mask(7)
    assert rep_validate(epsilon_rep(B3))
    bad = Representation(B3, B3, (0, 1, 2))
    assert not rep_validate(bad)


def test_rep_validate_connected_images_flag():
    rho = three_ring_rep()
    # the third image is a disconnected part of the path
    assert not rep_validate(rho, require_connected_images=True)
    assert rep_validate(epsilon_rep(P3), require_connected_images=True)


def test_clear_distinct_examples():
    dbl = canonical_double(B3)
    assert is_clear(dbl) and is_distinct(dbl)
    point = Space.build(1, [[0]])
    squash = Representation(Space.build(2, [[0], [1]]), point, (1, 1))
    assert not is_distinct(squash)
    eps = epsilon_rep(B3)
    assert is_clear(eps) and is_distinct(eps)


def test_compose_unit_laws_and_example():
    rho = three_ring_rep()
    eps_src = epsilon_rep(rho.object_space)
    eps_tgt = epsilon_rep(rho.ambient)
    assert compose(rho, eps_src) == rho
    assert compose(eps_tgt, rho) == rho
    two = Space.build(1, [[0]])
    four = grossier(4)
    inner = Representation(two, Space.build(2, [[0], [1], [0, 1]]), (0b11,))
    outer = Representation(inner.ambient, four, (0b0100, 0b1100))
    assert compose(outer, inner).images == (0b1100,)


def test_compose_requires_matching_spaces():
    with pytest.raises(InputError):
        compose(epsilon_rep(B3), epsilon_rep(P3))


def test_compose_associativity_randomized():
    rng = random.Random(RNG_SEED)
    from generators import random_rep_chain

    done = 0
    while done < 150:
        chain = random_rep_chain(rng, (4, 4, 4, 4))
        if chain is None:
            continue
        done += 1
        rho, tau, ups = chain
        left = compose(ups, compose(tau, rho))
        right = compose(compose(ups, tau), rho)
        assert left == right
        assert rep_validate(left)


def test_canonical_double_examples():
    dbl = canonical_double(X3)
    assert dbl.ambient.n == 6
    nontrivial = {k for k in dbl.ambient.connected if k.bit_count() >= 2}
    assert nontrivial == {0b001001, 0b010010, 0b111111}
    single = canonical_double(Space.build(1, [[0]]))
    assert single.ambient == grossier(2)
    silent = canonical_double(Space(2, frozenset({0})))
    assert silent.ambient == discrete_integral(4)


def test_canonical_double_clear_distinct_small():
    rng = random.Random(RNG_SEED + 1)
    from oracles import enumerate_structures

    for n in range(4):
        for fam in enumerate_structures(n):
            dbl = canonical_double(Space(n, fam))
            assert rep_validate(dbl) and is_clear(dbl) and is_distinct(dbl)
    for _ in range(60):
        sp = random_space(rng, rng.choice([4, 5]), rng.random() < 0.5)
        dbl = canonical_double(sp)
        assert rep_validate(dbl) and is_clear(dbl) and is_distinct(dbl)


def test_rep_morphism_check_examples():
    rho = three_ring_rep()
    assert rep_morphism_check(identity_rep_morphism(rho), rho, rho)
    # points of a representation: a connected object point plus a connected
    # ambient point inside its image
    terminal = epsilon_rep(grossier(1))
    accepted = set()
    for p in range(rho.object_space.n):
        for q in range(rho.ambient.n):
            m = RepMorphism((p,), (q,))
            if rep_morphism_check(m, terminal, rho):
                accepted.add((p, q))
    expected = {
        (p, q)
        for p in range(3)
        if (1 << p) in X3.connected
        for q in bits(rho.images[p])
        if (1 << q) in P7.connected
    }
    assert accepted == expected
    # ambient-side map breaking connectivity is rejected
    bad = RepMorphism(tuple(range(3)), (0, 2, 1, 3, 4, 5, 6))
    assert not rep_morphism_check(bad, rho, rho)


def test_double_on_morphism_is_functorial():
    rng = random.Random(RNG_SEED + 2)
    for _ in range(60):
        src = random_space(rng, rng.randint(0, 4), rng.random() < 0.5)
        tgt = random_space(rng, rng.randint(1, 4), True)
        candidates = connective_maps(src, tgt)
        if not candidates:
            continue
        f = rng.choice(candidates)
        m = double_on_morphism(f, src, tgt)
        assert rep_morphism_check(m, canonical_double(src), canonical_double(tgt))


def test_phi_leaf_counts_on_the_path_picture():
    rho = three_ring_rep()
    assert len(leaves(phi(rho, "D", "K"))) == 2
    assert len(leaves(phi(rho, "D", "G"))) == 2
    assert len(leaves(phi(rho, "K", "K"))) == 5
    assert len(leaves(phi(rho, "K", "G"))) == 5
    g = phi(rho, "G", "G")
    assert len(leaves(g)) == 3
    assert set(leaves(g)) == set(rho.images)
    with pytest.raises(DomainError):
        phi(rho, "G", "D")


def test_phi_identity_selector_is_regular():
    rng = random.Random(RNG_SEED + 3)
    done = 0
    while done < 120:
        obj = random_space(rng, rng.randint(0, 3), rng.random() < 0.5)
        amb = random_space(rng, rng.randint(1, 4), rng.random() < 0.5)
        rho = random_valid_rep(rng, obj, amb)
        if rho is None:
            continue
        done += 1
        assert is_regular(phi(rho, "K", "K"))


def test_phi_ignores_first_selector_on_integral_objects():
    rng = random.Random(RNG_SEED + 4)
    done = 0
    while done < 80:
        obj = random_space(rng, rng.randint(0, 3), integral=True)
        amb = random_space(rng, rng.randint(1, 4), rng.random() < 0.5)
        rho = random_valid_rep(rng, obj, amb)
        if rho is None:
            continue
        done += 1
        for g1 in ("K", "G"):
            reference = phi(rho, "D", g1)
            for g0 in ("D", "K", "G"):
                if g0 in ("D", "K", "G")[: ("D", "K", "G").index(g1) + 1]:
                    assert phi(rho, g0, g1) == reference


def test_phi_distinct_integral_leaves_are_the_images():
    rng = random.Random(RNG_SEED + 5)
    for _ in range(100):
        rho = random_rio_rep(rng)
        fol = phi(rho, "K", "K")
        assert set(leaves(fol)) == {img for img in rho.images}


def test_phi_on_morphism_gives_foliation_morphisms():
    rng = random.Random(RNG_SEED + 6)
    done = 0
    while done < 50:
        rho = random_rio_rep(rng, max_points=2)
        rho2 = random_rio_rep(rng, max_points=2)
        found = hom_rep_morphisms(rho, rho2)
        if not found:
            continue
        done += 1
        m = rng.choice(found)
        beta = phi_on_morphism(m)
        for pair in (("K", "K"), ("G", "G"), ("D", "K")):
            assert foliation_morphism_check(beta, phi(rho, *pair), phi(rho2, *pair))


def test_r_down_examples():
    rep = r_down(Z6)
    assert rep.object_space == Space(3, frozenset({0}))
    assert rep.images == leaves(Z6)
    regular = Foliation.build(2, internal=[[0], [1]], external=[[0], [1], [0, 1]])
    assert is_integral(r_down(regular).object_space)
    lone = Foliation(2, grossier(2).connected, grossier(2).connected)
    assert r_down(lone).object_space == grossier(1)


def test_r_down_object_integral_iff_regular_cases():
    rng = random.Random(RNG_SEED + 7)
    for _ in range(80):
        fol = random_regular_foliation(rng, rng.randint(0, 5))
        assert is_integral(r_down(fol).object_space)


def test_r_down_on_morphism():
    identity = tuple(range(6))
    m = r_down_on_morphism(identity, Z6, Z6)
    assert m == identity_rep_morphism(r_down(Z6))
    collapse_target = Foliation(1, grossier(1).connected, grossier(1).connected)
    m2 = r_down_on_morphism((0,) * 6, Z6, collapse_target)
    assert m2.alpha == (0, 0, 0)
    assert rep_morphism_check(m2, r_down(Z6), r_down(collapse_target))


def test_r_down_on_strict_morphisms_random():
    rng = random.Random(RNG_SEED + 8)
    done = 0
    while done < 40:
        fol = random_regular_foliation(rng, rng.randint(1, 4))
        fol2 = random_regular_foliation(rng, rng.randint(1, 4))
        maps = [
            f
            for f in __import__("itertools").product(range(fol2.n), repeat=fol.n)
            if foliation_morphism_check(f, fol, fol2)
        ]
        if not maps:
            continue
        done += 1
        m = r_down_on_morphism(rng.choice(maps), fol, fol2)
        assert rep_morphism_check(m, r_down(fol), r_down(fol2))


def test_r_up_examples():
    rep = r_up(Z6)
    assert rep.object_space == Space.build(3, [[0, 1], [1, 2], [0, 1, 2]])
    from conndyn.spaces import generate

    assert rep.ambient.connected == generate(6, Z6.internal | Z6.external, integral=True)
    empty = Foliation(3, frozenset({0}), grossier(3).connected)
    assert r_up(empty).object_space.n == 0
    # a leaf that is not connected in the quotient still has a connected
    # ambient image, so the quotient representation can fail to be clear
    assert is_distinct(rep)
    assert not is_clear(rep)


def test_r_up_always_distinct_never_guaranteed_clear():
    rng = random.Random(RNG_SEED + 9)
    from generators import random_foliation

    saw_unclear = False
    for _ in range(200):
        fol = random_foliation(rng, rng.randint(0, 5))
        rep = r_up(fol)
        assert rep_validate(rep)
        assert is_distinct(rep)
        if not is_clear(rep):
            saw_unclear = True
    assert saw_unclear


def test_r_up_on_morphism_matches_leaf_bookkeeping():
    identity = tuple(range(6))
    m = r_up_on_morphism(identity, Z6, Z6)
    assert m.alpha == (0, 1, 2) and m.beta == identity
    assert rep_morphism_check(m, r_up(Z6), r_up(Z6))


def test_adjunction_transposes_roundtrip():
    rng = random.Random(RNG_SEED + 10)
    done = 0
    while done < 60:
        fol = random_regular_foliation(rng, rng.randint(0, 3))
        rho = random_rio_rep(rng)
        down = r_down(fol)
        homs = hom_rep_morphisms(down, rho)
        target = phi(rho, "K", "K")
        betas = hom_foliation_morphisms(fol, target)
        if not homs:
            assert not betas
            continue
        done += 1
        for m in homs:
            beta = adjunction_transpose_fwd(m, fol, rho)
            assert beta in betas
            assert adjunction_transpose_bwd(beta, fol, rho) == m
        for beta in betas:
            m = adjunction_transpose_bwd(tuple(beta), fol, rho)
            assert adjunction_transpose_fwd(m, fol, rho) == tuple(beta)


def test_adjunction_verify_reports():
    fol = Foliation.build(2, internal=[[0], [1]], external=[[0], [1], [0, 1]])
    rho = canonical_double(B3)
    report = adjunction_verify(fol, rho)
    assert report["hom_left"] == report["hom_right"] > 0
    assert report["bijection"]
    empty = Foliation(2, frozenset({0}), discrete_integral(2).connected)
    report = adjunction_verify(empty, rho)
    assert report["bijection"]
    with pytest.raises(DomainError):
        adjunction_verify(Z6, rho)  # not regular


def test_adjunction_verify_capacity():
    big = Foliation(7, frozenset({0}), frozenset({0}) | {1 << i for i in range(7)})
    with pytest.raises(Exception):
        adjunction_verify(big, canonical_double(B3))


def test_prop18_examples():
    for rho in (canonical_double(X3), epsilon_rep(discrete_integral(3))):
        fwd, bwd = prop18_iso(rho)
        assert fwd.beta == tuple(range(rho.ambient.n))
    squash = Representation(Space.build(2, [[0], [1]]), grossier(1), (1, 1))
    with pytest.raises(DomainError):
        prop18_iso(squash)


def test_rep_morphism_composition_is_associative_on_found_morphisms():
    rng = random.Random(RNG_SEED + 11)
    rho = canonical_double(Space.build(2, [[0], [1]]))
    homs = hom_rep_morphisms(rho, rho)
    for _ in range(30):
        a, b, c = (rng.choice(homs) for _ in range(3))
        left = compose_rep_morphisms(a, compose_rep_morphisms(b, c))
        right = compose_rep_morphisms(compose_rep_morphisms(a, b), c)
        assert left == right
