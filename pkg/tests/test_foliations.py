import random

import pytest

from conndyn.core import InputError, bits, full_mask
from conndyn.foliations import (
    Foliation,
    foliation_morphism_check,
    is_regular,
    leaf_space_induced,
    leaf_space_quotient,
    leaves,
)
from conndyn.spaces import Space, desintegrated, grossier

from fixtures import Z6

RNG_SEED = 20250812


def test_regularity_examples():
    assert not is_regular(Z6)
    assert is_regular(Foliation.build(3, internal=[], external=[[0, 1]]))
    assert is_regular(Foliation(6, Z6.external, Z6.external)) is True


def test_foliation_rejects_invalid_families():
    with pytest.raises(InputError):
        Foliation(3, frozenset({0, 0b011, 0b110}), frozenset({0}))


def test_leaves_examples():
    assert leaves(Z6) == (0b000011, 0b001100, 0b110000)
    assert leaves(Foliation(4, frozenset({0}), frozenset({0}))) == ()
    assert leaves(Foliation(3, grossier(3).connected, frozenset({0}))) == (0b111,)


def test_leaf_spaces_on_the_three_pair_fixture():
    assert leaf_space_induced(Z6) == desintegrated(3)
    assert leaf_space_quotient(Z6) == Space.build(3, [[0, 1], [1, 2], [0, 1, 2]])


def test_leaf_space_quotient_identity_case():
    # singleton internal classes over the full support leave the external
    # space untouched
    sp = Space.build(3, [[0], [1], [2], [0, 1]])
    fol = Foliation(3, frozenset({0, 1, 2, 4}), sp.connected)
    assert leaf_space_quotient(fol) == sp


def test_leaf_not_containing_external_part_is_a_non_integral_point():
    # single leaf {0,1}, external structure with nothing inside the leaf
    fol = Foliation.build(2, internal=[[0, 1]], external=[])
    quotient = leaf_space_quotient(fol)
    assert quotient.n == 1 and quotient.connected == frozenset({0})
    induced = leaf_space_induced(fol)
    assert induced.n == 1 and induced.connected == frozenset({0})


def test_leaves_partition_the_domain():
    rng = random.Random(RNG_SEED)
    from generators import random_foliation

    for _ in range(150):
        fol = random_foliation(rng, rng.randint(0, 5))
        seen = 0
        for leaf in leaves(fol):
            assert leaf and (leaf & seen) == 0
            seen |= leaf
        present = 0
        for k in fol.internal:
            present |= k
        assert seen == present


def test_induced_finer_than_quotient():
    rng = random.Random(RNG_SEED + 1)
    from generators import random_foliation

    for _ in range(200):
        fol = random_foliation(rng, rng.randint(0, 5))
        entrant = leaf_space_induced(fol)
        sortant = leaf_space_quotient(fol)
        assert entrant.n == sortant.n
        assert entrant.connected <= sortant.connected


def test_external_part_meeting_every_leaf_connects_them():
    rng = random.Random(RNG_SEED + 2)
    from generators import random_foliation

    for _ in range(200):
        fol = random_foliation(rng, rng.randint(1, 5))
        lvs = leaves(fol)
        sortant = leaf_space_quotient(fol)
        for combo in range(1 << len(lvs)):
            union = 0
            for i in bits(combo):
                union |= lvs[i]
            witnessed = any(
                k and (k & ~union) == 0 and all((k & lvs[i]) for i in bits(combo))
                for k in fol.external
            )
            if witnessed:
                assert combo in sortant.connected


def test_morphism_check_examples():
    identity = tuple(range(6))
    assert foliation_morphism_check(identity, Z6, Z6, strict=True)
    collapse_target = Foliation(1, grossier(1).connected, grossier(1).connected)
    collapse = (0,) * 6
    assert foliation_morphism_check(collapse, Z6, collapse_target)
    assert foliation_morphism_check(collapse, Z6, collapse_target, strict=True)
    # a map breaking the external structure is rejected
    broken_target = Foliation(6, Z6.internal, frozenset({0}))
    assert not foliation_morphism_check(identity, Z6, broken_target)


def test_strict_flag_requires_leaf_onto_leaf():
    wide = Foliation.build(2, internal=[[0], [0, 1]], external=[[0, 1]])
    narrow = Foliation.build(2, internal=[[0]], external=[[0, 1]])
    assert foliation_morphism_check((0, 1), narrow, wide)
    assert not foliation_morphism_check((0, 1), narrow, wide, strict=True)
