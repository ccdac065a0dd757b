"""Shared hand-built values used across the test modules."""

from __future__ import annotations

import itertools

from conndyn.dynamics import Dynamics
from conndyn.fincat import FinCat, arrow_category, cyclic_group_category, monoid_category_from_rows
from conndyn.foliations import Foliation
from conndyn.spaces import Space, graph_to_space


def borromean(n: int = 3) -> Space:
    """Only the empty set, singletons and the full set are connected."""
    return Space(n, frozenset({0, (1 << n) - 1}) | {1 << i for i in range(n)})


B3 = borromean(3)

# three points a, b, c with {a}, {b} and the full set connected, {c} not
X3 = Space.build(3, [[0], [1], [0, 1, 2]])

P3 = graph_to_space(3, [(0, 1), (1, 2)])


def chain_space(n: int) -> Space:
    """Initial segments {0}, {0,1}, ..., {0..n-1} are connected."""
    fam = {0}
    mask = 0
    for i in range(n):
        mask |= 1 << i
        fam.add(mask)
    return Space(n, frozenset(fam))


# support a, a', b, b', c, c' -> 0..5: three internal pairs, two external links
Z6 = Foliation.build(6, internal=[[0, 1], [2, 3], [4, 5]], external=[[0, 2], [3, 5]])

ARR2 = arrow_category()
C3 = cyclic_group_category(3)


def dyn_beta() -> Dynamics:
    """One state over each end of the single arrow, forced step p -> q."""
    return Dynamics(
        ARR2,
        [["p"], ["q"]],
        [{"p": {"p"}}, {"q": {"q"}}, {"p": {"q"}}],
    )


DYNB = dyn_beta()


def symmetric_group_category(n: int = 3) -> FinCat:
    perms = list(itertools.permutations(range(n)))
    names = ["".join(map(str, p)) for p in perms]

    def mul(p, q):
        return tuple(p[q[i]] for i in range(n))

    rows = [[names[perms.index(mul(p, q))] for q in perms] for p in perms]
    return monoid_category_from_rows(names, rows, names[0])
