"""Irreducible connected parts and the connectivity order.

The irreducible parts of a space, ordered by inclusion, form a finite
poset; the order of the space is read off the longest strict chain L in
that poset.  Two ordinal conventions coexist for finite spaces: the
height-predecessor convention gives L, while the anchored examples
(a graph with an edge has order 1, the three-ring space has order 1, a
space with no irreducibles has order 0) give max(0, L - 1).  The latter
is normative here; both values are reported.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import DomainError, sorted_family
from .spaces import Space, generate


def is_irreducible(sp: Space, part: int) -> bool:
    """True iff the part is not generated by the other connected parts."""
    if part not in sp.connected:
        raise DomainError("irreducibility is only defined for connected parts")
    if part == 0:
        return False
    others = sp.connected - {part}
    return part not in generate(sp.n, others)


@dataclass(frozen=True)
class IrrPoset:
    """Irreducible connected parts, implicitly ordered by inclusion."""

    n: int
    elements: tuple[int, ...]

    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges (i, j) meaning elements[i] is covered by elements[j]."""
        els = self.elements
        below = [
            [i for i, a in enumerate(els) if a != b and (a & ~b) == 0]
            for b in els
        ]
        edges = []
        for j, down in enumerate(below):
            for i in down:
                # keep only immediate predecessors
                if not any(k != i and k in down and (els[i] & ~els[k]) == 0 for k in down):
                    edges.append((i, j))
        return edges


def irreducibles(sp: Space) -> IrrPoset:
    els = sorted(
        (k for k in sp.connected if k and is_irreducible(sp, k)),
        key=lambda m: (m.bit_count(), m),
    )
    return IrrPoset(sp.n, tuple(els))


def longest_chain(poset: IrrPoset) -> int:
    """Cardinality of the longest strict chain, via DP over the Hasse DAG."""
    m = len(poset.elements)
    if m == 0:
        return 0
    preds: list[list[int]] = [[] for _ in range(m)]
    for i, j in poset.covers():
        preds[j].append(i)
    # elements are pre-sorted by popcount, so predecessors come first
    best = [1] * m
    for j in range(m):
        for i in preds[j]:
            best[j] = max(best[j], best[i] + 1)
    return max(best)


def poset_height(poset: IrrPoset) -> int:
    """Height of a finite poset: one more than the longest chain cardinality."""
    return longest_chain(poset) + 1


def connectivity_order(sp: Space) -> int:
    """Connectivity order of a finite space (example-anchored convention)."""
    return max(0, longest_chain(irreducibles(sp)) - 1)


def connectivity_order_def13(sp: Space) -> int:
    """Alternative height-predecessor value; exceeds the normative one by 1
    whenever the space has at least one irreducible part."""
    return poset_height(irreducibles(sp)) - 1


def order_report(sp: Space) -> dict:
    poset = irreducibles(sp)
    chain = longest_chain(poset)
    return {
        "irreducibles": sorted_family(poset.elements),
        "chain_length": chain,
        "order": max(0, chain - 1),
        "order_def13": chain,
    }
