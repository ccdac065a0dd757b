"""Connective dynamics: a proper dynamics with connectivity structures on
its arrows and on its states.

The associated foliation lives on the state set: its internal structure is
generated by the one-step reachability sets of connected arrow sets, its
external structure is the given state structure.  The order of the
dynamics is the connectivity order of the induced leaf space.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import DomainError, InputError, bits
from .dynamics import Dynamics, is_proper
from .foliations import Foliation, leaf_space_induced, leaves
from .order import connectivity_order
from .spaces import generate, validate_structure


@dataclass(frozen=True)
class ConnDynamics:
    dyn: Dynamics
    arrow_structure: frozenset[int]
    state_structure: frozenset[int]

    def __post_init__(self) -> None:
        if not is_proper(self.dyn):
            raise DomainError("connective dynamics are defined over proper dynamics")
        object.__setattr__(self, "arrow_structure", frozenset(self.arrow_structure))
        object.__setattr__(self, "state_structure", frozenset(self.state_structure))
        if not validate_structure(len(self.dyn.cat.arrows), self.arrow_structure):
            raise InputError("arrow family is not a connectivity structure")
        if not validate_structure(len(self.dyn.st()), self.state_structure):
            raise InputError("state family is not a connectivity structure")

    @property
    def state_order(self) -> tuple[str, ...]:
        return self.dyn.st()


def reach_set(cd: ConnDynamics, arrow_set: int, state: str) -> frozenset[str]:
    """States reachable from one state through some arrow of the set."""
    out: set[str] = set()
    for f in bits(arrow_set):
        image = cd.dyn.trans[f].rel.get(state)
        if image:
            out |= image
    return frozenset(out)


def dyn_foliation(cd: ConnDynamics) -> Foliation:
    """Support is the state set; internally connected parts are generated by
    the reachability sets of connected arrow sets from single states."""
    states = cd.state_order
    index = {s: i for i, s in enumerate(states)}
    fam = set()
    for arrow_set in cd.arrow_structure:
        for state in states:
            mask = 0
            for b in reach_set(cd, arrow_set, state):
                mask |= 1 << index[b]
            fam.add(mask)
    internal = generate(len(states), fam)
    return Foliation(len(states), internal, cd.state_structure)


def dyn_leaves(cd: ConnDynamics) -> list[list[str]]:
    states = cd.state_order
    return [[states[i] for i in bits(leaf)] for leaf in leaves(dyn_foliation(cd))]


def dyn_order(cd: ConnDynamics) -> int:
    """Connectivity order of the induced leaf space of the foliation."""
    return connectivity_order(leaf_space_induced(dyn_foliation(cd)))
