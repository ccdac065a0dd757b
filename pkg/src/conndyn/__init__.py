"""Exact computation with finite connectivity structures and the dynamics
built on them: spaces, foliations, representations, categorical dynamics,
connective categories and connective dynamics."""

from .spaces import Space, PartialEquiv, SeparationDevice
from .foliations import Foliation
from .representations import Representation, RepMorphism
from .fincat import FinCat, FunctorData
from .dynamics import Dynamics, Dynamorphism, Transition
from .conncat import ConnCat
from .conndynamics import ConnDynamics

__all__ = [
    "Space",
    "PartialEquiv",
    "SeparationDevice",
    "Foliation",
    "Representation",
    "RepMorphism",
    "FinCat",
    "FunctorData",
    "Dynamics",
    "Dynamorphism",
    "Transition",
    "ConnCat",
    "ConnDynamics",
]
