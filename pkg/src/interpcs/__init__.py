"""Interpolating coherent states between the Heisenberg-Weyl and SU(1,1) limits.

The deformation parameter k runs from 0 (ordinary boson ladder) to 1
(single-photon SU(1,1)).  Everything lives on a truncated Fock space.
"""

from . import algebra, fock, measure, observables, specfun, states
from .fock import AlgebraContext, make_context
from .states import StateLabel, TruncationError, make_state

__version__ = "0.1.0"

__all__ = [
    "AlgebraContext",
    "StateLabel",
    "TruncationError",
    "algebra",
    "fock",
    "make_context",
    "make_state",
    "measure",
    "observables",
    "specfun",
    "states",
]
