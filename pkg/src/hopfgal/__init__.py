"""Nilpotent ring structures on finite abelian p-groups and their
realization as regular subgroups of the holomorph, with exact
verification of the ideal / invariant-subgroup lattice correspondence."""

from .abelian import GroupSpec, Subgroup
from .errors import CapExceeded, InputError, TheoremViolation
from .holomorph import AffineMap, RegularSubgroup
from .nilring import RingStructure

__all__ = [
    "AffineMap",
    "CapExceeded",
    "GroupSpec",
    "InputError",
    "RegularSubgroup",
    "RingStructure",
    "Subgroup",
    "TheoremViolation",
]

__version__ = "0.1.0"
