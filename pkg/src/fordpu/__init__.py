"""Ford domain verification toolkit for a one-parameter family of (3,3,4) triangle group representations."""
from .config import DEFAULT, Tolerances
from .group import ModuliPoint, generators
from .hermitian import GroupElement

__all__ = ["DEFAULT", "GroupElement", "ModuliPoint", "Tolerances", "generators"]
