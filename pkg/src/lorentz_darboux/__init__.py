"""Lorentz-Darboux transformations of polarized curves in the Minkowski plane."""
from .splitc import SplitComplex
from .darboux import DarbouxParams, DarbouxSolution, Mode, Tolerances, integrate

__all__ = ["SplitComplex", "DarbouxParams", "DarbouxSolution", "Mode", "Tolerances", "integrate"]
__version__ = "0.1.0"
