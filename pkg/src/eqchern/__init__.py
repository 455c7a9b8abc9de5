"""Exact operator calculus for equivariant Chern characters on the Fock space."""

from .coeff import AuxSeries, QSeries, RatFunc, WindowError, const, pochhammer, var

__all__ = ["AuxSeries", "QSeries", "RatFunc", "WindowError", "const", "pochhammer", "var"]
__version__ = "0.1.0"
