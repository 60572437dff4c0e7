"""autoloc: exact local automorphic computations.

Newvector Whittaker values, local L-factors (standard, Rankin-Selberg,
adjoint, Asai, imprimitive), Satake-level base-change transfers, the
congruence-number calculus over p-local rings, and integral models of
algebraic GL3-representations.  Everything is exact rational arithmetic;
half powers of q are carried symbolically.
"""

__version__ = "0.1.0"

from .errors import InputError, InternalError

__all__ = ["InputError", "InternalError", "__version__"]
