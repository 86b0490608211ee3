"""Exact computations for quasimap spaces into a quadric.

Series, Gröbner bases, Koszul (BRST) cohomology and the two-term
semi-infinite complex of the loop algebras of a quadric cone.
"""

from .quadric import HYPERBOLIC, ORTHONORMAL, QuasimapSpec

__all__ = ["QuasimapSpec", "HYPERBOLIC", "ORTHONORMAL"]
__version__ = "0.1.0"
