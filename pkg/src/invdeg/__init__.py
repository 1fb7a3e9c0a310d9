"""Minimal degrees of polynomial invariants of diagonalizable groups and supergroups.

Submodules:

- ``exactalg``: prime and rational fields, exact linear algebra, triangular
  lattice bases, nonnegative-kernel feasibility.
- ``diagmin``: minimal invariant degree of diagonal actions (brute force and
  the integer-programming reduction), ``k_g``, group exponents, Reynolds forms.
- ``gl2family``: closed form for a two-generator family and its brute force.
- ``invcrypt`` / ``attack``: invariant-based toy cryptosystem and the
  linear-algebra attack on its public key.
- ``superinv``: superinvariants of ``D_{g,x}``.
"""
from .exactalg import GF, QQ, InvDegError

__version__ = "0.1.0"
__all__ = ["GF", "QQ", "InvDegError", "__version__"]
