"""Exact wall-and-chamber toolkit for moduli of log Fano products.

Subpackages:
  exactq       exact rationals and fractional-linear reparametrizations
  wallsets     per-family wall registries on the unit interval
  arrangement  axis-parallel product chamber complexes and their diagrams
  stackalg     symbolic moduli descriptors and finite groupoid models
  invariants   dimension / volume / Hilbert-polynomial calculus for products
  gitwalls     independent re-derivation of the degree-3 slope walls
  cli          command-line front end
"""

from .exactq import MoebiusMap, Rational, format_rational, parse_rational
from .wallsets import Chamber, Coord, FamilyRecord, WallSet, c_to_t_walls, load_registry

__version__ = "0.1.0"

__all__ = [
    "Chamber",
    "Coord",
    "FamilyRecord",
    "MoebiusMap",
    "Rational",
    "WallSet",
    "c_to_t_walls",
    "format_rational",
    "load_registry",
    "parse_rational",
    "__version__",
]
