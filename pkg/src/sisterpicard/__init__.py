"""Exact verification of generator systems for sister Picard modular groups.

The package certifies, in exact arithmetic over Q(sqrt(d)) for
d in {2, 7, 11}: generator membership in the sister group, coset
decompositions relative to the common subgroup, the structure of the
stabilizer of infinity (side pairings, relators), Cygan/spinal sphere
catalogs, and the sphere-coverage of the stabilizer's prism fundamental
domains in the Heisenberg group.
"""

from .exactnum import CQuad, Fraction, RQuad, in_Od, integer_parts, parse_decimal, rquad_sign

__all__ = [
    "CQuad",
    "Fraction",
    "RQuad",
    "in_Od",
    "integer_parts",
    "parse_decimal",
    "rquad_sign",
]

__version__ = "0.1.0"
