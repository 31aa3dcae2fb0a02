"""Numerical semigroups, the order bound, and deformations of monomial curves."""

from .semigroup import NumericalSemigroup, from_generators, from_small_elements, parse_semigroup, profile

__all__ = ["NumericalSemigroup", "from_generators", "from_small_elements", "parse_semigroup", "profile"]
