"""Exact symmetry algebras and moving-frame invariants of affinely homogeneous hypersurfaces."""

__version__ = "0.1.0"
