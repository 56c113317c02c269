"""Exact split Albert algebras, F4 automorphisms and k-involution classification."""

__version__ = "0.1.0"
