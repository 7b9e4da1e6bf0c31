"""Homological invariants and an exact-diagonalization oracle for higher abelian quantum double models."""

__version__ = "0.1.0"
