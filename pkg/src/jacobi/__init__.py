"""Exact rational algebra of Jacobi diagrams, Lie evaluations and tangle invariants."""

__version__ = "0.1.0"
