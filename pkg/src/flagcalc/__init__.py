"""Exact Lie-theoretic computations on flag manifolds and Bott-Samelson towers."""
__version__ = "0.1.0"
