"""Finite groupoids, bibundles and their invariants."""

__version__ = "0.1.0"
