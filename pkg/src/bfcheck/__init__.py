"""Exact finite-group checks of centralizer-size bounds for non-abelian groups."""

__version__ = "0.1.0"
