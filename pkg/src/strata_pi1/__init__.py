"""Fundamental groups of spaces of real polynomials avoiding root-multiplicity patterns."""

__version__ = "0.1.0"
