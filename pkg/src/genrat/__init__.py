"""Plane polynomials generating the field of rational functions in two variables."""

__version__ = "0.1.0"
