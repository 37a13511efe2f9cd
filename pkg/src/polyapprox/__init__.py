"""Explicit low-degree polynomial approximants for boolean functions, with
exact rational and certified big-float arithmetic."""

__version__ = "0.1.0"
