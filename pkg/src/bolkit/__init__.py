"""Exact and numerical tools for three-dimensional Bol loops realized as sections in Lie groups."""

__version__ = "0.1.0"
