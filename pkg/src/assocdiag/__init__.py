"""Exact combinatorics of a cellular diagonal on the associahedra."""

__version__ = "0.1.0"
