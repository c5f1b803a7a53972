"""Theta cells, cellular sets and the shift suspension."""

__version__ = "0.1.0"
