"""Exact-arithmetic laboratory for choiceless combinatorics."""

__version__ = "0.1.0"
