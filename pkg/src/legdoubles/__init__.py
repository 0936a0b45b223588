"""Exact combinatorics of Legendrian doubles, twist-spuns and their fillings."""

__version__ = "0.1.0"
