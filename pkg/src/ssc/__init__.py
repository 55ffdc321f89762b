"""Weakly commuting periodic surface homeomorphisms and their data sets."""

__version__ = "0.1.0"
