"""Exact combinatorics of multi-oriented graphs, props and graph complexes."""

__version__ = "0.1.0"
