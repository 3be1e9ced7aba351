"""Bipartite rigidity realizations of multiassociahedra."""

__version__ = "0.1.0"
