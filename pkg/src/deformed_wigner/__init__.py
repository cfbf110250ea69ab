"""Rank-one deformed Wigner matrices: simulation, limiting laws and exact
combinatorics of the eigenvector overlap profile."""

__version__ = "0.1.0"
