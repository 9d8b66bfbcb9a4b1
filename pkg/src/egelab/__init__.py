"""Simulation and exact oracles for characteristic polynomials of elliptic
Ginibre random matrices."""

__version__ = "0.1.0"
