"""Frenet-Serret apparatus and special curves in Euclidean 4-space."""

__version__ = "0.1.0"
