"""Generalized covering radii and Hamming weights of binary BCH(2, m) codes."""

__version__ = "0.1.0"
