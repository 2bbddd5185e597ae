"""Exact normal ordering of boson exponentials and zero-dimensional graph counting."""

__version__ = "0.1.0"
