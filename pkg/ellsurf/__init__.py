"""Exact computations on elliptic surfaces over Q(t) and their reductions modulo p."""

__all__ = ["__version__"]

__version__ = "0.1.0"
