"""Exact computations in derived categories of finite-dimensional algebras."""

__version__ = "0.1.0"
