"""Exact computations with cubic Jordan algebras, octonion orders and Freudenthal triple systems."""

__version__ = "0.1.0"
