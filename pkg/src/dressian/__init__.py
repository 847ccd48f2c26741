"""Tropical Plucker vectors, matroid subdivisions and the Dressians Dr(3,n)."""

__version__ = "0.1.0"
