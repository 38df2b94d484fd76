"""Orbita package: Kepler's laws, the inverse-square law and the shell theorem, cross-checked numerically."""

__version__ = "0.3.0"
