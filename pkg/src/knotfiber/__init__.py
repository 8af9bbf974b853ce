"""Exact-arithmetic toolkit for SL(3,Z) monodromies of knot groups and the
integral topology of the torus fibrations they define."""

__version__ = "0.1.0"
