"""Steenrod-closed C3-invariant parameter ideals in F2[a, b]."""

__version__ = "0.1.0"
