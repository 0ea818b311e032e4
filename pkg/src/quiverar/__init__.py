"""Auslander-Reiten computations for bound quiver algebras."""

__version__ = "0.1.0"
