"""Proof kernel for the display calculus D'.EAK."""
from .syntax import DeakError

__all__ = ["DeakError"]
