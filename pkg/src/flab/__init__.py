"""Exact-arithmetic toolkit for modular index combinatorics, graded Lie
rings, free Lie rewriting, and finite group fixed-point checks."""
from __future__ import annotations

from .errors import CapacityError, InputError

__version__ = "0.1.0"

__all__ = ["CapacityError", "InputError", "__version__"]
