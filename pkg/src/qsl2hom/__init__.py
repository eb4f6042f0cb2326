"""Twisted Hochschild and cyclic homology of the quantum group A(SL_q(2))."""

from .scalars import GenericField, SpecializedField, make_field

__all__ = ["GenericField", "SpecializedField", "make_field"]
__version__ = "0.1.0"
