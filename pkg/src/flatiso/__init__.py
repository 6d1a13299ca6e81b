"""Exact combinatorics of diagonal Z_2^k actions on flat tori: almost-conjugate
representation families, Sunada-isospectral Bieberbach groups of diagonal
type, and the primitive-form invariants of their rational cohomology rings."""

from .diagrep import DiagonalRep
from .errors import CapabilityError

__all__ = ["DiagonalRep", "CapabilityError"]
__version__ = "0.1.0"
