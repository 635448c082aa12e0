"""Necklace moduli of non-split Cartan modular curves, in exact arithmetic."""

from .fqarith import GammaChoice, InvalidGamma, InvalidPrime, find_gamma
from .necklace import enumerate_necklaces, enumerate_oriented
from .pairing import pairing_charpoly, pairing_matrix

__version__ = "0.1.0"

__all__ = [
    "GammaChoice", "InvalidGamma", "InvalidPrime", "enumerate_necklaces", "enumerate_oriented",
    "find_gamma", "pairing_charpoly", "pairing_matrix",
]
