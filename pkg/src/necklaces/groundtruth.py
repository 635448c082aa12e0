"""Published reference data, kept in the printed form and parsed at runtime.

Data version 1.
"""

from __future__ import annotations

from .fqarith import find_gamma
from .necklace import necklace_of, parse_necklace, canonical_rotation
from .polynomial import IntPolynomial, expand_factored, parse_factored

DATA_VERSION = 1

# gamma used for the published necklace lists
PUBLISHED_GAMMA = {5: (1, 2), 7: (1, 3)}

# p = 5, t = 1, n = 2; listed order matters for the pairing facts
NECKLACES_5 = """
(0,1,2,4,∞,3) (0,1,3,∞,2,4) (0,1,4,2,3,∞) (0,1,∞,3,4,2) (0,2,1,∞,4,3)
(0,3,1,2,∞,4) (0,3,2,1,4,∞) (0,2,3,4,1,∞) (0,2,∞,1,3,4) (0,4,1,3,2,∞)
"""

# p = 7, t = 1, n = 3
NECKLACES_7 = """
(0, ∞, 2, 3, 5, 1, 4, 6) (0, 6, 3, 5, ∞, 2, 4, 1) (0, ∞, 3, 1, 4, 5, 6, 2)
(0, ∞, 1, 5, 6, 4, 2, 3) (0, 3, ∞, 2, 5, 4, 6, 1) (0, 3, 4, 5, 1, 6, ∞, 2)
(0, 2, 1, 4, ∞, 3, 6, 5) (0, 2, 3, ∞, 5, 6, 1, 4) (0, 5, 4, ∞, 2, 1, 6, 3)
(0, 5, ∞, 1, 6, 2, 3, 4) (0, 3, 5, 6, ∞, 1, 2, 4) (0, 5, 1, 2, 3, 6, 4, ∞)
(0, 3, 1, ∞, 4, 2, 5, 6) (0, 1, ∞, 3, 4, 6, 2, 5) (0, ∞, 5, 4, 2, 6, 3, 1)
(0, 2, 4, 3, 6, ∞, 5, 1) (0, 6, 2, ∞, 1, 4, 3, 5) (0, 4, ∞, 5, 2, 3, 1, 6)
(0, ∞, 6, 2, 1, 3, 5, 4) (0, 4, 6, ∞, 3, 5, 2, 1) (0, 6, ∞, 4, 3, 1, 5, 2)
"""

# Characteristic polynomials of the pairing matrix.  p = 5 and 7 are
# assembled from the published eigenvalues: 6, 1 (x4), 4 (x5) and
# 12, 4 +- 2 sqrt 2 (x6 each), 3 (x8).
CHARPOLY_TABLE = {
    5: "(X - 6)*(X - 1)^4*(X - 4)^5",
    7: "(X - 12)*(X^2 - 8*X + 8)^6*(X - 3)^8",
    11: "(X - 30)*(X - 2)^10*(X - 8)^20*(X^2 - 10*X + 5)^12",
    13: "(X - 42)*(X^3 - 19*X^2 + 83*X - 1)^12*(X - 12)^14*(X - 4)^27",
    17: "(X - 72)*(X - 1)^16*(X^3 - 27*X^2 + 195*X - 361)^16*(X - 16)^17"
    "*(X - 8)^18*(X^2 - 16*X + 32)^18",
    19: "(X - 90)*(X - 18)^18*(X^4 - 32*X^3 + 304*X^2 - 768*X + 256)^18"
    "*(X - 3)^20*(X^3 - 33*X^2 + 315*X - 867)^20",
}


def published_necklaces(p: int) -> list[tuple[int, ...]]:
    """The published necklace sequences for p = 5 or 7, in listed order, as printed."""
    text = {5: NECKLACES_5, 7: NECKLACES_7}.get(p)
    if text is None:
        raise KeyError(f"no published necklace list for p={p}")
    chunks = [c for c in text.replace("\n", " ").split(")") if c.strip()]
    return [parse_necklace(c + ")", p) for c in chunks]


def published_necklace_keys(p: int) -> list[tuple[int, ...]]:
    """Published necklaces normalised to canonical rotation and orientation."""
    return [necklace_of(canonical_rotation(v)) for v in published_necklaces(p)]


def published_gamma(p: int):
    return find_gamma(p, PUBLISHED_GAMMA[p]) if p in PUBLISHED_GAMMA else find_gamma(p)


def table_factors(p: int):
    if p not in CHARPOLY_TABLE:
        raise KeyError(f"no reference characteristic polynomial for p={p}")
    return parse_factored(CHARPOLY_TABLE[p])


def table_charpoly(p: int) -> IntPolynomial:
    return expand_factored(table_factors(p))
