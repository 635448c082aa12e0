"""Oriented necklaces and necklaces of P^1(F_p).

An oriented necklace is stored as a tuple of the p+1 points, rotated so that
it starts with the point 0 (the minimum of the point order).  A necklace is
stored as the lexicographically smaller of its two orientations.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from sympy import primitive_root

from . import projgeom as pg
from .fqarith import FqElement, GammaChoice, fq_log, fq_quadratic_roots, inv_mod
from .projgeom import Pgl

Oriented = tuple[int, ...]
Necklace = tuple[int, ...]
Pair = tuple[int, int]

FIXED = "fixed_preserving_orientation"
FLIPPED = "flipped"
MOVED = "moved"


def pair(A: int, B: int) -> Pair:
    if A == B:
        raise ValueError("a pair needs two distinct points")
    return (A, B) if A < B else (B, A)


def xi_gamma(gamma: GammaChoice) -> int:
    """Common cross-ratio of four consecutive pearls: t^2 / (t^2 - n)."""
    p, t, n = gamma.p, gamma.t, gamma.n
    return t * t * inv_mod(t * t - n, p) % p


def canonical_rotation(pearls) -> Oriented:
    pearls = tuple(pearls)
    i = pearls.index(min(pearls))
    return pearls[i:] + pearls[:i]


def reverse(v: Oriented) -> Oriented:
    return canonical_rotation(v[::-1])


def necklace_of(v: Oriented) -> Necklace:
    return min(v, reverse(v))


def act_oriented(g: Pgl, v: Oriented, p: int) -> Oriented:
    return canonical_rotation(pg.act(g, P, p) for P in v)


def act_necklace(g: Pgl, v: Necklace, p: int) -> Necklace:
    return necklace_of(act_oriented(g, v, p))


def turning_element(C0: int, C1: int, C2: int, gamma: GammaChoice) -> Pgl:
    """The unique h in C_gamma with h(C0) = C1 and h(C1) = C2.

    In the basis (P0, P1) of representatives of C0, C1 the element is
    [[0, y], [x, t]] with y P0 + t P1 spanning C2 and det = -xy = n.
    """
    p, t, n = gamma.p, gamma.t, gamma.n
    if len({C0, C1, C2}) != 3:
        raise ValueError(f"pearls must be distinct, got {(C0, C1, C2)}")
    (a1, a2), (b1, b2), (c1, c2) = pg.vector(C0, p), pg.vector(C1, p), pg.vector(C2, p)
    dinv = inv_mod(a1 * b2 - a2 * b1, p)
    al = (c1 * b2 - c2 * b1) * dinv % p
    be = (a1 * c2 - a2 * c1) * dinv % p
    y = t * al * inv_mod(be, p) % p
    x = -n * inv_mod(y, p) % p
    basis = (a1, b1, a2, b2)
    local = (0, y, x, t)
    return pg.mul(pg.mul(pg.canonical(basis, p), local, p), pg.inv(pg.canonical(basis, p), p), p)


def orbit_necklace(h: Pgl, start: int, p: int) -> Oriented:
    pearls = [start]
    P = pg.act(h, start, p)
    while P != start:
        pearls.append(P)
        P = pg.act(h, P, p)
    if len(pearls) != p + 1:
        raise ValueError(f"{h} does not cycle all of P^1(F_{p})")
    return canonical_rotation(pearls)


def build_from_triple(C0: int, C1: int, C2: int, gamma: GammaChoice, method: str = "turning") -> Oriented:
    """The oriented necklace C0 -> C1 -> C2.

    ``method="turning"`` iterates the element from :func:`turning_element`;
    ``method="cross_ratio"`` extends the triple by the constant cross-ratio
    recurrence instead.
    """
    p = gamma.p
    if method == "turning":
        return orbit_necklace(turning_element(C0, C1, C2, gamma), C0, p)
    if method == "cross_ratio":
        if len({C0, C1, C2}) != 3:
            raise ValueError(f"pearls must be distinct, got {(C0, C1, C2)}")
        xi = xi_gamma(gamma)
        pearls = [C0, C1, C2]
        while len(pearls) < p + 1:
            pearls.append(pg.solve_fourth(pearls[-3], pearls[-2], pearls[-1], xi, p))
        if len(set(pearls)) != p + 1:
            raise AssertionError("cross-ratio recurrence revisited a pearl")
        return canonical_rotation(pearls)
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=32)
def enumerate_oriented(gamma: GammaChoice) -> tuple[Oriented, ...]:
    """All p(p-1) oriented gamma-necklaces, one per element of C_gamma."""
    p = gamma.p
    return tuple(sorted(orbit_necklace(h, 0, p) for h in pg.enumerate_Cgamma(gamma)))


def enumerate_oriented_by_triples(gamma: GammaChoice, method: str = "cross_ratio") -> tuple[Oriented, ...]:
    """Same set as :func:`enumerate_oriented`, built from all triples through 0."""
    p = gamma.p
    found = set()
    for C1 in range(1, p + 1):
        for C2 in range(1, p + 1):
            if C2 != C1:
                found.add(build_from_triple(0, C1, C2, gamma, method))
    return tuple(sorted(found))


@lru_cache(maxsize=32)
def enumerate_necklaces(gamma: GammaChoice) -> tuple[Necklace, ...]:
    return tuple(sorted({necklace_of(v) for v in enumerate_oriented(gamma)}))


def antipode(v, A: int) -> int:
    half = len(v) // 2
    return v[(v.index(A) + half) % len(v)]


def antipodal_pairs(v) -> frozenset[Pair]:
    half = len(v) // 2
    return frozenset(pair(v[i], v[i + half]) for i in range(half))


@dataclass
class NecklaceIndex:
    """Sorted necklaces of one gamma plus lookup tables used by the matrices."""

    gamma: GammaChoice
    necklaces: tuple[Necklace, ...]
    position: dict[Necklace, int] = field(default_factory=dict)
    by_pair: dict[Pair, list[int]] = field(default_factory=dict)

    def __len__(self):
        return len(self.necklaces)

    def find(self, A: int, B: int, C: int, D: int) -> int | None:
        """Index of the necklace with A<->B and C<->D antipodal, if any."""
        cd = pair(C, D)
        for i in self.by_pair[pair(A, B)]:
            if cd in antipodal_pairs(self.necklaces[i]):
                return i
        return None


@lru_cache(maxsize=32)
def necklace_index(gamma: GammaChoice) -> NecklaceIndex:
    necks = enumerate_necklaces(gamma)
    by_pair = defaultdict(list)
    for i, v in enumerate(necks):
        for pr in sorted(antipodal_pairs(v)):
            by_pair[pr].append(i)
    return NecklaceIndex(gamma, necks, {v: i for i, v in enumerate(necks)}, dict(by_pair))


def _exponent_classes(gamma: GammaChoice, gamma_prime: GammaChoice) -> list[int]:
    p = gamma.p
    g = gamma.element()
    out = set()
    for root in fq_quadratic_roots(gamma_prime.t, gamma_prime.n, gamma):
        k = fq_log(root, g)
        if gcd(k, p + 1) != 1:
            raise AssertionError(f"exponent {k} not coprime to p+1")
        out.add(k % (p + 1))
    return sorted(out)


def rebase_exponent(gamma: GammaChoice, gamma_prime: GammaChoice) -> int:
    """Residue k mod p+1 with C_{gamma'} = {h^k : h in C_gamma}.

    Two residues k and -k qualify.  The smaller one is used going from the
    smaller (t, n) to the larger, and its inverse going back, so rebasing
    there and back is the identity.
    """
    if gamma.p != gamma_prime.p:
        raise ValueError("gamma choices for different primes")
    if gamma == gamma_prime:
        return 1
    p = gamma.p
    if (gamma.t, gamma.n) < (gamma_prime.t, gamma_prime.n):
        return _exponent_classes(gamma, gamma_prime)[0]
    return inv_mod(_exponent_classes(gamma_prime, gamma)[0], p + 1)


def rebase_gamma(v: Oriented, gamma: GammaChoice, gamma_prime: GammaChoice) -> Oriented:
    k = rebase_exponent(gamma, gamma_prime)
    m = len(v)
    return canonical_rotation(v[(i * k) % m] for i in range(m))


def merelade(v: Oriented, gamma: GammaChoice) -> FqElement:
    """Image of v in P^1(F_{p^2}) minus P^1(F_p), as the affine coordinate z of (z : 1).

    Representatives P of v[0] and Q of v[1] are scaled so that -nP + tQ
    spans v[2]; the image is the line of P*(-gamma) + Q.
    """
    p, t, n = gamma.p, gamma.t, gamma.n
    (p1, p2), (q1, q2), (c1, c2) = (pg.vector(v[i], p) for i in range(3))
    dinv = inv_mod(p1 * q2 - p2 * q1, p)
    a = (c1 * q2 - c2 * q1) * dinv % p
    b = (p1 * c2 - p2 * c1) * dinv % p
    # -n P + t s Q must be proportional to a P + b Q
    s = -n * b * inv_mod(a * t, p) % p
    q1, q2 = q1 * s % p, q2 * s % p
    g = gamma.element()
    top = -g * p1 + q1
    bottom = -g * p2 + q2
    return top / bottom


def fq_point_act(g: Pgl, z: FqElement) -> FqElement:
    """Moebius action of g on the point (z : 1) of P^1(F_{p^2}) off P^1(F_p)."""
    a, b, c, d = g
    return (z * a + b) / (z * c + d)


def stabilizer_status(g: Pgl, v: Necklace, p: int) -> str:
    image = act_oriented(g, v, p)
    if image == v:
        return FIXED
    if image == reverse(v):
        return FLIPPED
    return MOVED


def oriented_stabilizer(v: Oriented, p: int) -> list[Pgl]:
    return [g for g in pg.enumerate_pgl(p) if act_oriented(g, v, p) == v]


def necklace_stabilizer(v: Necklace, p: int) -> list[Pgl]:
    return [g for g in pg.enumerate_pgl(p) if stabilizer_status(g, v, p) != MOVED]


def format_necklace(v, p: int) -> str:
    return "(" + ", ".join(pg.point_label(P, p) for P in v) + ")"


def parse_necklace(s: str, p: int) -> Oriented:
    body = s.strip().strip("()")
    return tuple(pg.parse_point(x, p) for x in body.split(","))


def pgl_generators(p: int) -> list[Pgl]:
    """Generators of PGL_2(F_p): w, a unipotent and a diagonal with primitive-root entry."""
    return [pg.canonical((0, -1, 1, 0), p), (1, 1, 0, 1), pg.canonical((primitive_root(p), 0, 0, 1), p)]


def verify_merelade(gamma: GammaChoice) -> list:
    """Bijectivity onto P^1(F_{p^2}) minus P^1(F_p), equivariance and equal stabilisers."""
    from .report import check

    p = gamma.p
    oriented = enumerate_oriented(gamma)
    images = {v: merelade(v, gamma) for v in oriented}
    keys = {z.key() for z in images.values()}
    off_line = all(not z.in_base_field() for z in images.values())
    bijective = len(keys) == len(oriented) == p * (p - 1) and off_line
    out = [check("merelade_bijective", p, gamma, bijective, {"distinct_images": len(keys)})]

    group = pg.enumerate_pgl(p) if p <= 7 else pgl_generators(p)
    bad = None
    for g in group:
        for v in oriented:
            if merelade(act_oriented(g, v, p), gamma).key() != fq_point_act(g, images[v]).key():
                bad = {"g": list(g), "necklace": format_necklace(v, p)}
                break
        if bad:
            break
    out.append(check("merelade_equivariant", p, gamma, bad is None, bad))

    bad = None
    for v in oriented[: min(len(oriented), 12)]:
        z = images[v].key()
        by_z = [g for g in pg.enumerate_pgl(p) if fq_point_act(g, images[v]).key() == z]
        if by_z != oriented_stabilizer(v, p):
            bad = {"necklace": format_necklace(v, p)}
            break
    out.append(check("merelade_stabilizers", p, gamma, bad is None, bad))
    return out


def verify_counts(gamma: GammaChoice, compare_methods: bool = True) -> list:
    """Fibre sizes, stabiliser orders and agreement of the three enumerations."""
    from .report import check

    p = gamma.p
    oriented = enumerate_oriented(gamma)
    necks = enumerate_necklaces(gamma)
    out = [
        check("count_oriented", p, gamma, len(oriented) == p * (p - 1), {"count": len(oriented)}),
        check("count_necklaces", p, gamma, len(necks) == p * (p - 1) // 2, {"count": len(necks)}),
        check("no_palindromes", p, gamma, all(reverse(v) != v for v in oriented)),
    ]
    so, sn = len(oriented_stabilizer(oriented[0], p)), len(necklace_stabilizer(necks[0], p))
    out.append(check("stabilizer_orders", p, gamma, (so, sn) == (p + 1, 2 * (p + 1)),
                     {"oriented": so, "necklace": sn}))
    if compare_methods:
        for method in ("turning", "cross_ratio"):
            same = enumerate_oriented_by_triples(gamma, method) == oriented
            out.append(check(f"enumeration_{method}", p, gamma, same))
    return out
