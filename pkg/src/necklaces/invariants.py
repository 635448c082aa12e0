"""Elliptic points, cusps and genera of the non-split Cartan curves and their neighbours."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from sympy import primerange

from . import projgeom as pg
from .fqarith import GammaChoice, check_prime, legendre
from .necklace import (
    FIXED,
    FLIPPED,
    act_oriented,
    antipodal_pairs,
    antipode,
    enumerate_necklaces,
    enumerate_oriented,
    pair,
    reverse,
    stabilizer_status,
)
from .report import check

XNSP, XNSP_PLUS, X0, XSP_PLUS = "Xnsp", "XnspPlus", "X0", "XspPlus"
CURVES = (XNSP, XNSP_PLUS, X0, XSP_PLUS)


def order2_element(p: int):
    """[[0, -1], [1, 0]]: characteristic polynomial X^2 + 1."""
    return pg.canonical((0, -1, 1, 0), p)


def order3_element(p: int):
    """[[0, -1], [1, 1]]: characteristic polynomial X^2 - X + 1."""
    return pg.canonical((0, -1, 1, 1), p)


def _require_p(p: int) -> int:
    return check_prime(p)


def count_elliptic_closed(p: int) -> tuple[int, int, int, int]:
    """(e2, e3, e2+, e3+) from the Legendre-symbol formulas."""
    _require_p(p)
    l1, l3 = legendre(-1, p), legendre(-3, p)
    e2 = 1 - l1
    e3 = 1 - l3
    e2p = (p + 1) // 2 - l1
    e3p = (1 - l3) // 2
    return e2, e3, e2p, e3p


def count_elliptic_bruteforce(gamma: GammaChoice, g2=None, g3=None) -> tuple[int, int, int, int]:
    """Count oriented necklaces fixed by g2, g3 and necklaces fixed or flipped by them."""
    p = gamma.p
    g2 = g2 or order2_element(p)
    g3 = g3 or order3_element(p)
    oriented = enumerate_oriented(gamma)
    necks = enumerate_necklaces(gamma)
    e2 = sum(act_oriented(g2, v, p) == v for v in oriented)
    e3 = sum(act_oriented(g3, v, p) == v for v in oriented)
    e2p = sum(stabilizer_status(g2, v, p) in (FIXED, FLIPPED) for v in necks)
    e3p = sum(stabilizer_status(g3, v, p) in (FIXED, FLIPPED) for v in necks)
    return e2, e3, e2p, e3p


def cusp_count_bruteforce(gamma: GammaChoice, oriented: bool) -> int:
    """Orbits of the unipotent [[1, 1], [0, 1]] on the fibre; all have length p."""
    p = gamma.p
    u = (1, 1, 0, 1)
    elements = enumerate_oriented(gamma) if oriented else enumerate_necklaces(gamma)
    seen, orbits = set(), 0
    for v in elements:
        if v in seen:
            continue
        orbits += 1
        w = v
        while w not in seen:
            seen.add(w)
            w = act_oriented(u, w, p)
            if not oriented:
                w = min(w, reverse(w))
    return orbits


@dataclass(frozen=True)
class CurveInvariants:
    curve: str
    p: int
    d: int
    e2: int
    e3: int
    e_inf: int
    genus: int

    def to_dict(self) -> dict:
        return asdict(self)


def riemann_hurwitz(d: int, e2: int, e3: int, e_inf: int) -> Fraction:
    return 1 + Fraction(d, 12) - Fraction(e2, 4) - Fraction(e3, 3) - Fraction(e_inf, 2)


def closed_genus(p: int, curve: str) -> Fraction:
    l1, l3 = legendre(-1, p), legendre(-3, p)
    if curve == XNSP:
        return Fraction(p * p - 7 * p + 11 + 3 * l1 + 4 * l3, 12)
    if curve == XNSP_PLUS:
        return Fraction(p * p - 10 * p + 23 + 6 * l1 + 4 * l3, 24)
    if curve == XSP_PLUS:
        return Fraction(p * p - 8 * p + 11 - 4 * l3, 24)
    if curve == X0:
        return Fraction(p - 6 - 3 * l1 - 4 * l3, 12)
    raise ValueError(f"unknown curve {curve!r}")


def _as_genus(x: Fraction, what: str) -> int:
    if x.denominator != 1 or x < 0:
        raise ArithmeticError(f"{what} is not a non-negative integer: {x}")
    return int(x)


def curve_invariants(p: int, curve: str, gamma: GammaChoice | None = None) -> CurveInvariants:
    """Degree, elliptic points, cusps and genus.

    With ``gamma`` the elliptic counts of Xnsp and XnspPlus come from the
    necklace scan; otherwise from the closed formulas.  Their genus is the
    Riemann-Hurwitz value, checked against the closed formula.
    """
    _require_p(p)
    l1, l3 = legendre(-1, p), legendre(-3, p)
    if curve in (XNSP, XNSP_PLUS):
        counts = count_elliptic_bruteforce(gamma) if gamma is not None else count_elliptic_closed(p)
        if curve == XNSP:
            d, e2, e3, e_inf = p * (p - 1), counts[0], counts[1], p - 1
        else:
            d, e2, e3, e_inf = p * (p - 1) // 2, counts[2], counts[3], (p - 1) // 2
        rh = riemann_hurwitz(d, e2, e3, e_inf)
        closed = closed_genus(p, curve)
        if rh != closed:
            raise ArithmeticError(f"{curve}({p}): Riemann-Hurwitz {rh} != closed form {closed}")
        return CurveInvariants(curve, p, d, e2, e3, e_inf, _as_genus(rh, "genus"))
    if curve == X0:
        d, e2, e3, e_inf = p + 1, 1 + l1, 1 + l3, 2
    elif curve == XSP_PLUS:
        d, e2, e3, e_inf = p * (p + 1) // 2, (p + 1) // 2, (1 + l3) // 2, (p + 1) // 2
    else:
        raise ValueError(f"unknown curve {curve!r}")
    return CurveInvariants(curve, p, d, e2, e3, e_inf, _as_genus(closed_genus(p, curve), "genus"))


def fibre_counts_bruteforce(p: int, curve: str) -> tuple[int, int, int]:
    """(e2, e3, cusps) of X0 or XspPlus from fixed points and unipotent orbits on the fibre."""
    g2, g3, u = order2_element(p), order3_element(p), (1, 1, 0, 1)
    if curve == X0:
        elems = list(range(p + 1))
        act = lambda g, e: pg.act(g, e, p)  # noqa: E731
    elif curve == XSP_PLUS:
        elems = [(a, b) for a in range(p + 1) for b in range(a + 1, p + 1)]
        act = lambda g, e: pair(pg.act(g, e[0], p), pg.act(g, e[1], p))  # noqa: E731
    else:
        raise ValueError(curve)
    e2 = sum(act(g2, e) == e for e in elems)
    e3 = sum(act(g3, e) == e for e in elems)
    seen, cusps = set(), 0
    for e in elems:
        if e not in seen:
            cusps += 1
            while e not in seen:
                seen.add(e)
                e = act(u, e)
    return e2, e3, cusps


def primes_between(pmin: int, pmax: int) -> list[int]:
    return [q for q in primerange(max(pmin, 5), pmax + 1)]


def verify_genus_relation(primes) -> list:
    out = []
    for p in primes:
        lhs = closed_genus(p, XNSP_PLUS) + closed_genus(p, X0)
        rhs = closed_genus(p, XSP_PLUS)
        out.append(check("genus_relation", p, None, lhs == rhs,
                         {"lhs": str(lhs), "rhs": str(rhs)}))
    return out


def verify_elliptic(gamma: GammaChoice) -> list:
    p = gamma.p
    brute = count_elliptic_bruteforce(gamma)
    closed = count_elliptic_closed(p)
    reports = [check("elliptic_counts", p, gamma, brute == closed,
                     {"bruteforce": list(brute), "closed": list(closed)},
                     bruteforce=list(brute), closed=list(closed))]
    # when two oriented necklaces are fixed by g3 they form one w-orbit
    g3 = order3_element(p)
    fixed3 = [v for v in enumerate_oriented(gamma) if act_oriented(g3, v, p) == v]
    same_orbit = len(fixed3) != 2 or reverse(fixed3[0]) == fixed3[1]
    reports.append(check("elliptic_e3_single_orbit", p, gamma, same_orbit))
    return reports


def verify_genus(gamma: GammaChoice) -> list:
    p = gamma.p
    out = []
    for curve in (XNSP, XNSP_PLUS):
        try:
            inv = curve_invariants(p, curve, gamma)
        except ArithmeticError as exc:
            out.append(check(f"genus_{curve}", p, gamma, False, str(exc)))
            continue
        balanced = 12 * (inv.genus - 1) + 3 * inv.e2 + 4 * inv.e3 + 6 * inv.e_inf == inv.d
        out.append(check(f"genus_{curve}", p, gamma, balanced, inv.to_dict(), genus=inv.genus))
    return out


def verify_flipped_lemmas(gamma: GammaChoice) -> list:
    p = gamma.p
    g = order2_element(p)
    necks = enumerate_necklaces(gamma)
    flipped = [v for v in necks if stabilizer_status(g, v, p) == FLIPPED]
    if p % 4 == 1:
        fixed = [A for A in range(p + 1) if pg.act(g, A, p) == A]
        axis = pair(*fixed)
        predicted = [v for v in necks if axis in antipodal_pairs(v)]
        ok = flipped == predicted and len(flipped) == (p - 1) // 2
        return [check("flipped_lemma_split", p, gamma, ok,
                      {"flipped": len(flipped), "predicted": len(predicted)}, flipped=len(flipped))]
    A = p
    gA = pg.act(g, A, p)
    images = [antipode(v, A) for v in flipped]
    targets = sorted(
        B for B in range(p + 1)
        if B not in (A, gA) and legendre(pg.cross_ratio(A, B, gA, pg.act(g, B, p), p), p) == -1
    )
    ok = sorted(images) == targets and len(set(images)) == len(images) and len(targets) == (p + 1) // 2
    return [check("flipped_lemma_nonsplit", p, gamma, ok,
                  {"images": sorted(images), "targets": targets}, flipped=len(flipped))]


def invariants_table(primes) -> list[dict]:
    """Rows (p, curve, d, e2, e3, e_inf, genus, relation) over the given primes."""
    rows = []
    for p in primes:
        invs = {c: curve_invariants(p, c) for c in CURVES}
        rel = invs[XNSP_PLUS].genus + invs[X0].genus == invs[XSP_PLUS].genus
        for c in CURVES:
            inv = invs[c]
            rows.append({"p": p, "curve": c, "d": inv.d, "e2": inv.e2, "e3": inv.e3,
                         "e_inf": inv.e_inf, "genus": inv.genus, "relation": "OK" if rel else "FAIL"})
    return rows


__all__ = [
    "CURVES", "CurveInvariants", "X0", "XNSP", "XNSP_PLUS", "XSP_PLUS",
    "closed_genus", "count_elliptic_bruteforce", "count_elliptic_closed",
    "curve_invariants", "cusp_count_bruteforce", "fibre_counts_bruteforce", "invariants_table",
    "order2_element", "order3_element", "primes_between", "riemann_hurwitz",
    "verify_elliptic", "verify_flipped_lemmas", "verify_genus", "verify_genus_relation",
]
