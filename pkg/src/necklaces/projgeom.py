"""The projective line P^1(F_p) and the left action of PGL_2(F_p).

A point is an int in ``range(p + 1)``: ``a < p`` is the line spanned by the
column vector (a, 1) and ``p`` is infinity, the line of (1, 0).  The int
order is the fixed total order 0 < 1 < ... < p-1 < infinity.

A PGL element is a tuple ``(a, b, c, d)`` for the matrix [[a, b], [c, d]],
scaled so that its first nonzero entry is 1.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .fqarith import GammaChoice, check_prime, inv_mod

Pgl = tuple[int, int, int, int]


def infinity(p: int) -> int:
    return p


def point_label(P: int, p: int) -> str:
    return "∞" if P == p else str(P)


def parse_point(s: str, p: int) -> int:
    s = s.strip()
    if s in ("∞", "inf", "oo", "infty", "infinity"):
        return p
    v = int(s)
    if not 0 <= v < p:
        raise ValueError(f"point {s!r} out of range for p={p}")
    return v


def vector(P: int, p: int) -> tuple[int, int]:
    return (1, 0) if P == p else (P, 1)


def point(x: int, y: int, p: int) -> int:
    x %= p
    y %= p
    if y == 0:
        if x == 0:
            raise ValueError("zero vector spans no line")
        return p
    return x * inv_mod(y, p) % p


def enumerate_points(p: int) -> list[int]:
    return list(range(p + 1))


def canonical(m, p: int) -> Pgl:
    a, b, c, d = (x % p for x in m)
    if (a * d - b * c) % p == 0:
        raise ValueError(f"singular matrix {m}")
    lead = next(x for x in (a, b, c, d) if x)
    s = inv_mod(lead, p)
    return (a * s % p, b * s % p, c * s % p, d * s % p)


def identity() -> Pgl:
    return (1, 0, 0, 1)


def det(g: Pgl, p: int) -> int:
    a, b, c, d = g
    return (a * d - b * c) % p


def trace(g: Pgl, p: int) -> int:
    return (g[0] + g[3]) % p


def mul(g: Pgl, h: Pgl, p: int) -> Pgl:
    a, b, c, d = g
    e, f, k, l = h
    return canonical((a * e + b * k, a * f + b * l, c * e + d * k, c * f + d * l), p)


def inv(g: Pgl, p: int) -> Pgl:
    a, b, c, d = g
    return canonical((d, -b, -c, a), p)


def power(g: Pgl, k: int, p: int) -> Pgl:
    if k < 0:
        return power(inv(g, p), -k, p)
    result = identity()
    while k:
        if k & 1:
            result = mul(result, g, p)
        g = mul(g, g, p)
        k >>= 1
    return result


def order(g: Pgl, p: int) -> int:
    h, k = g, 1
    while h != (1, 0, 0, 1):
        h = mul(h, g, p)
        k += 1
    return k


def act(g: Pgl, P: int, p: int) -> int:
    a, b, c, d = g
    if P == p:
        x, y = a, c
    else:
        x, y = a * P + b, c * P + d
    y %= p
    if y == 0:
        return p
    return x * inv_mod(y, p) % p


def permutation(g: Pgl, p: int) -> tuple[int, ...]:
    """The images of all p+1 points under g."""
    return tuple(act(g, P, p) for P in range(p + 1))


@lru_cache(maxsize=8)
def enumerate_pgl(p: int) -> tuple[Pgl, ...]:
    """All p(p^2-1) elements of PGL_2(F_p), sorted."""
    check_prime(p)
    out = []
    # first nonzero entry is 1
    for a, b, c, d in itertools.chain(
        ((1, b, c, d) for b in range(p) for c in range(p) for d in range(p)),
        ((0, 1, c, d) for c in range(p) for d in range(p)),
    ):
        if (a * d - b * c) % p:
            out.append((a, b, c, d))
    out.sort()
    return tuple(out)


def frame_transform(A: int, B: int, C: int, p: int) -> Pgl:
    """The unique g with g(A) = infinity, g(B) = 0 and g(C) = 1."""
    if len({A, B, C}) != 3:
        raise ValueError(f"frame points must be distinct, got {(A, B, C)}")
    (a1, a2), (b1, b2), (c1, c2) = vector(A, p), vector(B, p), vector(C, p)
    # c = lam*a + mu*b
    dab = (a1 * b2 - a2 * b1) % p
    dinv = inv_mod(dab, p)
    lam = (c1 * b2 - c2 * b1) * dinv % p
    mu = (a1 * c2 - a2 * c1) * dinv % p
    # columns lam*a, mu*b send infinity, 0, 1 to A, B, C
    return inv(canonical((lam * a1, mu * b1, lam * a2, mu * b2), p), p)


def cross_ratio(A: int, B: int, C: int, D: int, p: int) -> int:
    """[A, B; C, D] = f(D) for the frame map f sending A, B, C to infinity, 0, 1."""
    return act(frame_transform(A, B, C, p), D, p)


def solve_fourth(A: int, B: int, C: int, xi: int, p: int) -> int:
    """The unique D with cross_ratio(A, B, C, D) == xi."""
    xi %= p
    if xi in (0, 1):
        raise ValueError("xi must differ from 0 and 1")
    return act(inv(frame_transform(A, B, C, p), p), xi, p)


def in_class_Cgamma(g: Pgl, gamma: GammaChoice) -> bool:
    """Some scalar multiple of g has characteristic polynomial X^2 - tX + n."""
    p = gamma.p
    tr = trace(g, p)
    return tr != 0 and (tr * tr * gamma.n - gamma.t * gamma.t * det(g, p)) % p == 0


@lru_cache(maxsize=8)
def enumerate_Cgamma(gamma: GammaChoice) -> tuple[Pgl, ...]:
    return tuple(g for g in enumerate_pgl(gamma.p) if in_class_Cgamma(g, gamma))


def stabilizer(P: int, p: int) -> list[Pgl]:
    return [g for g in enumerate_pgl(p) if act(g, P, p) == P]
