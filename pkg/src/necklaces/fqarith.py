"""Arithmetic in F_p and in F_{p^2} = F_p[X]/(X^2 - tX + n).

Elements of F_p are plain Python ints in ``range(p)``.  Elements of
F_{p^2} are :class:`FqElement` instances written as ``c0 + c1*gamma``
relative to a fixed :class:`GammaChoice`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint, isprime
from sympy.ntheory import sqrt_mod

MAX_PRIME = 2**15


class InvalidPrime(ValueError):
    pass


class InvalidGamma(ValueError):
    """Raised for a (t, n) pair that does not define a generator of F_{p^2}^x.

    ``reason`` is one of ``"zero_trace"``, ``"zero_norm"``, ``"reducible"``,
    ``"not_generator"`` or ``"out_of_range"``.
    """

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise InvalidPrime(f"p must be an integer, got {p!r}")
    if p < 5 or p > MAX_PRIME or not isprime(p):
        raise InvalidPrime(f"p must be a prime with 5 <= p <= {MAX_PRIME}, got {p}")
    return p


def legendre(a: int, p: int) -> int:
    """Quadratic residue symbol (a|p) for an odd prime p, via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def is_square(a: int, p: int) -> bool:
    """True for nonzero squares in F_p (zero is excluded on purpose)."""
    return legendre(a, p) == 1


def smallest_nonsquare(p: int) -> int:
    return next(a for a in range(2, p) if legendre(a, p) == -1)


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 in F_p")
    return pow(a, -1, p)


@lru_cache(maxsize=None)
def _prime_factors(m: int) -> tuple[int, ...]:
    return tuple(sorted(factorint(m)))


@dataclass(frozen=True, order=True)
class GammaChoice:
    """A generator gamma of F_{p^2}^x given by its trace t and norm n."""

    p: int
    t: int
    n: int

    @property
    def disc(self) -> int:
        return (self.t * self.t - 4 * self.n) % self.p

    def element(self) -> "FqElement":
        return FqElement(0, 1, self)

    def one(self) -> "FqElement":
        return FqElement(1, 0, self)

    def __call__(self, c0: int, c1: int = 0) -> "FqElement":
        return FqElement(c0 % self.p, c1 % self.p, self)

    def __str__(self):
        return f"{self.t},{self.n}"


def validate_gamma(p: int, t: int, n: int) -> GammaChoice:
    check_prime(p)
    if not (0 <= t < p and 0 <= n < p):
        raise InvalidGamma("out_of_range", f"t, n must lie in [0, {p}), got ({t}, {n})")
    if t == 0:
        raise InvalidGamma("zero_trace", "a generator of F_{p^2}^x has nonzero trace")
    if n == 0:
        raise InvalidGamma("zero_norm", "X^2 - tX has the root 0")
    if legendre(t * t - 4 * n, p) != -1:
        raise InvalidGamma("reducible", f"X^2 - {t}X + {n} is reducible over F_{p}")
    gamma = GammaChoice(p, t, n)
    order = fq_order(gamma.element())
    if order != p * p - 1:
        raise InvalidGamma(
            "not_generator",
            f"root of X^2 - {t}X + {n} has order {order}, not {p * p - 1}",
        )
    # n == t^2 would force gamma^3 into F_p^x
    assert n != (t * t) % p
    return gamma


@lru_cache(maxsize=None)
def _default_gamma(p: int) -> GammaChoice:
    for t in range(1, p):
        for n in range(1, p):
            try:
                return validate_gamma(p, t, n)
            except InvalidGamma:
                continue
    raise AssertionError(f"no generator found for p={p}")  # unreachable for primes


def find_gamma(p: int, override: tuple[int, int] | None = None) -> GammaChoice:
    """Return the override if valid, else the lexicographically smallest (t, n)."""
    check_prime(p)
    if override is not None:
        t, n = override
        return validate_gamma(p, t % p, n % p)
    return _default_gamma(p)


def all_gammas(p: int) -> list[GammaChoice]:
    """Every valid (t, n), in lexicographic order."""
    check_prime(p)
    out = []
    for t in range(1, p):
        for n in range(1, p):
            try:
                out.append(validate_gamma(p, t, n))
            except InvalidGamma:
                pass
    return out


@dataclass(frozen=True)
class FqElement:
    c0: int
    c1: int
    gamma: GammaChoice

    @property
    def p(self) -> int:
        return self.gamma.p

    def _coerce(self, other) -> "FqElement":
        if isinstance(other, FqElement):
            if other.gamma != self.gamma:
                raise ValueError("elements belong to different models of F_{p^2}")
            return other
        if isinstance(other, int):
            return FqElement(other % self.p, 0, self.gamma)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        return FqElement((self.c0 + o.c0) % p, (self.c1 + o.c1) % p, self.gamma)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return FqElement(-self.c0 % p, -self.c1 % p, self.gamma)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return fq_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return fq_mul(self, fq_inv(o))

    def __pow__(self, k: int):
        if k < 0:
            return fq_inv(self) ** (-k)
        result = self.gamma.one()
        base = self
        while k:
            if k & 1:
                result = fq_mul(result, base)
            base = fq_mul(base, base)
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.c0 or self.c1)

    def in_base_field(self) -> bool:
        return self.c1 == 0

    def conj(self) -> "FqElement":
        """Frobenius conjugate; gamma maps to t - gamma."""
        p = self.p
        return FqElement((self.c0 + self.gamma.t * self.c1) % p, -self.c1 % p, self.gamma)

    def key(self) -> tuple[int, int]:
        return (self.c0, self.c1)

    def __repr__(self):
        return f"FqElement({self.c0} + {self.c1}*g; p={self.p})"


def fq_mul(x: FqElement, y: FqElement) -> FqElement:
    g = x.gamma
    p = g.p
    a1b1 = x.c1 * y.c1
    return FqElement(
        (x.c0 * y.c0 - g.n * a1b1) % p,
        (x.c0 * y.c1 + x.c1 * y.c0 + g.t * a1b1) % p,
        g,
    )


def fq_norm(x: FqElement) -> int:
    g = x.gamma
    return (x.c0 * x.c0 + g.t * x.c0 * x.c1 + g.n * x.c1 * x.c1) % g.p


def fq_trace(x: FqElement) -> int:
    return (2 * x.c0 + x.gamma.t * x.c1) % x.gamma.p


def fq_inv(x: FqElement) -> FqElement:
    if not x:
        raise ZeroDivisionError("inverse of 0 in F_{p^2}")
    ninv = inv_mod(fq_norm(x), x.p)
    c = x.conj()
    return FqElement(c.c0 * ninv % x.p, c.c1 * ninv % x.p, x.gamma)


def fq_order(x: FqElement) -> int:
    if not x:
        raise ZeroDivisionError("0 has no multiplicative order")
    p = x.p
    order = p * p - 1
    for q in _prime_factors(order):
        while order % q == 0 and (x ** (order // q)) == x.gamma.one():
            order //= q
    return order


def fq_sqrt_of_base(d: int, gamma: GammaChoice) -> FqElement:
    """A square root in F_{p^2} of an element d of F_p."""
    p = gamma.p
    d %= p
    if legendre(d, p) >= 0:
        return gamma(sqrt_mod(d, p))
    # (2*gamma - t)^2 = t^2 - 4n, and disc is a non-square like d
    ratio = d * inv_mod(gamma.disc, p) % p
    s = sqrt_mod(ratio, p)
    return gamma(-s * gamma.t, 2 * s)


def fq_quadratic_roots(t: int, n: int, gamma: GammaChoice) -> list[FqElement]:
    """Roots of X^2 - tX + n inside the model F_p[gamma], sorted by coordinates."""
    p = gamma.p
    half = inv_mod(2, p)
    r = fq_sqrt_of_base(t * t - 4 * n, gamma)
    roots = {((t + r) * half).key(), ((t - r) * half).key()}
    return [gamma(*k) for k in sorted(roots)]


def fq_log(x: FqElement, base: FqElement) -> int:
    """Discrete log of x to a generator ``base`` by baby-step giant-step."""
    p = x.p
    order = p * p - 1
    m = math.isqrt(order) + 1
    baby = {}
    e = x.gamma.one()
    for j in range(m):
        baby.setdefault(e.key(), j)
        e = e * base
    giant = fq_inv(base) ** m
    y = x
    for i in range(m + 1):
        j = baby.get(y.key())
        if j is not None:
            return (i * m + j) % order
        y = y * giant
    raise ValueError("logarithm does not exist; base is not a generator")


def i_alpha(beta: FqElement, alpha: FqElement) -> tuple[tuple[int, int], tuple[int, int]]:
    """Matrix of multiplication by beta on F_{p^2} in the basis (1, alpha).

    Entries are ((x, -n*y), (y, x + t*y)) where beta = x + y*alpha and t, n are
    the trace and norm of alpha.
    """
    if alpha.in_base_field():
        raise ValueError("alpha must not lie in F_p")
    if not beta:
        raise ValueError("beta must be nonzero")
    p = alpha.p
    y = beta.c1 * inv_mod(alpha.c1, p) % p
    x = (beta.c0 - y * alpha.c0) % p
    ta, na = fq_trace(alpha), fq_norm(alpha)
    return ((x, -na * y % p), (y, (x + ta * y) % p))
