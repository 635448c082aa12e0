"""Dense integer polynomials and exact characteristic polynomials."""

from __future__ import annotations

import math
import re
from functools import lru_cache

import numpy as np
from sympy import prevprime

# n * q^2 must stay below 2^63 in the modular matmuls
_MODULUS_BITS = 25
_MAX_DIM = 8192


class IntPolynomial:
    """Polynomial in X with arbitrary-precision integer coefficients, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = [int(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c) if c else (0,)

    @classmethod
    def x_minus(cls, a: int) -> "IntPolynomial":
        return cls([-a, 1])

    @property
    def degree(self) -> int:
        return -1 if self.coeffs == (0,) else len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    def __pow__(self, k: int) -> "IntPolynomial":
        result, base = IntPolynomial([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        return format_poly(self)


def format_poly(f: IntPolynomial) -> str:
    terms = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = "X" if k == 1 else f"X^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) if terms else "0"


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(X(?:\^(\d+))?)?")


def parse_poly(s: str) -> IntPolynomial:
    """Parse a sum like ``X^2 - 10*X + 5`` (also accepts ``10X``)."""
    s = s.replace(" ", "").replace("−", "-")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        sign, digits, mono, exp = m.groups()
        if not digits and not mono:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        k = 0 if not mono else (int(exp) if exp else 1)
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    out = [0] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return IntPolynomial(out)


_FACTOR = re.compile(r"\(([^()]*)\)(?:\^(\d+))?")


def parse_factored(s: str) -> list[tuple[IntPolynomial, int]]:
    """Parse ``(X - 30)*(X - 2)^10*...`` into (factor, multiplicity) pairs."""
    s = s.replace("·", "*").replace("−", "-").strip()
    out = []
    pos = 0
    while pos < len(s):
        while pos < len(s) and s[pos] in " *":
            pos += 1
        if pos >= len(s):
            break
        m = _FACTOR.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse factored form near {s[pos:]!r}")
        out.append((parse_poly(m.group(1)), int(m.group(2) or 1)))
        pos = m.end()
    return out


def format_factored(factors) -> str:
    parts = []
    for f, k in factors:
        parts.append(f"({format_poly(f)})" + (f"^{k}" if k != 1 else ""))
    return "*".join(parts)


def expand_factored(factors) -> IntPolynomial:
    out = IntPolynomial([1])
    for f, k in factors:
        out = out * f**k
    return out


def factored_to_json(factors) -> dict:
    return {"factors": [{"coeffs": list(f.coeffs), "mult": k} for f, k in factors]}


def factored_from_json(obj: dict) -> list[tuple[IntPolynomial, int]]:
    return [(IntPolynomial(d["coeffs"]), int(d["mult"])) for d in obj["factors"]]


def _as_int_rows(M) -> list[list[int]]:
    rows = [[int(x) for x in row] for row in M]
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("matrix must be square")
    return rows


def charpoly_berkowitz(M) -> IntPolynomial:
    """det(XI - M) by Berkowitz's division-free algorithm.  O(n^4); for small n."""
    A = _as_int_rows(M)
    n = len(A)
    if n == 0:
        return IntPolynomial([1])
    # coefficient vectors are high degree first
    vect = [1, -A[0][0]]
    for r in range(1, n):
        R = A[r][:r]
        C = [A[i][r] for i in range(r)]
        Asub = [row[:r] for row in A[:r]]
        # column of the Toeplitz matrix: 1, -a_rr, -R C, -R A C, ...
        col = [1, -A[r][r]]
        X = C[:]
        for _ in range(r):
            col.append(-sum(R[i] * X[i] for i in range(r)))
            X = [sum(Asub[i][j] * X[j] for j in range(r)) for i in range(r)]
        new = []
        for i in range(r + 2):
            new.append(sum(col[i - j] * vect[j] for j in range(min(i, r) + 1) if i - j < len(col)))
        vect = new
    return IntPolynomial(vect[::-1])


@lru_cache(maxsize=None)
def _moduli(count: int) -> tuple[int, ...]:
    out, q = [], 2**_MODULUS_BITS
    while len(out) < count:
        q = prevprime(q)
        out.append(q)
    return tuple(out)


def _hessenberg_charpoly_mod(A: np.ndarray, q: int) -> np.ndarray:
    """Characteristic polynomial mod q (low degree first) via Hessenberg reduction."""
    H = A % q
    n = H.shape[0]
    for k in range(n - 2):
        nz = np.nonzero(H[k + 1 :, k])[0]
        if nz.size == 0:
            continue
        i = k + 1 + nz[0]
        if i != k + 1:
            H[[i, k + 1], :] = H[[k + 1, i], :]
            H[:, [i, k + 1]] = H[:, [k + 1, i]]
        piv_inv = pow(int(H[k + 1, k]), -1, q)
        u = H[k + 2 :, k] * piv_inv % q
        if not u.any():
            continue
        H[k + 2 :, :] = (H[k + 2 :, :] - np.outer(u, H[k + 1, :]) % q) % q
        H[:, k + 1] = (H[:, k + 1] + H[:, k + 2 :] @ u) % q
    # polys[m] = charpoly of the leading m x m block
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for m in range(1, n + 1):
        hmm = int(H[m - 1, m - 1])
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1:] = polys[m - 1, :-1]
        cur = (cur - hmm * polys[m - 1]) % q
        if m > 1:
            coef = np.zeros(m - 1, dtype=np.int64)
            prod = 1
            for i in range(m - 1, 0, -1):
                prod = prod * int(H[i, i - 1]) % q
                coef[i - 1] = int(H[i - 1, m - 1]) * prod % q
            cur = (cur - (coef @ polys[: m - 1]) % q) % q
        polys[m] = cur
    return polys[n]


def _coefficient_bits(A: list[list[int]]) -> int:
    n = len(A)
    log_rows = sum(max(0.0, 0.5 * math.log2(max(1, sum(x * x for x in row)))) for row in A)
    return int(n + log_rows) + 2


def charpoly(M) -> IntPolynomial:
    """Exact det(XI - M) of an integer matrix by multi-modular Hessenberg reduction.

    Residues are taken modulo enough primes to cover the Hadamard-type bound
    2^n * prod(row norms) on every coefficient, then lifted by CRT.
    """
    A = _as_int_rows(M)
    n = len(A)
    if n == 0:
        return IntPolynomial([1])
    if n > _MAX_DIM:
        raise ValueError(f"matrix too large for int64 residues: {n}")
    bits = _coefficient_bits(A)
    moduli = _moduli(bits // (_MODULUS_BITS - 1) + 2)
    big = np.array([[x for x in row] for row in A], dtype=object)
    coeffs = [0] * (n + 1)
    modulus = 1
    for q in moduli:
        Aq = np.array((big % q).tolist(), dtype=np.int64)
        res = _hessenberg_charpoly_mod(Aq, q)
        # incremental CRT
        inv = pow(modulus, -1, q)
        for k in range(n + 1):
            r = int(res[k])
            coeffs[k] += modulus * ((r - coeffs[k]) * inv % q)
        modulus *= q
    half = modulus // 2
    return IntPolynomial([c - modulus if c > half else c for c in coeffs])


def rank_and_det(M) -> tuple[int, int]:
    """Exact rank, and determinant for square input, by Bareiss elimination.

    Non-square input returns determinant 0.
    """
    rows = [[int(x) for x in row] for row in M]
    if not rows or not rows[0]:
        return 0, 1 if not rows else 0
    nrows, ncols = len(rows), len(rows[0])
    A = np.array(rows, dtype=object)
    prev = 1
    sign = 1
    rank = 0
    col = 0
    while rank < nrows and col < ncols:
        nz = [i for i in range(rank, nrows) if A[i, col] != 0]
        if not nz:
            col += 1
            continue
        i = nz[0]
        if i != rank:
            A[[i, rank], :] = A[[rank, i], :]
            sign = -sign
        piv = A[rank, col]
        if rank + 1 < nrows:
            sub = A[rank + 1 :, col + 1 :] * piv - np.outer(A[rank + 1 :, col], A[rank, col + 1 :])
            A[rank + 1 :, col + 1 :] = sub // prev
            A[rank + 1 :, col] = 0
        prev = piv
        rank += 1
        col += 1
    if nrows != ncols or rank < nrows:
        return rank, 0
    return rank, sign * int(A[nrows - 1, ncols - 1])
