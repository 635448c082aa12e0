"""Correspondences between the fibres over a fixed elliptic curve.

Every map is an integer matrix whose column j is the divisor image of the
j-th source basis element.  Bases are points, unordered pairs, ordered
triples of distinct points, and necklaces, each in sorted order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import projgeom as pg
from .fqarith import GammaChoice, is_square, legendre, smallest_nonsquare
from .necklace import (
    Necklace,
    act_necklace,
    antipodal_pairs,
    build_from_triple,
    enumerate_necklaces,
    necklace_index,
    necklace_of,
    necklace_stabilizer,
    pair,
)
from .polynomial import rank_and_det
from .report import check, matrix_check

POINTS, PAIRS, TRIPLES, NECKLACES = "Points", "Pairs", "Triples", "Necklaces"
MAX_TRIPLES_PRIME = 13


@dataclass(frozen=True)
class BasisSet:
    tag: str
    elements: tuple
    index: dict

    def __len__(self):
        return len(self.elements)


def _basis(tag, elements) -> BasisSet:
    elements = tuple(elements)
    return BasisSet(tag, elements, {e: i for i, e in enumerate(elements)})


@lru_cache(maxsize=32)
def points_basis(p: int) -> BasisSet:
    return _basis(POINTS, range(p + 1))


@lru_cache(maxsize=32)
def pairs_basis(p: int) -> BasisSet:
    return _basis(PAIRS, itertools.combinations(range(p + 1), 2))


@lru_cache(maxsize=8)
def triples_basis(p: int, allow_large: bool = False) -> BasisSet:
    if p > MAX_TRIPLES_PRIME and not allow_large:
        raise ValueError(f"triples basis has {(p + 1) * p * (p - 1)} elements; pass allow_large=True")
    return _basis(TRIPLES, itertools.permutations(range(p + 1), 3))


@lru_cache(maxsize=32)
def necklaces_basis(gamma: GammaChoice) -> BasisSet:
    return _basis(NECKLACES, enumerate_necklaces(gamma))


def _zeros(target: BasisSet, source: BasisSet) -> np.ndarray:
    return np.zeros((len(target), len(source)), dtype=np.int64)


def map_psi(p: int) -> np.ndarray:
    """Points -> Pairs: A goes to the sum of {A, B} over B != A."""
    P, Q = points_basis(p), pairs_basis(p)
    M = _zeros(Q, P)
    for A in P.elements:
        for B in P.elements:
            if B != A:
                M[Q.index[pair(A, B)], A] = 1
    return M


def map_mu(p: int) -> np.ndarray:
    """Pairs -> Points: {A, B} goes to A + B."""
    P, Q = points_basis(p), pairs_basis(p)
    M = _zeros(P, Q)
    for j, (A, B) in enumerate(Q.elements):
        M[A, j] += 1
        M[B, j] += 1
    return M


def map_phi(gamma: GammaChoice) -> np.ndarray:
    """Pairs -> Necklaces: {A, B} goes to the sum of necklaces with A, B antipodal."""
    Q, V = pairs_basis(gamma.p), necklaces_basis(gamma)
    idx = necklace_index(gamma)
    M = _zeros(V, Q)
    for j, pr in enumerate(Q.elements):
        for i in idx.by_pair.get(pr, ()):
            M[i, j] = 1
    return M


def map_lambda(gamma: GammaChoice) -> np.ndarray:
    """Necklaces -> Pairs: a necklace goes to the sum of its antipodal pairs."""
    Q, V = pairs_basis(gamma.p), necklaces_basis(gamma)
    M = _zeros(Q, V)
    for j, v in enumerate(V.elements):
        for pr in antipodal_pairs(v):
            M[Q.index[pr], j] = 1
    return M


def map_alpha(p: int) -> np.ndarray:
    """Pairs -> Pairs: {A, B} goes to the sum of {C, D} with [A, B; C, D] = -1."""
    Q = pairs_basis(p)
    M = _zeros(Q, Q)
    minus_one = p - 1
    for j, (A, B) in enumerate(Q.elements):
        for C in range(p + 1):
            if C in (A, B):
                continue
            D = pg.solve_fourth(A, B, C, minus_one, p)
            # each {C, D} is reached from C and from D
            if C < D:
                M[Q.index[(C, D)], j] += 1
    return M


def all_ones(rows: int, cols: int) -> np.ndarray:
    return np.ones((rows, cols), dtype=np.int64)


def _cross_ratio_pattern(p: int, want_square: bool) -> np.ndarray:
    """(p-1)/2 on the diagonal plus {C, D} disjoint from {A, B} whose cross-ratio
    is a square (or a non-square).  Built from the cross-ratio formula alone."""
    Q = pairs_basis(p)
    M = _zeros(Q, Q)
    for j, (A, B) in enumerate(Q.elements):
        M[j, j] = (p - 1) // 2
        for i, (C, D) in enumerate(Q.elements):
            if len({A, B, C, D}) == 4 and is_square(pg.cross_ratio(A, B, C, D, p), p) == want_square:
                M[i, j] = 1
    return M


def laphi_expected(p: int) -> np.ndarray:
    return _cross_ratio_pattern(p, want_square=False)


def alphaalpha_expected(p: int) -> np.ndarray:
    return _cross_ratio_pattern(p, want_square=True)


def verify_chen86(gamma: GammaChoice) -> list:
    """The complex identities, the two column formulas, and the combined relation
    lambda.phi + alpha.alpha + psi.mu = p I + J on pairs."""
    p = gamma.p
    psi, mu = map_psi(p), map_mu(p)
    phi, lam, alpha = map_phi(gamma), map_lambda(gamma), map_alpha(p)
    npt, npr, nv = psi.shape[1], psi.shape[0], phi.shape[0]
    eye_pairs = np.eye(npr, dtype=np.int64)
    return [
        matrix_check("mu_psi", p, gamma, mu @ psi, (p - 1) * np.eye(npt, dtype=np.int64) + all_ones(npt, npt)),
        matrix_check("phi_psi", p, gamma, phi @ psi, all_ones(nv, npt)),
        matrix_check("mu_lambda", p, gamma, mu @ lam, all_ones(npt, nv)),
        matrix_check("lambda_phi_columns", p, gamma, lam @ phi, laphi_expected(p)),
        matrix_check("alpha_alpha_columns", p, gamma, alpha @ alpha, alphaalpha_expected(p)),
        matrix_check("chen86", p, gamma, lam @ phi + alpha @ alpha + psi @ mu, p * eye_pairs + all_ones(npr, npr)),
    ]


# degeneracy maps out of the triples fibre

def pi_0(triple) -> int:
    return triple[0]


def pi_sp(triple) -> tuple[int, int]:
    return pair(triple[0], triple[1])


def pi_nsp_oriented(triple, gamma: GammaChoice):
    return build_from_triple(*triple, gamma)


def pi_nsp_plus(triple, gamma: GammaChoice) -> Necklace:
    return necklace_of(build_from_triple(*triple, gamma))


def tilde_pi_nsp(triple, gamma: GammaChoice, epsilon: int | None = None) -> Necklace:
    """The necklace with A<->B and C<->D, where [A, B; C, D] = epsilon."""
    p = gamma.p
    eps = smallest_nonsquare(p) if epsilon is None else epsilon % p
    if legendre(eps, p) != -1:
        raise ValueError(f"epsilon={epsilon} is not a non-square mod {p}")
    A, B, C = triple
    D = pg.solve_fourth(A, B, C, eps, p)
    idx = necklace_index(gamma)
    i = idx.find(A, B, C, D)
    if i is None:
        raise AssertionError(f"no necklace with {A}<->{B} and {C}<->{D}")
    return idx.necklaces[i]


def pushforward(f: Callable, source: BasisSet, target: BasisSet) -> np.ndarray:
    M = _zeros(target, source)
    for j, e in enumerate(source.elements):
        M[target.index[f(e)], j] += 1
    return M


def pullback(f: Callable, source: BasisSet, target: BasisSet) -> np.ndarray:
    """Divisor pullback along f: source -> target, as a matrix target -> source."""
    return pushforward(f, source, target).T.copy()


def verify_degeneracy(gamma: GammaChoice, epsilon: int | None = None, allow_large: bool = False) -> list:
    p = gamma.p
    eps = smallest_nonsquare(p) if epsilon is None else epsilon
    T = triples_basis(p, allow_large)
    Pt, Q, V = points_basis(p), pairs_basis(p), necklaces_basis(gamma)
    tilde = lambda e: tilde_pi_nsp(e, gamma, eps)  # noqa: E731
    push_sp, pull_sp = pushforward(pi_sp, T, Q), pullback(pi_sp, T, Q)
    push_0, pull_0 = pushforward(pi_0, T, Pt), pullback(pi_0, T, Pt)
    push_n, pull_n = pushforward(tilde, T, V), pullback(tilde, T, V)
    return [
        matrix_check("psi_from_degeneracy", p, gamma, push_sp @ pull_0, (p - 1) * map_psi(p)),
        matrix_check("mu_from_degeneracy", p, gamma, push_0 @ pull_sp, (p - 1) * map_mu(p)),
        matrix_check("phi_from_degeneracy", p, gamma, push_n @ pull_sp, 4 * map_phi(gamma), epsilon=eps),
        matrix_check("lambda_from_degeneracy", p, gamma, push_sp @ pull_n, 4 * map_lambda(gamma), epsilon=eps),
    ]


# permutation modules and double cosets

def basis_permutation(g, basis: BasisSet, p: int) -> np.ndarray:
    """Permutation matrix of g on a basis (column j is the image of element j)."""
    if basis.tag == POINTS:
        f = lambda e: pg.act(g, e, p)  # noqa: E731
    elif basis.tag == PAIRS:
        f = lambda e: pair(pg.act(g, e[0], p), pg.act(g, e[1], p))  # noqa: E731
    elif basis.tag == TRIPLES:
        f = lambda e: tuple(pg.act(g, x, p) for x in e)  # noqa: E731
    else:
        f = lambda e: act_necklace(g, e, p)  # noqa: E731
    return pushforward(f, basis, basis)


class CosetSpace:
    """Left cosets xH of a subgroup H of PGL_2(F_p), labelled by their minimal element."""

    def __init__(self, H: Sequence, p: int):
        self.p = p
        self.H = tuple(sorted(H))
        G = pg.enumerate_pgl(p)
        if len(G) % len(self.H):
            raise ValueError("subgroup order does not divide |G|")
        label = {}
        reps = []
        for x in G:
            if x in label:
                continue
            coset = [pg.mul(x, h, p) for h in self.H]
            rep = min(coset)
            for y in coset:
                label[y] = rep
            reps.append(rep)
        self.label = label
        self.reps = tuple(sorted(reps))
        self.position = {r: i for i, r in enumerate(self.reps)}

    def __len__(self):
        return len(self.reps)

    def index_of(self, x) -> int:
        return self.position[self.label[x]]


def is_subgroup(H: Sequence, p: int) -> bool:
    Hs = set(H)
    return pg.identity() in Hs and all(pg.mul(a, pg.inv(b, p), p) in Hs for a in Hs for b in Hs)


def theta(H: Sequence, g, H_prime: Sequence, p: int,
          spaces: tuple[CosetSpace, CosetSpace] | None = None) -> np.ndarray:
    """Matrix of the double-coset operator Q[G/H] -> Q[G/H'] of H g H'.

    The coset H goes to the sum of the left H'-cosets making up H g H', and
    xH goes to the x-translate of that sum.
    """
    g = pg.canonical(g, p)
    if g not in set(pg.enumerate_pgl(p)):
        raise ValueError("g is not in PGL_2(F_p)")
    for K in (H, H_prime):
        if not is_subgroup(K, p):
            raise ValueError("argument is not a subgroup")
    src, dst = spaces or (CosetSpace(H, p), CosetSpace(H_prime, p))
    omega = sorted({dst.label[pg.mul(h, g, p)] for h in src.H})
    M = np.zeros((len(dst), len(src)), dtype=np.int64)
    for j, x in enumerate(src.reps):
        for s in omega:
            M[dst.index_of(pg.mul(x, s, p)), j] += 1
    return M


@dataclass
class Subgroups:
    p: int
    A0: int
    B0: int
    v0: Necklace
    B: list
    S: list
    N: list

    @property
    def N_cap_S(self) -> list:
        S = set(self.S)
        return [x for x in self.N if x in S]


def anchor_subgroups(gamma: GammaChoice) -> Subgroups:
    """Anchors A0 = 0, B0 = infinity, v0 = the first necklace with 0 <-> infinity."""
    p = gamma.p
    A0, B0 = 0, p
    idx = necklace_index(gamma)
    v0 = idx.necklaces[idx.by_pair[pair(A0, B0)][0]]
    G = pg.enumerate_pgl(p)
    B = [g for g in G if pg.act(g, A0, p) == A0]
    S = [g for g in G if {pg.act(g, A0, p), pg.act(g, B0, p)} == {A0, B0}]
    N = necklace_stabilizer(v0, p)
    return Subgroups(p, A0, B0, v0, B, S, N)


def iota(space: CosetSpace, base, act: Callable, basis: BasisSet) -> np.ndarray:
    """Isomorphism Q[G/H] -> Q[basis] sending xH to x.base."""
    M = np.zeros((len(basis), len(space)), dtype=np.int64)
    for j, x in enumerate(space.reps):
        M[basis.index[act(x, base)], j] = 1
    return M


ALPHA_DOUBLE_COSET = (1, 1, 1, -1)


def verify_theta_lemma(gamma: GammaChoice) -> list:
    p = gamma.p
    sg = anchor_subgroups(gamma)
    GB, GS, GN = CosetSpace(sg.B, p), CosetSpace(sg.S, p), CosetSpace(sg.N, p)
    Pt, Q, V = points_basis(p), pairs_basis(p), necklaces_basis(gamma)
    i0 = iota(GB, sg.A0, lambda x, A: pg.act(x, A, p), Pt)
    isp = iota(GS, (sg.A0, sg.B0), lambda x, e: pair(pg.act(x, e[0], p), pg.act(x, e[1], p)), Q)
    insp = iota(GN, sg.v0, lambda x, v: act_necklace(x, v, p), V)
    one = pg.identity()
    # iota matrices are permutations, so their inverse is the transpose
    got = {
        "theta_psi": isp @ theta(sg.B, one, sg.S, p, (GB, GS)) @ i0.T,
        "theta_mu": i0 @ theta(sg.S, one, sg.B, p, (GS, GB)) @ isp.T,
        "theta_phi": insp @ theta(sg.S, one, sg.N, p, (GS, GN)) @ isp.T,
        "theta_lambda": isp @ theta(sg.N, one, sg.S, p, (GN, GS)) @ insp.T,
        "theta_alpha": isp @ theta(sg.S, ALPHA_DOUBLE_COSET, sg.S, p, (GS, GS)) @ isp.T,
    }
    want = {
        "theta_psi": map_psi(p),
        "theta_mu": map_mu(p),
        "theta_phi": map_phi(gamma),
        "theta_lambda": map_lambda(gamma),
        "theta_alpha": map_alpha(p),
    }
    out = [
        check("subgroup_orders", p, gamma,
              (len(sg.B), len(sg.S), len(sg.N), len(sg.N_cap_S)) == (p * (p - 1), 2 * (p - 1), 2 * (p + 1), 4),
              {"B": len(sg.B), "S": len(sg.S), "N": len(sg.N), "N_cap_S": len(sg.N_cap_S)}),
    ]
    out += [matrix_check(name, p, gamma, got[name], want[name]) for name in want]
    return out


def verify_equivariance(gamma: GammaChoice, elements: Sequence) -> list:
    """Every map commutes with the permutation action of the given group elements."""
    p = gamma.p
    Pt, Q, V = points_basis(p), pairs_basis(p), necklaces_basis(gamma)
    maps = {
        "psi": (map_psi(p), Pt, Q),
        "mu": (map_mu(p), Q, Pt),
        "phi": (map_phi(gamma), Q, V),
        "lambda": (map_lambda(gamma), V, Q),
        "alpha": (map_alpha(p), Q, Q),
    }
    out = []
    for name, (M, src, dst) in maps.items():
        ok, bad = True, None
        for g in elements:
            if not np.array_equal(basis_permutation(g, dst, p) @ M, M @ basis_permutation(g, src, p)):
                ok, bad = False, {"g": list(g)}
                break
        out.append(check(f"equivariance_{name}", p, gamma, ok, bad))
    return out


def verify_phi_lambda(gamma: GammaChoice) -> list:
    """phi.lambda equals the pairing matrix, and phi has full row rank."""
    from .pairing import pairing_matrix

    p = gamma.p
    phi, lam = map_phi(gamma), map_lambda(gamma)
    rank, _ = rank_and_det(phi)
    return [
        matrix_check("phi_lambda_is_pairing", p, gamma, phi @ lam, pairing_matrix(gamma)),
        check("lambda_is_phi_transpose", p, gamma, np.array_equal(lam, phi.T)),
        check("phi_full_row_rank", p, gamma, rank == phi.shape[0], {"rank": rank}),
    ]

