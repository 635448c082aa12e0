"""The antipodal pairing on necklaces and its spectrum."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .fqarith import GammaChoice
from .groundtruth import CHARPOLY_TABLE, table_charpoly, table_factors
from .necklace import Necklace, antipodal_pairs, enumerate_necklaces, necklace_of, rebase_gamma
from .polynomial import IntPolynomial, charpoly, format_factored, rank_and_det
from .report import check


def pairing(v: Necklace, w: Necklace) -> int:
    """Number of antipodal pairs that v and w have in common."""
    return len(antipodal_pairs(v) & antipodal_pairs(w))


@lru_cache(maxsize=16)
def _pairing_matrix(gamma: GammaChoice) -> np.ndarray:
    necks = enumerate_necklaces(gamma)
    pairs = [antipodal_pairs(v) for v in necks]
    n = len(necks)
    M = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        M[i, i] = len(pairs[i])
        for j in range(i + 1, n):
            M[i, j] = M[j, i] = len(pairs[i] & pairs[j])
    M.setflags(write=False)
    return M


def pairing_matrix(gamma: GammaChoice) -> np.ndarray:
    """Gram matrix of the pairing, rows and columns in sorted necklace order."""
    return _pairing_matrix(gamma).copy()


@lru_cache(maxsize=16)
def pairing_charpoly(gamma: GammaChoice) -> IntPolynomial:
    return charpoly(_pairing_matrix(gamma))


def relabel_permutation(gamma: GammaChoice, gamma_prime: GammaChoice) -> list[int]:
    """perm[i] = index in the gamma'-basis of the rebased i-th gamma-necklace."""
    src = enumerate_necklaces(gamma)
    dst = {v: i for i, v in enumerate(enumerate_necklaces(gamma_prime))}
    return [dst[necklace_of(rebase_gamma(v, gamma, gamma_prime))] for v in src]


def verify_charpoly_table(p: int, gamma: GammaChoice | None = None):
    """Compare the computed characteristic polynomial with the reference table."""
    from .fqarith import find_gamma

    if p not in CHARPOLY_TABLE:
        raise KeyError(f"no reference characteristic polynomial for p={p}; known: {sorted(CHARPOLY_TABLE)}")
    gamma = gamma or find_gamma(p)
    got = pairing_charpoly(gamma)
    want = table_charpoly(p)
    mismatches = [
        {"degree": k, "got": str(a), "expected": str(b)}
        for k, (a, b) in enumerate(zip(got.coeffs, want.coeffs))
        if a != b
    ]
    if len(got.coeffs) != len(want.coeffs):
        mismatches.insert(0, {"degree_got": got.degree, "degree_expected": want.degree})
    return check(
        "charpoly_table", p, gamma, not mismatches, mismatches[:1] or None,
        factored=format_factored(table_factors(p)), mismatching_coefficients=len(mismatches),
    )


def verify_pairing(gamma: GammaChoice) -> list:
    """Structural facts: diagonal, off-diagonal values, symmetry, row sums, nondegeneracy."""
    p = gamma.p
    M = _pairing_matrix(gamma)
    n = M.shape[0]
    off = M[~np.eye(n, dtype=bool)]
    rank, det = rank_and_det(M)
    row_sum = (p * p - 1) // 4
    return [
        check("pairing_size", p, gamma, n == p * (p - 1) // 2, {"size": n}),
        check("pairing_diagonal", p, gamma, bool((np.diag(M) == (p + 1) // 2).all())),
        check("pairing_offdiagonal_01", p, gamma, bool(np.isin(off, (0, 1)).all())),
        check("pairing_symmetric", p, gamma, bool((M == M.T).all())),
        check("pairing_row_sums", p, gamma, bool((M.sum(axis=1) == row_sum).all()),
              {"row_sums": sorted(set(M.sum(axis=1).tolist()))}),
        check("pairing_nondegenerate", p, gamma, det != 0 and rank == n, {"rank": rank}, rank=rank),
    ]


def verify_gamma_independence(p: int, gammas=None) -> list:
    """Rebasing relabels the pairing matrix, so every gamma gives the same spectrum."""
    from .fqarith import all_gammas

    gammas = list(gammas) if gammas is not None else all_gammas(p)
    base = gammas[0]
    M = _pairing_matrix(base)
    f = pairing_charpoly(base)
    out = []
    for g in gammas[1:]:
        perm = relabel_permutation(base, g)
        M2 = _pairing_matrix(g)
        relabelled = bool((M2[np.ix_(perm, perm)] == M).all())
        same_poly = pairing_charpoly(g) == f
        out.append(check("pairing_gamma_independent", p, g, relabelled and same_poly,
                         {"base": str(base), "relabelled": relabelled, "same_charpoly": same_poly}))
    return out
