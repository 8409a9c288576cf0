"""Random pair and code generators shared by the tests."""

import numpy as np

from rankweights.linalg import Subspace, enumerate_all_subspaces, random_subspace
from rankweights.rank import MatrixCode


def random_code(field, rng, m, n, k):
    return MatrixCode.from_space(random_subspace(field, rng, m * n, k), m, n)


def random_subcode(field, rng, C, k):
    """Uniform k-dimensional subcode, via a random full-rank k x dim coefficient matrix."""
    while True:
        coeffs = field.random(rng, (k, C.dim))
        S = Subspace(field, C.dim, coeffs)
        if S.dim == k:
            break
    flat = field.matmul(coeffs, C.flat) if k else np.zeros((0, C.m * C.n), dtype=np.int64)
    return MatrixCode(field, C.m, C.n, flat)


def random_pair(field, rng, m, n, max_k1=None):
    top = m * n if max_k1 is None else max_k1
    k1 = int(rng.integers(1, top + 1))
    k2 = int(rng.integers(0, k1))
    C1 = random_code(field, rng, m, n, k1)
    return C1, random_subcode(field, rng, C1, k2)


def all_codes(field, m, n, min_dim=0, max_dim=None):
    for S in enumerate_all_subspaces(field, m * n, max_dim):
        if S.dim >= min_dim:
            yield MatrixCode.from_space(S, m, n)


def all_pairs(field, m, n):
    """Every nested pair C2 < C1 in F^{m x n}."""
    codes = list(all_codes(field, m, n))
    for C1 in codes:
        for C2 in codes:
            if C2.dim < C1.dim and C2.issubset(C1):
                yield C1, C2
