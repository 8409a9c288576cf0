"""Independent brute-force oracles used by the test suite.

Nothing here calls the package's elimination, intersection or weight code:
spans are enumerated element by element, ranks are logs of span sizes.
Only the scalar field operations (themselves tested against polynomial
arithmetic below) are shared.
"""

from __future__ import annotations

import functools
import itertools
import math

import numpy as np


def poly_mul_mod(a, b, mod, p):
    """Multiply coefficient lists (little-endian) over F_p and reduce by a monic modulus."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    d = len(mod) - 1
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for j in range(d + 1):
                prod[k - d + j] = (prod[k - d + j] - c * mod[j]) % p
    out = prod[:d] + [0] * max(0, d - len(prod))
    return out


def digits(code, base, length):
    return [(code // base**i) % base for i in range(length)]


def undigits(ds, base):
    return sum(d * base**i for i, d in enumerate(ds))


def span(field, vectors):
    """Every F-linear combination of ``vectors`` as a set of tuples (closure, one vector at a time)."""
    vectors = [tuple(int(x) for x in v) for v in vectors]
    if not vectors:
        return set()
    n = len(vectors[0])
    out = {tuple([0] * n)}
    for v in vectors:
        if v in out:
            continue
        out = {
            tuple(field.add(a, field.mul(c, b)) for a, b in zip(s, v))
            for s in out
            for c in range(field.order)
        }
    return out


def span_with_zero(field, n, vectors):
    s = span(field, vectors)
    return s if s else {tuple([0] * n)}


def dim_of(q, size):
    d = round(math.log(size, q))
    assert q**d == size
    return d


def rank_oracle(field, M):
    """Rank as log_q of the size of the row space."""
    rows = [list(r) for r in M]
    if not rows or not rows[0]:
        return 0
    return dim_of(field.order, len(span_with_zero(field, len(rows[0]), rows)))


def all_vectors(field, n):
    return list(itertools.product(range(field.order), repeat=n))


def matmul_oracle(field, A, B):
    """Naive triple loop."""
    A = [list(r) for r in A]
    B = [list(r) for r in B]
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for j in range(cols):
            acc = 0
            for k in range(inner):
                acc = field.add(acc, field.mul(A[i][k], B[k][j]))
            out[i][j] = acc
    return out


def gaussian_binomial_oracle(n, d, q):
    num = den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def codewords(field, m, n, gens):
    """All codewords as tuples of row tuples."""
    flat = [tuple(int(x) for x in np.asarray(g).reshape(-1)) for g in gens]
    words = span_with_zero(field, m * n, flat)
    return [tuple(tuple(w[i * n : (i + 1) * n]) for i in range(m)) for w in words]


@functools.lru_cache(maxsize=None)
def subspaces_oracle(field, n):
    """Every subspace of F^n as a frozenset of vectors, via closure of generating sets."""
    seen = set()
    vecs = all_vectors(field, n)
    zero = tuple([0] * n)
    frontier = [frozenset([zero])]
    seen.add(frontier[0])
    while frontier:
        nxt = []
        for S in frontier:
            for v in vecs:
                if v not in S:
                    T = frozenset(span_with_zero(field, n, list(S) + [v]))
                    if T not in seen:
                        seen.add(T)
                        nxt.append(T)
        frontier = nxt
    return seen


def row_space_in(field, X, L):
    """Row(X) inside the vector set L."""
    return all(tuple(row) in L for row in X)


def rgmw_oracle(field, m, n, C1_words, C2_words, r):
    """d_{M,r} by brute force over subspaces L (as vector sets) and codeword counting."""
    q = field.order
    best = None
    C2set = set(C2_words)
    for L in subspaces_oracle(field, n):
        dL = dim_of(q, len(L))
        if best is not None and dL >= best:
            continue
        k1 = sum(1 for X in C1_words if row_space_in(field, X, L))
        k2 = sum(1 for X in C2set if row_space_in(field, X, L))
        if dim_of(q, k1) - dim_of(q, k2) >= r:
            best = dL
    return best


def rdrp_oracle(field, m, n, C1_words, C2_words, mu):
    q = field.order
    best = 0
    for L in subspaces_oracle(field, n):
        if dim_of(q, len(L)) > mu:
            continue
        k1 = sum(1 for X in C1_words if row_space_in(field, X, L))
        k2 = sum(1 for X in C2_words if row_space_in(field, X, L))
        best = max(best, dim_of(q, k1) - dim_of(q, k2))
    return best


def min_rank_oracle(field, C1_words, C2_words):
    C2set = set(C2_words)
    return min(rank_oracle(field, X) for X in C1_words if X not in C2set)


def mutual_information_bits(joint):
    """I(X;Y) in bits (float) from a dict {(x, y): count}; an entirely separate route."""
    total = sum(joint.values())
    px, py = {}, {}
    for (x, y), c in joint.items():
        px[x] = px.get(x, 0) + c
        py[y] = py.get(y, 0) + c
    info = 0.0
    for (x, y), c in joint.items():
        pxy = c / total
        info += pxy * math.log2(pxy / ((px[x] / total) * (py[y] / total)))
    return info
