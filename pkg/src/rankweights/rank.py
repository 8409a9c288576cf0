"""Matrix codes, rank supports and rank support spaces.

A ``MatrixCode`` is an F_q-linear subspace of F_q^{m x n}, stored as the
canonical RREF subspace of F_q^{mn} obtained by row-major flattening. Under
that flattening the trace product is the ordinary dot product, so the dual
of a code is the dual of its flattened subspace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import FieldMismatchError, TheoremViolation
from .guards import check_guard
from .linalg import (
    Subspace,
    batch_rank,
    coefficient_block,
    combine,
    matrix_rank,
    nullspace_rows,
    rank_rows,
)


class MatrixCode:
    """An F_q-linear code in F_q^{m x n}."""

    __slots__ = ("field", "m", "n", "space")

    def __init__(self, field, m, n, generators=()):
        if m < 1 or n < 0:
            raise ValueError(f"invalid matrix shape {m}x{n}")
        flat = []
        for g in generators:
            g = np.asarray(g, dtype=np.int64)
            if g.shape == (m, n):
                flat.append(g.reshape(-1))
            elif g.shape == (m * n,):
                flat.append(g)
            else:
                raise ValueError(f"generator of shape {g.shape} does not fit {m}x{n}")
        self.field = field
        self.m = m
        self.n = n
        self.space = Subspace(field, m * n, flat)

    @classmethod
    def from_space(cls, space, m, n):
        if space.n != m * n:
            raise ValueError("flattened dimension does not match the shape")
        obj = cls.__new__(cls)
        obj.field = space.field
        obj.m = m
        obj.n = n
        obj.space = space
        return obj

    @classmethod
    def zero(cls, field, m, n):
        return cls.from_space(Subspace.zero(field, m * n), m, n)

    @classmethod
    def full(cls, field, m, n):
        return cls.from_space(Subspace.full(field, m * n), m, n)

    @property
    def dim(self):
        return self.space.dim

    @property
    def flat(self):
        """k x mn generator matrix in RREF."""
        return self.space.basis

    @property
    def basis(self):
        """k x m x n array of basis matrices."""
        return self.space.basis.reshape(self.dim, self.m, self.n)

    def matrices(self):
        return list(self.basis)

    def _same(self, other):
        if not isinstance(other, MatrixCode):
            raise TypeError("expected a MatrixCode")
        if (other.m, other.n) != (self.m, self.n):
            raise ValueError(f"shape mismatch: {self.m}x{self.n} vs {other.m}x{other.n}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def contains(self, M):
        M = np.asarray(M, dtype=np.int64)
        if M.shape != (self.m, self.n):
            raise ValueError("matrix shape does not match the code")
        return self.space.contains(M.reshape(-1).tolist())

    def __contains__(self, M):
        return self.contains(M)

    def issubset(self, other):
        self._same(other)
        return self.space.issubset(other.space)

    __le__ = issubset

    def __lt__(self, other):
        return self.issubset(other) and self.dim < other.dim

    def __add__(self, other):
        self._same(other)
        return MatrixCode.from_space(self.space + other.space, self.m, self.n)

    def intersect(self, other):
        self._same(other)
        return MatrixCode.from_space(self.space.intersect(other.space), self.m, self.n)

    __and__ = intersect

    def dual(self):
        """Dual under the trace product <C, D> = Trace(C D^T)."""
        return MatrixCode.from_space(self.space.dual(), self.m, self.n)

    def transpose(self):
        """{C^T : C in self}, a code in F^{n x m}."""
        return MatrixCode(self.field, self.n, self.m, [g.T for g in self.basis])

    def codewords(self):
        """Yield every codeword as an m x n array (guarded)."""
        q = self.field.order
        check_guard(f"the {q}^{self.dim} codewords of a matrix code", q**self.dim)
        rows = [list(r) for r in self.space.rows]
        for coeffs in itertools.product(range(q), repeat=self.dim):
            flat = combine(self.field, coeffs, rows) if rows else [0] * (self.m * self.n)
            yield np.array(flat, dtype=np.int64).reshape(self.m, self.n)

    def __eq__(self, other):
        if not isinstance(other, MatrixCode):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and self.space == other.space

    def __hash__(self):
        return hash((self.m, self.n, self.space))

    def __repr__(self):
        return f"MatrixCode({self.field.spec}, {self.m}x{self.n}, dim={self.dim})"


def row_space(field, M):
    M = np.asarray(M, dtype=np.int64)
    return Subspace(field, M.shape[1], M)


def rank_support(code):
    """RSupp(D): the sum of the row spaces of all codewords.

    It suffices to stack the rows of the basis matrices, because the row
    space of a linear combination lies in the sum of the basis row spaces.
    """
    stacked = code.basis.reshape(code.dim * code.m, code.n)
    return Subspace(code.field, code.n, stacked)


def rank_weight(code):
    return rank_support(code).dim


@dataclass(frozen=True)
class RankSupportSpace:
    """V_L = {V : Row(V) in L} together with the subspace L it comes from."""

    L: Subspace
    code: MatrixCode


def rank_support_space(L, m):
    """V_L with its explicit basis B_{i,j}: b_j in row i, zeros elsewhere."""
    n = L.n
    gens = []
    for i in range(m):
        for b in L.rows:
            B = np.zeros((m, n), dtype=np.int64)
            B[i] = b
            gens.append(B)
    code = MatrixCode(L.field, m, n, gens)
    if code.dim != m * L.dim:  # pragma: no cover
        raise TheoremViolation("dim(V_L) != m dim(L)", {"m": m, "dim_L": L.dim, "dim": code.dim})
    return RankSupportSpace(L, code)


def parity_check(L):
    """Full-rank parity check matrix of L, shape (n - dim L) x n."""
    return L.parity_check()


def kernel_code(field, B, m):
    """{V in F^{m x n} : V B^T = 0} computed directly as a null space."""
    B = np.asarray(B, dtype=np.int64)
    mu, n = B.shape
    if mu == 0:
        return MatrixCode.full(field, m, n)
    # V B^T = 0 is the system: for each row i of V and each row b of B, V_i . b = 0
    constraints = []
    for i in range(m):
        for b in B.tolist():
            row = [0] * (m * n)
            row[i * n : (i + 1) * n] = b
            constraints.append(row)
    return MatrixCode(field, m, n, nullspace_rows(field, constraints, m * n))


def is_rank_support_space_by_dimension(V):
    """Item 1 test: L = RSupp(V) works iff dim V = m dim L."""
    L = rank_support(V)
    return V.dim == V.m * L.dim, L


def is_rank_support_space_by_basis(V):
    """Item 2 test: V splits into m copies of one row-slice space.

    For each row index i, collect the vectors v such that the matrix with v in
    row i and zeros elsewhere lies in V. V has a B_{i,j} basis exactly when
    all these slices coincide and together account for all of dim V.
    """
    field, m, n = V.field, V.m, V.n
    slices = []
    for i in range(m):
        block = []
        for j in range(n):
            row = [0] * (m * n)
            row[i * n + j] = 1
            block.append(row)
        blk = Subspace(field, m * n, block)
        inter = V.space.intersect(blk)
        slices.append(Subspace(field, n, [r[i * n : (i + 1) * n] for r in inter.rows]))
    same = all(s == slices[0] for s in slices)
    return same and m * slices[0].dim == V.dim, slices[0]


def is_rank_support_space_by_kernel(V):
    """Item 3 test: V equals the kernel code of its common right annihilator."""
    field, m, n = V.field, V.m, V.n
    rows = V.basis.reshape(V.dim * m, n).tolist()
    annihilator = nullspace_rows(field, rows, n) if rows else [
        [1 if i == j else 0 for j in range(n)] for i in range(n)
    ]
    B = np.array(annihilator, dtype=np.int64).reshape(len(annihilator), n)
    W = kernel_code(field, B, m)
    L_dim = n - matrix_rank(field, B) if len(annihilator) else n
    return W == V, B, L_dim


def characterization_verdicts(V):
    """The three equivalent characterisations of rank support spaces, evaluated independently."""
    item1, _ = is_rank_support_space_by_dimension(V)
    item2, _ = is_rank_support_space_by_basis(V)
    item3, _, _ = is_rank_support_space_by_kernel(V)
    return item1, item2, item3


def recognize_rank_support_space(V):
    """Return L with V = V_L, or None when V is not a rank support space.

    Acceptance uses the dimension criterion; the kernel characterisation is
    evaluated alongside and any disagreement is raised.
    """
    ok, L = is_rank_support_space_by_dimension(V)
    kernel_ok, B, L_dim = is_rank_support_space_by_kernel(V)
    if ok != kernel_ok or (ok and L_dim != L.dim):
        raise TheoremViolation(
            "rank support space characterisations disagree",
            {"dimension_test": ok, "kernel_test": kernel_ok, "code": repr(V)},
        )
    return L if ok else None


def support_space_intersection_dim(code, L):
    """dim(C intersect V_L) = dim C - rank of the images C_i H^T, H a parity check of L."""
    k = code.dim
    if k == 0:
        return 0
    field, n = code.field, code.n
    if L.dim == n:
        return k
    H = L.dual().basis  # (n - l) x n, and V_L = {X : X H^T = 0}
    images = field.matmul(code.basis, H.T).reshape(k, -1)
    return k - rank_rows(field, images.tolist(), images.shape[1])


def trace_product(field, C, D):
    """<C, D> = Trace(C D^T) = sum of entrywise products."""
    C = np.asarray(C, dtype=np.int64)
    D = np.asarray(D, dtype=np.int64)
    if C.shape != D.shape:
        raise ValueError(f"shape mismatch {C.shape} vs {D.shape}")
    acc = 0
    for a, b in zip(C.reshape(-1).tolist(), D.reshape(-1).tolist()):
        acc = field.add(acc, field.mul(a, b))
    return acc


def code_dual(code):
    return code.dual()


def matrix_unit(m, n, i, j):
    """E_{ij} (0-based indices)."""
    E = np.zeros((m, n), dtype=np.int64)
    E[i, j] = 1
    return E


CHUNK = 1 << 14


def codeword_blocks(code, chunk=CHUNK, skip_zero=False):
    """Yield (coeffs, words) blocks covering every codeword; words has shape (N, m, n)."""
    field, k = code.field, code.dim
    q = field.order
    total = q**k
    check_guard(f"the {q}^{k} codewords of a matrix code", total)
    flat = code.flat
    start = 1 if skip_zero else 0
    for lo in range(start, total, chunk):
        hi = min(total, lo + chunk)
        coeffs = coefficient_block(q, k, lo, hi)
        words = field.matmul(coeffs, flat) if k else np.zeros((hi - lo, code.m * code.n), dtype=np.int64)
        yield coeffs, words.reshape(-1, code.m, code.n)


def max_rank(code):
    """MaxRk(C): the largest rank of a codeword (0 for the zero code)."""
    best = 0
    for _, words in codeword_blocks(code, skip_zero=True):
        best = max(best, int(batch_rank(code.field, words).max()))
        if best == min(code.m, code.n):
            break
    return best
