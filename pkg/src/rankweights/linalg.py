"""Linear algebra over finite fields: RREF, kernels and canonical subspaces.

Every routine takes the field first and works on integer element codes.
Matrices may be numpy arrays or nested lists; the elimination kernels run
on plain Python lists, which is faster than numpy at the sizes exhaustive
enumeration allows. Over F_2, ``rank_gf2`` packs rows into ints.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import FieldMismatchError
from .guards import check_guard


def _rows(M):
    return [[int(x) for x in row] for row in np.asarray(M, dtype=np.int64).tolist()]


def rref_rows(field, rows, ncols):
    """Reduce ``rows`` in place-free fashion; return (nonzero RREF rows, pivot columns)."""
    rows = [[int(x) for x in r] for r in rows]
    if field.is_prime:
        return _rref_prime(field.p, rows, ncols)
    return _rref_table(field, rows, ncols)


def _rref_prime(p, rows, ncols):
    pivots = []
    rank = 0
    nrows = len(rows)
    for col in range(ncols):
        if rank == nrows:
            break
        piv = None
        for i in range(rank, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        if lead != 1:
            inv = pow(lead, p - 2, p)
            rows[rank] = [(x * inv) % p for x in rows[rank]]
        pr = rows[rank]
        for i in range(nrows):
            if i != rank:
                f = rows[i][col]
                if f:
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], pr)]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def _rref_table(field, rows, ncols):
    add, mul, neg, inv = field.add_table, field.mul_table, field.neg_table, field.inv_table
    pivots = []
    rank = 0
    nrows = len(rows)
    for col in range(ncols):
        if rank == nrows:
            break
        piv = None
        for i in range(rank, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        if lead != 1:
            li = mul[inv[lead]]
            rows[rank] = [li[x] for x in rows[rank]]
        pr = rows[rank]
        for i in range(nrows):
            if i != rank:
                f = rows[i][col]
                if f:
                    nf = mul[neg[f]]
                    rows[i] = [add[a][nf[b]] for a, b in zip(rows[i], pr)]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def rref(field, M):
    """Return (R, pivots, rank) with R the RREF of M, padded with zero rows to M's shape."""
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    nrows, ncols = M.shape
    reduced, pivots = rref_rows(field, M.tolist(), ncols)
    R = np.zeros((nrows, ncols), dtype=np.int64)
    if reduced:
        R[: len(reduced)] = np.array(reduced, dtype=np.int64)
    return R, pivots, len(pivots)


def rank_gf2(ints):
    """Rank over F_2 of rows packed as Python ints."""
    pivots = {}
    for v in ints:
        while v:
            h = v.bit_length() - 1
            b = pivots.get(h)
            if b is None:
                pivots[h] = v
                break
            v ^= b
    return len(pivots)


def pack_gf2(row):
    v = 0
    for j, x in enumerate(row):
        if x:
            v |= 1 << j
    return v


def rank_rows(field, rows, ncols):
    if not rows or ncols == 0:
        return 0
    if field.is_prime and field.p == 2:
        return rank_gf2([pack_gf2(r) for r in rows])
    return len(rref_rows(field, rows, ncols)[1])


def matrix_rank(field, M):
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2 or M.size == 0:
        return 0
    return rank_rows(field, M.tolist(), M.shape[1])


def nullspace_rows(field, rows, ncols):
    """RREF basis of {x in F^ncols : row . x = 0 for every row}."""
    reduced, pivots = rref_rows(field, rows, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(reduced, pivots):
            if row[f]:
                v[pc] = field.neg(row[f])
        basis.append(v)
    return rref_rows(field, basis, ncols)[0]


def nullspace(field, M):
    """Right kernel of M as an array whose rows are an RREF basis."""
    M = np.asarray(M, dtype=np.int64)
    ncols = M.shape[1]
    basis = nullspace_rows(field, M.tolist(), ncols)
    return np.array(basis, dtype=np.int64).reshape(len(basis), ncols)


def inverse_matrix(field, M):
    """Inverse of a square matrix as nested lists; ValueError when singular."""
    rows = _rows(M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    aug = [r + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    reduced, pivots = rref_rows(field, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in reduced[:n]]


def solve_coords(field, basis_rows, v):
    """Coordinates c with sum c_i basis_i = v, or None if v is outside the span.

    ``basis_rows`` must be linearly independent.
    """
    k = len(basis_rows)
    ncols = len(v)
    # transpose system: columns are basis rows, augmented with v
    aug = [[basis_rows[i][j] for i in range(k)] + [v[j]] for j in range(ncols)]
    reduced, pivots = rref_rows(field, aug, k + 1)
    if k in pivots:
        return None
    coords = [0] * k
    for row, pc in zip(reduced, pivots):
        coords[pc] = row[k]
    return coords


def combine(field, coeffs, rows):
    """sum_i coeffs[i] * rows[i] as a list."""
    width = len(rows[0]) if rows else 0
    if field.is_prime:
        p = field.p
        acc = [0] * width
        for c, r in zip(coeffs, rows):
            if c:
                acc = [(a + c * b) for a, b in zip(acc, r)]
        return [a % p for a in acc]
    acc = [0] * width
    add, mul = field.add_table, field.mul_table
    for c, r in zip(coeffs, rows):
        if c:
            mc = mul[c]
            acc = [add[a][mc[b]] for a, b in zip(acc, r)]
    return acc


class Subspace:
    """An F-linear subspace of F^n stored by its RREF basis.

    Two subspaces are equal exactly when their RREF bases coincide, so the
    class is hashable and safe to use as a dictionary key.
    """

    __slots__ = ("field", "n", "rows", "pivots", "_hash")

    def __init__(self, field, n, vectors=()):
        rows = [[int(x) for x in v] for v in vectors]
        for r in rows:
            if len(r) != n:
                raise ValueError(f"vector of length {len(r)} in ambient dimension {n}")
            for x in r:
                if not 0 <= x < field.order:
                    raise FieldMismatchError(f"{x} is not an element of {field.spec}")
        reduced, pivots = rref_rows(field, rows, n) if rows else ([], [])
        self._set(field, n, reduced, pivots)

    def _set(self, field, n, reduced, pivots):
        self.field = field
        self.n = n
        self.rows = tuple(tuple(r) for r in reduced)
        self.pivots = tuple(pivots)
        self._hash = None

    @classmethod
    def _from_rref(cls, field, n, rows, pivots):
        obj = cls.__new__(cls)
        obj._set(field, n, rows, pivots)
        return obj

    @classmethod
    def zero(cls, field, n):
        return cls._from_rref(field, n, [], [])

    @classmethod
    def full(cls, field, n):
        eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return cls._from_rref(field, n, eye, list(range(n)))

    @property
    def dim(self):
        return len(self.rows)

    @property
    def basis(self):
        return np.array(self.rows, dtype=np.int64).reshape(self.dim, self.n)

    def _same(self, other):
        if not isinstance(other, Subspace):
            raise TypeError("expected a Subspace")
        if other.n != self.n:
            raise ValueError(f"ambient dimensions differ: {self.n} vs {other.n}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def contains(self, v):
        v = [int(x) for x in v]
        if len(v) != self.n:
            raise ValueError("vector length does not match the ambient dimension")
        # reduce v against the RREF basis
        field = self.field
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                v = [field.sub(a, field.mul(c, b)) for a, b in zip(v, row)]
        return not any(v)

    def __contains__(self, v):
        return self.contains(v)

    def issubset(self, other):
        self._same(other)
        return all(other.contains(r) for r in self.rows)

    __le__ = issubset

    def __add__(self, other):
        self._same(other)
        return Subspace(self.field, self.n, list(self.rows) + list(other.rows))

    def intersect(self, other):
        """Zassenhaus intersection; independent of the dual-based identities."""
        self._same(other)
        n = self.n
        if not self.rows or not other.rows:
            return Subspace.zero(self.field, n)
        aug = [list(a) + list(a) for a in self.rows] + [list(b) + [0] * n for b in other.rows]
        reduced, pivots = rref_rows(self.field, aug, 2 * n)
        inter = [r[n:] for r, pc in zip(reduced, pivots) if pc >= n]
        return Subspace(self.field, n, inter)

    __and__ = intersect

    def dual(self):
        """Orthogonal complement under the standard dot product."""
        if not self.rows:
            return Subspace.full(self.field, self.n)
        basis = nullspace_rows(self.field, [list(r) for r in self.rows], self.n)
        return Subspace(self.field, self.n, basis)

    def parity_check(self):
        """Full-rank H with self = {x : H x^T = 0}; shape (n - dim) x n."""
        d = self.dual()
        return d.basis

    def vectors(self):
        """Every element of the subspace, in coordinate-lexicographic order."""
        check_guard(f"the {self.field.order}^{self.dim} vectors of a subspace", self.field.order**self.dim)
        rows = [list(r) for r in self.rows]
        for coeffs in itertools.product(range(self.field.order), repeat=self.dim):
            yield tuple(combine(self.field, coeffs, rows)) if rows else tuple([0] * self.n)

    def coords(self, v):
        """Coordinates of v in the RREF basis, or None when v is not in the span."""
        v = [int(x) for x in v]
        coords = [v[pc] for pc in self.pivots]
        recon = combine(self.field, coords, [list(r) for r in self.rows]) if self.rows else [0] * self.n
        return coords if recon == v else None

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.n, self.rows))
        return self._hash

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.n}, basis={[list(r) for r in self.rows]})"


def gaussian_binomial(n, d, q):
    """Number of d-dimensional subspaces of F_q^n, by the product formula."""
    if d < 0 or d > n:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(field, n, d, limit=None):
    """Yield every d-dimensional subspace of F^n exactly once.

    Order: pivot patterns lexicographically, then the free RREF entries
    lexicographically (row-major). Refuses when q^n exceeds the guard.
    """
    if not 0 <= d <= n:
        raise ValueError(f"dimension {d} out of range for ambient dimension {n}")
    q = field.order
    check_guard(
        f"{gaussian_binomial(n, d, q)} subspaces of dimension {d} in F_{q}^{n} (q^n = {q**n})",
        q**n,
        limit,
    )
    for pivots in itertools.combinations(range(n), d):
        pivot_set = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivot_set]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(d)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), x in zip(free, values):
                rows[i][j] = x
            yield Subspace._from_rref(field, n, rows, list(pivots))


def enumerate_all_subspaces(field, n, max_dim=None, limit=None):
    """Subspaces of every dimension 0..max_dim, in increasing dimension."""
    top = n if max_dim is None else min(max_dim, n)
    for d in range(top + 1):
        yield from enumerate_subspaces(field, n, d, limit=limit)


def random_matrix(field, rng, rows, cols):
    return field.random(rng, size=(rows, cols)).astype(np.int64)


def random_subspace(field, rng, n, d):
    """A uniformly random d-dimensional subspace (rejection on full-rank generators)."""
    if not 0 <= d <= n:
        raise ValueError("dimension out of range")
    while True:
        M = random_matrix(field, rng, d, n)
        S = Subspace(field, n, M)
        if S.dim == d:
            return S


def batch_rank(field, mats):
    """Ranks of a stack of matrices, shape (N, rows, cols) -> (N,).

    Vectorised Gaussian elimination; every matrix in the batch advances one
    column per step.
    """
    A = np.array(mats, dtype=np.int64, copy=True)
    N, m, n = A.shape
    rank = np.zeros(N, dtype=np.int64)
    if N == 0 or m == 0 or n == 0:
        return rank
    inv = np.array([0] + [field.inv(a) for a in range(1, field.order)], dtype=np.int64)
    rowidx = np.arange(m)
    for c in range(n):
        cand = (A[:, :, c] != 0) & (rowidx[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        sel = np.nonzero(has)[0]
        piv = np.argmax(cand[sel], axis=1)
        r = rank[sel]
        top = A[sel, r].copy()
        A[sel, r] = A[sel, piv]
        A[sel, piv] = top
        lead = A[sel, r, c]
        prow = field.vmul(A[sel, r], inv[lead][:, None])
        A[sel, r] = prow
        f = A[sel, :, c].copy()
        f[np.arange(len(sel)), r] = 0
        A[sel] = field.vsub(A[sel], field.vmul(f[:, :, None], prow[:, None, :]))
        rank[sel] += 1
    return rank


def coefficient_block(q, k, start, stop):
    """Rows start..stop-1 of the lexicographic list of all vectors in F_q^k (as codes)."""
    idx = np.arange(start, stop, dtype=np.int64)
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % q
