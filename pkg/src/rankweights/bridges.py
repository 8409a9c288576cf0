"""Links from matrix weights to rank, Hamming and Delsarte hierarchies.

* M_alpha sends F_{q^m}-linear codes in F_{q^m}^n to F_q-linear matrix codes;
  Galois closed spaces correspond to rank support spaces.
* Delta = diag sends codes in F^n to codes in F^{n x n}; Hamming support
  spaces correspond to rank support spaces meeting the diagonal.
* Optimal anticodes (dim = m MaxRk) give Delsarte generalized weights.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import TheoremViolation
from .guards import check_guard
from .linalg import Subspace, enumerate_all_subspaces, enumerate_subspaces, gaussian_binomial
from .rank import (
    MatrixCode,
    max_rank,
    rank_support,
    rank_support_space,
    rank_weight,
    recognize_rank_support_space,
)
from .weights import weight_profile

# -- M_alpha and Galois closed spaces ----------------------------------------


def matrix_rep(ext, c):
    """M_alpha(c): column j holds the coordinates of c_j over ext.basis."""
    c = list(c)
    M = np.zeros((ext.m, len(c)), dtype=np.int64)
    for j, x in enumerate(c):
        M[:, j] = ext.to_coords(int(x))
    return M


def matrix_rep_inverse(ext, M):
    M = np.asarray(M, dtype=np.int64)
    if M.shape[0] != ext.m:
        raise ValueError(f"expected {ext.m} rows")
    return [ext.from_coords(M[:, j].tolist()) for j in range(M.shape[1])]


class ExtVectorCode:
    """An F_{q^m}-linear code in F_{q^m}^n."""

    def __init__(self, ext, n, vectors=()):
        self.ext = ext
        self.n = n
        self.space = Subspace(ext, n, [list(v) for v in vectors])

    @classmethod
    def from_space(cls, ext, space):
        obj = cls.__new__(cls)
        obj.ext = ext
        obj.n = space.n
        obj.space = space
        return obj

    @classmethod
    def zero(cls, ext, n):
        return cls.from_space(ext, Subspace.zero(ext, n))

    @classmethod
    def full(cls, ext, n):
        return cls.from_space(ext, Subspace.full(ext, n))

    @property
    def dim(self):
        return self.space.dim

    @property
    def basis(self):
        return [list(r) for r in self.space.rows]

    def issubset(self, other):
        return self.space.issubset(other.space)

    def intersect(self, other):
        return ExtVectorCode.from_space(self.ext, self.space.intersect(other.space))

    def frobenius(self):
        """V^q, spanned by the componentwise q-powers of a basis."""
        ext = self.ext
        return ExtVectorCode(ext, self.n, [[ext.frobenius(x) for x in v] for v in self.basis])

    def __eq__(self, other):
        return isinstance(other, ExtVectorCode) and self.ext == other.ext and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def __repr__(self):
        return f"ExtVectorCode({self.ext.spec}, n={self.n}, dim={self.dim}, basis={self.basis})"


def matrix_code(V):
    """M_alpha(V) as an F_q-linear code of dimension m dim(V)."""
    ext = V.ext
    gens = []
    for v in V.basis:
        for a in ext.basis:
            gens.append(matrix_rep(ext, [ext.mul(a, x) for x in v]))
    code = MatrixCode(ext.base, ext.m, V.n, gens)
    if code.dim != ext.m * V.dim:  # pragma: no cover
        raise TheoremViolation("M_alpha is not injective", {"V": repr(V)})
    return code


def ext_code_from_matrix_code(ext, C):
    """M_alpha^{-1}(C) as a set, returned as the F_{q^m}-span of its basis images.

    The span equals M_alpha^{-1}(C) exactly when C is F_{q^m}-linear under M_alpha.
    """
    return ExtVectorCode(ext, C.n, [matrix_rep_inverse(ext, X) for X in C.basis])


def is_galois_closed(V):
    """V^q in V, cross-checked against M_alpha(V) being a rank support space."""
    direct = V.frobenius().issubset(V)
    L = recognize_rank_support_space(matrix_code(V))
    if direct != (L is not None) or (L is not None and L.dim != V.dim):
        raise TheoremViolation(
            "Galois closure and the rank support space test disagree",
            {"V": repr(V), "frobenius_test": direct, "rank_support_test": L is not None},
        )
    return direct


def galois_closed_spaces(ext, n, max_dim=None):
    """Every Galois closed space, built as M_alpha^{-1}(V_L) over all L in F_q^n."""
    for L in enumerate_all_subspaces(ext.base, n, max_dim):
        VL = rank_support_space(L, ext.m).code
        V = ext_code_from_matrix_code(ext, VL)
        if V.dim != L.dim or matrix_code(V) != VL:
            raise TheoremViolation("M_alpha^{-1}(V_L) is not a Galois closed space of dim(L)", {"L": repr(L)})
        yield L, V


def _ext_pair(C1, C2):
    if not C2.issubset(C1) or C2.dim == C1.dim:
        raise ValueError("need C2 strictly inside C1")
    return C1.dim - C2.dim


def _ext_gaps(C1, C2, max_dim=None):
    for L, V in galois_closed_spaces(C1.ext, C1.n, max_dim):
        yield V, C1.intersect(V).dim - C2.intersect(V).dim


def rdip(C1, C2, mu):
    """K_{R,mu}(C1, C2) over Galois closed spaces of dimension <= mu."""
    _ext_pair(C1, C2)
    if not 0 <= mu <= C1.n:
        raise ValueError(f"mu must lie in 0..{C1.n}")
    return max(g for _, g in _ext_gaps(C1, C2, mu))


def rgrw(C1, C2, r):
    """d_{R,r}(C1, C2) over Galois closed spaces."""
    ell = _ext_pair(C1, C2)
    if not 1 <= r <= ell:
        raise ValueError(f"r must lie in 1..{ell}")
    for V, g in _ext_gaps(C1, C2):
        if g >= r:
            return V.dim
    raise TheoremViolation("no Galois closed space separates the pair", {"r": r})  # pragma: no cover


@dataclass
class RankBridgeReport:
    d_R: list
    K_R: list
    d_M: list
    K_M: list
    collapse_ok: bool
    profile_ok: bool

    @property
    def ok(self):
        return self.collapse_ok and self.profile_ok


def rank_bridge(C1, C2, wei="auto"):
    """Compare RGRW/RDIP with RGMW/RDRP of the matrix images."""
    ell = _ext_pair(C1, C2)
    m, n = C1.ext.m, C1.n
    table = list(_ext_gaps(C1, C2))
    d_R = [next(V.dim for V, g in table if g >= r) for r in range(1, ell + 1)]
    K_R = [max(g for V, g in table if V.dim <= mu) for mu in range(n + 1)]
    prof = weight_profile(matrix_code(C1), matrix_code(C2), wei=wei)
    collapse = all(d_R[r - 1] == prof.dM(r * m - p) for r in range(1, ell + 1) for p in range(m))
    scaled = all(m * K_R[mu] == prof.KM(mu) for mu in range(n + 1))
    report = RankBridgeReport(d_R, K_R, prof.d, prof.K, collapse, scaled)
    if not report.ok:
        raise TheoremViolation("rank weight bridge identities fail", report.__dict__)
    return report


# -- Delta and Hamming supports ----------------------------------------------


def delta_embed(c):
    return np.diag(np.asarray(c, dtype=np.int64))


def delta_code(D):
    """Delta(D) for a Subspace D of F^n."""
    return MatrixCode(D.field, D.n, D.n, [delta_embed(v) for v in D.rows])


def hamming_support(D):
    """HSupp(D) as a sorted tuple of 0-based indices (read off a basis)."""
    return tuple(j for j in range(D.n) if any(row[j] for row in D.rows))


def hamming_support_space(field, n, I):
    """L_I = {c : c_i = 0 for i not in I}."""
    return Subspace(field, n, [[1 if j == i else 0 for j in range(n)] for i in I])


def _hamming_gaps(C1, C2):
    field, n = C1.field, C1.n
    for size in range(n + 1):
        for I in itertools.combinations(range(n), size):
            LI = hamming_support_space(field, n, I)
            yield I, C1.intersect(LI).dim - C2.intersect(LI).dim


def rdlp(C1, C2, mu):
    check_guard(f"the 2^{C1.n} Hamming supports", 2**C1.n)
    _vector_pair(C1, C2)
    return max(g for I, g in _hamming_gaps(C1, C2) if len(I) <= mu)


def rghw(C1, C2, r):
    check_guard(f"the 2^{C1.n} Hamming supports", 2**C1.n)
    ell = _vector_pair(C1, C2)
    if not 1 <= r <= ell:
        raise ValueError(f"r must lie in 1..{ell}")
    return next(len(I) for I, g in _hamming_gaps(C1, C2) if g >= r)


def _vector_pair(C1, C2):
    if not C2.issubset(C1) or C2.dim == C1.dim:
        raise ValueError("need C2 strictly inside C1")
    return C1.dim - C2.dim


def delta_support_checks(D):
    """RSupp(Delta(D)) = L_J and wt_R(Delta(D)) = wt_H(D), J = HSupp(D)."""
    J = hamming_support(D)
    DD = delta_code(D)
    rs = rank_support(DD) == hamming_support_space(D.field, D.n, J)
    wt = rank_weight(DD) == len(J)
    return rs and wt


@dataclass
class HammingBridgeReport:
    d_H: list
    K_H: list
    d_M: list
    K_M: list
    weights_ok: bool
    profile_ok: bool
    support_ok: bool

    @property
    def ok(self):
        return self.weights_ok and self.profile_ok and self.support_ok


def hamming_bridge(C1, C2, wei="auto"):
    ell = _vector_pair(C1, C2)
    n = C1.n
    check_guard(f"the 2^{n} Hamming supports", 2**n)
    table = list(_hamming_gaps(C1, C2))
    d_H = [next(len(I) for I, g in table if g >= r) for r in range(1, ell + 1)]
    K_H = [max(g for I, g in table if len(I) <= mu) for mu in range(n + 1)]
    prof = weight_profile(delta_code(C1), delta_code(C2), wei=wei)
    support_ok = delta_support_checks(C1) and delta_support_checks(C2)
    report = HammingBridgeReport(d_H, K_H, prof.d, prof.K, d_H == prof.d, K_H == prof.K, support_ok)
    if not report.ok:
        raise TheoremViolation("Hamming weight bridge identities fail", report.__dict__)
    return report


# -- optimal anticodes and Delsarte generalized weights -----------------------

ANTICODE_AMBIENT_LIMIT = 9


def is_optimal_anticode(V):
    return V.dim == V.m * max_rank(V)


def _anticode_guard(m, n, q):
    if m * n > ANTICODE_AMBIENT_LIMIT:
        raise ValueError(f"anticode enumeration is limited to m*n <= {ANTICODE_AMBIENT_LIMIT}")
    total = sum(gaussian_binomial(m * n, d, q) for d in range(0, m * n + 1, m))
    check_guard(f"{total} candidate subspaces of F_{q}^({m}x{n})", total)


def enumerate_optimal_anticodes(field, m, n):
    """Yield every linear optimal anticode in F^{m x n} by exhaustive filtering.

    Only dimensions divisible by m can satisfy dim = m MaxRk.
    """
    _anticode_guard(m, n, field.order)
    for d in range(0, m * n + 1, m):
        for S in enumerate_subspaces(field, m * n, d):
            V = MatrixCode.from_space(S, m, n)
            if is_optimal_anticode(V):
                yield V


_ANTICODE_CACHE = {}


def optimal_anticodes(field, m, n):
    key = (field, m, n)
    if key not in _ANTICODE_CACHE:
        _ANTICODE_CACHE[key] = list(enumerate_optimal_anticodes(field, m, n))
    return _ANTICODE_CACHE[key]


@dataclass(frozen=True)
class DGW:
    r: int
    min_dim: int
    value: Fraction
    integral: bool
    witness: MatrixCode


def dgw(C, r, anticodes=None):
    """d_{D,r}(C) = m^{-1} min{dim V : V optimal anticode, dim(C & V) >= r}."""
    if not 1 <= r <= C.dim:
        raise ValueError(f"r must lie in 1..{C.dim}")
    pool = optimal_anticodes(C.field, C.m, C.n) if anticodes is None else anticodes
    best = None
    for V in pool:
        if (best is None or V.dim < best.dim) and C.intersect(V).dim >= r:
            best = V
    value = Fraction(best.dim, C.m)
    return DGW(r, best.dim, value, value.denominator == 1, best)


def rank_support_spaces_are_anticodes(field, m, n, anticodes=None):
    """Check RS(F^{m x n}) is inside A(F^{m x n})."""
    pool = set(optimal_anticodes(field, m, n) if anticodes is None else anticodes)
    missing = [L for L in enumerate_all_subspaces(field, n) if rank_support_space(L, m).code not in pool]
    return not missing, missing


@dataclass
class ComparisonRow:
    r: int
    d_D: Fraction
    d_M: int
    integral: bool

    @property
    def relation(self):
        if self.d_D > self.d_M:
            return "VIOLATED"
        return "STRICT" if self.d_D < self.d_M else "EQUAL"


def compare_weights(C, wei="auto"):
    """Rows {r, d_D, d_M, relation} for r = 1..dim C; raises if d_D > d_M."""
    prof = weight_profile(C, MatrixCode.zero(C.field, C.m, C.n), wei=wei)
    rows = []
    for r in range(1, C.dim + 1):
        D = dgw(C, r)
        rows.append(ComparisonRow(r, D.value, prof.dM(r), D.integral))
    bad = [row.r for row in rows if row.relation == "VIOLATED"]
    if bad:
        raise TheoremViolation(f"d_D,r > d_M,r at r = {bad}", {"rows": [row.__dict__ for row in rows]})
    return rows

