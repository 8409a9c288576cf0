"""Security equivalences, rank isometries and minimum code parameters."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TheoremViolation
from .linalg import (
    Subspace,
    batch_rank,
    combine,
    enumerate_all_subspaces,
    matrix_rank,
    solve_coords,
)
from .rank import (
    MatrixCode,
    codeword_blocks,
    rank_support,
    rank_support_space,
    recognize_rank_support_space,
)
from .weights import rgmw_definitional

SECURITY_EQUIVALENCE = "security_equivalence"
RANK_ISOMETRY = "rank_isometry"
NEITHER = "neither"


def apply_map(C, A, B):
    """{A X B : X in C}; A must be m x m invertible, B an n x n' matrix of rank n'."""
    field = C.field
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape != (C.m, C.m) or B.shape[0] != C.n:
        raise ValueError(f"A must be {C.m}x{C.m} and B must have {C.n} rows")
    if matrix_rank(field, A) != C.m:
        raise ValueError("A is not invertible")
    if matrix_rank(field, B) != min(B.shape):
        raise ValueError("B is not full rank")
    images = [field.matmul(field.matmul(A, X), B) for X in C.basis]
    return MatrixCode(field, C.m, B.shape[1], images)


class LinearMap:
    """A linear map out of a code V, fixed by the images of V's canonical basis."""

    def __init__(self, V, images, shape):
        self.V = V
        self.shape = shape
        self.images = [np.asarray(M, dtype=np.int64).reshape(-1) for M in images]
        if len(self.images) != V.dim:
            raise ValueError(f"need {V.dim} basis images, got {len(self.images)}")
        self._src = [list(r) for r in V.space.rows]

    @classmethod
    def from_matrices(cls, V, A, B):
        field = V.field
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        images = [field.matmul(field.matmul(A, X), B) for X in V.basis]
        return cls(V, images, (V.m, B.shape[1]))

    @classmethod
    def transpose(cls, V):
        return cls(V, [X.T for X in V.basis], (V.n, V.m))

    def image_code(self, D=None):
        """phi(D) for a subcode D of V (default: V itself)."""
        D = self.V if D is None else D
        field = self.V.field
        gens = []
        for row in D.space.rows:
            c = solve_coords(field, self._src, list(row))
            if c is None:
                raise ValueError("argument is not inside the domain of the map")
            gens.append(combine(field, c, [r.tolist() for r in self.images]) if self.images else [])
        return MatrixCode(field, *self.shape, gens)

    def preimage_code(self, U):
        """phi^{-1}(U) for a subcode U of the image (phi assumed injective)."""
        field = self.V.field
        imgs = [r.tolist() for r in self.images]
        gens = []
        for row in U.space.rows:
            c = solve_coords(field, imgs, list(row))
            if c is None:
                raise ValueError("argument is not inside the image of the map")
            gens.append(combine(field, c, self._src))
        return MatrixCode(field, self.V.m, self.V.n, gens)

    def is_bijection_onto(self, W):
        img = self.image_code()
        return img.dim == self.V.dim and img == W


def _rank_support_subspaces(V):
    """Every V_{L'} with L' contained in the L of V = V_L."""
    L = recognize_rank_support_space(V)
    if L is None:
        raise ValueError("domain is not a rank support space")
    field = V.field
    rows = [list(r) for r in L.rows]
    for S in enumerate_all_subspaces(field, L.dim):
        Lp = Subspace(field, L.n, [combine(field, list(c), rows) for c in S.rows])
        yield rank_support_space(Lp, V.m).code


def _preserves_rank(phi):
    V = phi.V
    field = V.field
    imgs = np.array([r for r in phi.images], dtype=np.int64).reshape(V.dim, -1)
    for coeffs, words in codeword_blocks(V, skip_zero=True):
        out = field.matmul(coeffs, imgs).reshape(-1, *phi.shape)
        if not np.array_equal(batch_rank(field, words), batch_rank(field, out)):
            return False
    return True


@dataclass(frozen=True)
class MapVerdict:
    label: str
    p2: bool
    p4: bool
    forward_ok: bool
    backward_ok: bool


def classify_map(phi, W):
    """Classify a bijection phi: V -> W between rank support spaces.

    (P2) is decided exhaustively on rank support subspaces in both directions,
    (P4) on every element of V.
    """
    if not phi.is_bijection_onto(W):
        raise ValueError("map is not a linear bijection onto the target space")
    if recognize_rank_support_space(W) is None:
        raise ValueError("target is not a rank support space")
    forward = all(
        recognize_rank_support_space(phi.image_code(U)) is not None for U in _rank_support_subspaces(phi.V)
    )
    backward = all(
        recognize_rank_support_space(phi.preimage_code(U)) is not None for U in _rank_support_subspaces(W)
    )
    p2 = forward and backward
    p4 = _preserves_rank(phi)
    if p2 and not p4:
        raise TheoremViolation("security equivalence that is not a rank isometry", {"V": repr(phi.V)})
    label = SECURITY_EQUIVALENCE if p2 else RANK_ISOMETRY if p4 else NEITHER
    return MapVerdict(label, p2, p4, forward, backward)


@dataclass(frozen=True)
class MinimalParameters:
    n_min: int
    m_min: int
    compressed: MatrixCode
    columns: tuple
    verdict: MapVerdict | None


def minimal_parameters(C, verify=True):
    """Smallest n' (and the analogous m') admitting a security-equivalent copy of C.

    The copy keeps the pivot columns of RSupp(C): every codeword X lies in
    V_L for L = RSupp(C), and X is determined by X restricted to the pivots.
    """
    field, m, n, k = C.field, C.m, C.n, C.dim
    if k == 0:
        return MinimalParameters(0, 0, MatrixCode(field, m, 0), (), None)
    n_min, _ = rgmw_definitional(C, MatrixCode.zero(field, m, n), k)
    T = C.transpose()
    m_min, _ = rgmw_definitional(T, MatrixCode.zero(field, n, m), k)
    L = rank_support(C)
    if L.dim != n_min:
        raise TheoremViolation("d_M,k(C) differs from wt_R(C)", {"d": n_min, "wt": L.dim})
    cols = tuple(L.pivots)
    S = np.zeros((n, len(cols)), dtype=np.int64)
    for j, c in enumerate(cols):
        S[c, j] = 1
    compressed = MatrixCode(field, m, len(cols), [X[:, list(cols)] for X in C.basis])
    verdict = None
    if verify:
        VL = rank_support_space(L, m).code
        phi = LinearMap.from_matrices(VL, np.eye(m, dtype=np.int64), S)
        verdict = classify_map(phi, MatrixCode.full(field, m, len(cols)))
        if verdict.label != SECURITY_EQUIVALENCE or phi.image_code(C) != compressed:
            raise TheoremViolation("column compression is not a security equivalence", {"columns": cols})
    return MinimalParameters(n_min, m_min, compressed, cols, verdict)
