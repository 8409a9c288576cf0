import numpy as np
import pytest

from helpers import random_code, random_pair
from oracles import rank_oracle
from rankweights.field import Field
from rankweights.linalg import Subspace, matrix_rank
from rankweights.equivalence import (
    RANK_ISOMETRY,
    SECURITY_EQUIVALENCE,
    LinearMap,
    apply_map,
    classify_map,
    minimal_parameters,
)
from rankweights.rank import MatrixCode, rank_support_space
from rankweights.weights import gmw_table, weight_profile


def invertible(field, rng, k):
    while True:
        M = field.random(rng, (k, k))
        if matrix_rank(field, M) == k:
            return M


def rank_isometry_oracle(phi):
    field = phi.V.field
    for X in phi.V.codewords():
        Y = phi.image_code(MatrixCode(field, phi.V.m, phi.V.n, [X])) if X.any() else None
        if Y is not None and rank_oracle(field, X.tolist()) != rank_oracle(field, Y.basis[0].tolist()):
            return False
    return True


def test_identity_is_security_equivalence(F2):
    V = MatrixCode.full(F2, 2, 2)
    phi = LinearMap.from_matrices(V, np.eye(2, dtype=int), np.eye(2, dtype=int))
    v = classify_map(phi, V)
    assert v.label == SECURITY_EQUIVALENCE and v.p2 and v.p4


def test_transpose_is_rank_isometry_only(F2):
    V = MatrixCode.full(F2, 2, 2)
    phi = LinearMap.transpose(V)
    v = classify_map(phi, V)
    assert v.label == RANK_ISOMETRY and v.p4 and not v.p2
    assert rank_isometry_oracle(phi)
    # concrete witness: V_<e1> is sent to a code that is not a rank support space
    L = Subspace(F2, 2, [[1, 0]])
    image = phi.image_code(rank_support_space(L, 2).code)
    assert image.dim == 2 and image != rank_support_space(L, 2).code


@pytest.mark.parametrize("q", [2, 3])
def test_acb_maps_are_security_equivalences(q):
    F = Field(q)
    rng = np.random.default_rng(40 + q)
    V = MatrixCode.full(F, 2, 2)
    for _ in range(6):
        A, B = invertible(F, rng, 2), invertible(F, rng, 2)
        phi = LinearMap.from_matrices(V, A, B)
        v = classify_map(phi, V)
        assert v.label == SECURITY_EQUIVALENCE
        assert rank_isometry_oracle(phi)


def test_acb_preserves_profiles(F2):
    rng = np.random.default_rng(5)
    for _ in range(25):
        C1, C2 = random_pair(F2, rng, 2, 3, max_k1=4)
        A, B = invertible(F2, rng, 2), invertible(F2, rng, 3)
        D1, D2 = apply_map(C1, A, B), apply_map(C2, A, B)
        p, p_img = weight_profile(C1, C2), weight_profile(D1, D2)
        assert p.d == p_img.d and p.K == p_img.K


def test_apply_map_rejects_singular(F2, viii_c):
    with pytest.raises(ValueError):
        apply_map(viii_c, np.zeros((2, 2), dtype=int), np.eye(2, dtype=int))
    with pytest.raises(ValueError):
        apply_map(viii_c, np.eye(2, dtype=int), [[1, 1], [1, 1]])


def test_non_bijection_rejected(F2):
    V = MatrixCode.full(F2, 2, 2)
    phi = LinearMap.from_matrices(V, np.eye(2, dtype=int), [[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        classify_map(phi, V)


def test_rank_changing_bijection_is_neither(F2):
    # E11 -> I, other units fixed: bijective, but sends a rank-1 matrix to rank 2
    V = MatrixCode.full(F2, 2, 2)
    imgs = [b.copy() for b in V.basis]
    imgs[0] = np.eye(2, dtype=int)
    phi = LinearMap(V, imgs, (2, 2))
    assert phi.is_bijection_onto(V)
    v = classify_map(phi, V)
    assert not v.p4 and v.label == "neither"
    assert not rank_isometry_oracle(phi)


def test_minimal_parameters_examples(F2, viii_c):
    mp = minimal_parameters(viii_c)
    assert mp.n_min == 2 and mp.m_min == 1
    L = Subspace(F2, 3, [[1, 0, 1]])
    VL = rank_support_space(L, 2).code
    mp = minimal_parameters(VL)
    assert mp.n_min == 1 and mp.compressed.dim == VL.dim and mp.compressed.n == 1
    z = minimal_parameters(MatrixCode.zero(F2, 2, 3))
    assert (z.n_min, z.m_min) == (0, 0)


def test_compressed_codes_keep_their_weights(F2):
    rng = np.random.default_rng(17)
    for _ in range(20):
        C = random_code(F2, rng, 2, 3, int(rng.integers(1, 4)))
        mp = minimal_parameters(C)
        assert mp.compressed.n == mp.n_min
        assert gmw_table(mp.compressed) == gmw_table(C)
        assert mp.verdict.label == SECURITY_EQUIVALENCE
