import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_vectors, gaussian_binomial_oracle, matmul_oracle, rank_oracle, span_with_zero, subspaces_oracle
from rankweights.errors import GuardExceeded
from rankweights.field import Field
from rankweights.linalg import (
    Subspace,
    batch_rank,
    enumerate_all_subspaces,
    enumerate_subspaces,
    gaussian_binomial,
    inverse_matrix,
    matrix_rank,
    rank_gf2,
    pack_gf2,
    rref,
    rref_rows,
    solve_coords,
)


def _vecset(S):
    return set(S.vectors())


def test_rref_examples(F2):
    R, piv, rk = rref(F2, np.eye(3, dtype=int))
    assert R.tolist() == np.eye(3, dtype=int).tolist() and piv == [0, 1, 2] and rk == 3
    R, piv, rk = rref(F2, np.zeros((2, 2), dtype=int))
    assert R.tolist() == [[0, 0], [0, 0]] and piv == [] and rk == 0
    R, piv, rk = rref(F2, [[1, 1], [1, 1]])
    assert R.tolist() == [[1, 1], [0, 0]] and piv == [0] and rk == 1


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_rref_is_canonical_and_preserves_row_space(q):
    F = Field(q)
    rng = np.random.default_rng(q)
    for _ in range(25):
        M = F.random(rng, (3, 4))
        R, piv, rk = rref(F, M)
        assert rref(F, R)[0].tolist() == R.tolist()
        assert rk == rank_oracle(F, M.tolist())
        space = span_with_zero(F, 4, R[:rk].tolist())
        assert all(tuple(r) in space for r in M.tolist())
        assert span_with_zero(F, 4, M.tolist()) == space
        for i, p in enumerate(piv):
            assert R[i, p] == 1 and sum(1 for x in R[:, p] if x) == 1
        assert list(piv) == sorted(piv)


def test_subspace_calculus_examples(F2):
    e1, e2 = Subspace(F2, 3, [[1, 0, 0]]), Subspace(F2, 3, [[0, 1, 0]])
    assert e1 + e2 == Subspace(F2, 3, [[1, 0, 0], [0, 1, 0]])
    assert e1.intersect(e2) == Subspace.zero(F2, 3)
    assert Subspace.full(F2, 3).dual() == Subspace.zero(F2, 3)
    A = Subspace(F2, 3, [[1, 1, 0]])
    want = {v for v in all_vectors(F2, 3) if (v[0] + v[1]) % 2 == 0}
    assert _vecset(A.dual()) == want
    assert A.dual() == Subspace(F2, 3, [[1, 1, 0], [0, 0, 1]])


def test_mismatched_ambient_dimension_raises(F2):
    with pytest.raises(ValueError):
        Subspace(F2, 2, [[1, 0]]) + Subspace(F2, 3, [[1, 0, 0]])


def test_duality_involution_all_subspaces_of_f2_4(F2):
    subs = list(enumerate_all_subspaces(F2, 4))
    assert len(subs) == 67
    assert {frozenset(_vecset(S)) for S in subs} == subspaces_oracle(F2, 4)
    for A in subs:
        D = A.dual()
        assert D.dim == 4 - A.dim
        assert D.dual() == A
        # against the dot-product definition
        assert _vecset(D) == {
            v for v in all_vectors(F2, 4) if all(sum(a * b for a, b in zip(v, w)) % 2 == 0 for w in A.rows)
        }


def test_sum_intersection_dimension_formula_and_dual_identity(F2):
    subs = list(enumerate_all_subspaces(F2, 3))
    for A in subs:
        for B in subs:
            assert (A + B).dim == A.dim + B.dim - A.intersect(B).dim
            assert (A + B).dual() == A.dual().intersect(B.dual())
            assert _vecset(A.intersect(B)) == _vecset(A) & _vecset(B)
            assert A.issubset(B) == (_vecset(A) <= _vecset(B))


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", range(6))
def test_enumeration_counts_match_gaussian_binomial(q, n):
    F = Field(q)
    for d in range(n + 1):
        subs = list(enumerate_subspaces(F, n, d))
        assert len(subs) == gaussian_binomial_oracle(n, d, q) == gaussian_binomial(n, d, q)
        assert len(set(subs)) == len(subs)
        assert all(S.dim == d for S in subs)


def test_enumeration_examples(F2):
    assert len(list(enumerate_subspaces(F2, 2, 1))) == 3
    assert len(list(enumerate_subspaces(F2, 4, 2))) == 35
    assert list(enumerate_subspaces(F2, 3, 0)) == [Subspace.zero(F2, 3)]


def test_enumeration_is_deterministic(F2):
    a = [S.rows for S in enumerate_subspaces(Field(3), 3, 1)]
    b = [S.rows for S in enumerate_subspaces(Field(3), 3, 1)]
    assert a == b
    assert a[0] == ((1, 0, 0),)


def test_enumeration_guard(F2):
    with pytest.raises(GuardExceeded, match="exceed"):
        next(enumerate_subspaces(F2, 6, 2, limit=32))
    with pytest.raises(ValueError):
        next(enumerate_subspaces(F2, 3, 4))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.integers(0, 1), min_size=6, max_size=6), min_size=1, max_size=6))
def test_packed_rank_matches_generic(rows):
    F = Field(2)
    assert rank_gf2([pack_gf2(r) for r in rows]) == len(rref_rows(Field(2), rows, 6)[1]) == rank_oracle(F, rows)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_batch_rank_matches_oracle(q):
    F = Field(q)
    rng = np.random.default_rng(7)
    mats = F.random(rng, (40, 2, 3))
    got = batch_rank(F, mats).tolist()
    assert got == [rank_oracle(F, M.tolist()) for M in mats]
    assert got == [matrix_rank(F, M) for M in mats]


@pytest.mark.parametrize("q", [2, 3, 4])
def test_matmul_inverse_and_solve(q):
    F = Field(q)
    rng = np.random.default_rng(11)
    A, B = F.random(rng, (3, 4)), F.random(rng, (4, 2))
    assert F.matmul(A, B).tolist() == matmul_oracle(F, A.tolist(), B.tolist())
    found = 0
    while found < 5:
        M = F.random(rng, (3, 3))
        if matrix_rank(F, M) < 3:
            continue
        found += 1
        assert F.matmul(M, inverse_matrix(F, M)).tolist() == np.eye(3, dtype=int).tolist()
    S = Subspace(F, 4, A)
    v = F.matmul(np.array([[1, 0, 1]]), A)[0]
    c = solve_coords(F, [list(r) for r in A], v.tolist())
    assert c is not None
    assert S.coords(v) is not None
