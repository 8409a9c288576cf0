import numpy as np
import pytest

from helpers import all_codes, all_pairs, random_code, random_pair
from oracles import codewords, min_rank_oracle, rdrp_oracle, rgmw_oracle
from rankweights.errors import ConsistencyError, TheoremViolation
from rankweights.field import ExtField, Field
from rankweights.rank import MatrixCode, matrix_unit, rank_weight
from rankweights.schemes import gabidulin_code
from rankweights.weights import (
    gmw,
    gmw_table,
    min_rank_distance,
    rdrp,
    rgmw,
    rgmw_definitional,
    rgmw_wei,
    singleton_bounds,
    verify_profile,
    wei_duality_check,
    weight_profile,
)


def zero(C):
    return MatrixCode.zero(C.field, C.m, C.n)


def words(C):
    return codewords(C.field, C.m, C.n, list(C.flat))


# -- d_R -------------------------------------------------------------------------


def test_min_rank_distance_examples(F2):
    full = MatrixCode.full(F2, 2, 2)
    assert min_rank_distance(full, zero(full)) == 1
    I = MatrixCode(F2, 2, 2, [np.eye(2, dtype=int)])
    assert min_rank_distance(I, zero(I)) == 2
    G = gabidulin_code(ExtField(F2, 3), 3, 1)
    assert G.dim == 3 and len(words(G)) == 8
    assert min_rank_distance(G, zero(G)) == 3 == min_rank_oracle(F2, words(G), words(zero(G)))


def test_min_rank_distance_errors(F2, viii_c):
    with pytest.raises(ValueError):
        min_rank_distance(viii_c, viii_c)
    with pytest.raises(ValueError):
        min_rank_distance(zero(viii_c), viii_c)


def test_min_rank_distance_against_oracle(F2):
    rng = np.random.default_rng(31)
    for _ in range(40):
        C1, C2 = random_pair(F2, rng, 2, 3, max_k1=4)
        assert min_rank_distance(C1, C2) == min_rank_oracle(F2, words(C1), words(C2))
        assert min_rank_distance(C1, C2) == rgmw(C1, C2, 1)[0]


# -- rdrp / rgmw examples ------------------------------------------------------


def test_rdrp_examples(F2, viii_c):
    C2 = zero(viii_c)
    assert rdrp(viii_c, C2, 0)[0] == 0
    assert rdrp(viii_c, C2, 2)[0] == 2
    # K_{M,1} is 1, not 2: each line L gives dim(C & V_L) <= 1 (see the ledger)
    assert rdrp(viii_c, C2, 1)[0] == 1
    assert rdrp_oracle(F2, 2, 2, words(viii_c), words(C2), 1) == 1


def test_rgmw_examples(F2, viii_c):
    assert gmw(viii_c, 2)[0] == 2
    assert gmw(viii_c, 1)[0] == 1
    full = MatrixCode.full(F2, 2, 2)
    assert [gmw(full, r)[0] for r in range(1, 5)] == [1, 1, 2, 2]
    assert [singleton_bounds(2, 2, 4, r)[0] for r in range(1, 5)] == [1, 1, 2, 2]


def test_rgmw_range_errors(F2, viii_c):
    with pytest.raises(ValueError):
        rgmw(viii_c, zero(viii_c), 3)
    with pytest.raises(ValueError):
        rdrp(viii_c, zero(viii_c), 3)


def test_singleton_examples():
    assert singleton_bounds(2, 2, 2, 2) == (1, 2)
    assert singleton_bounds(3, 3, 9, 1)[0] == 1
    assert singleton_bounds(2, 3, 4, 1) == (1, 2)
    with pytest.raises(ValueError):
        singleton_bounds(2, 2, 5, 1)


def test_rgmw_disagreement_is_fatal(F2, viii_c, monkeypatch):
    import rankweights.weights as w

    monkeypatch.setattr(w, "rgmw_wei", lambda *a, **k: (99, None))
    with pytest.raises(ConsistencyError):
        w.rgmw(viii_c, zero(viii_c), 1)


# -- definitional vs subcode search -----------------------------------------------


def test_algorithms_agree_exhaustively_in_2x2(F2):
    count = 0
    for C1, C2 in all_pairs(F2, 2, 2):
        p = weight_profile(C1, C2, wei="on")
        assert p.wei == p.d
        count += 1
    assert count == 446


@pytest.mark.parametrize("q,m,n,trials", [(2, 2, 3, 200), (3, 2, 2, 30)])
def test_algorithms_agree_random(q, m, n, trials):
    F = Field(q)
    rng = np.random.default_rng(1000 + q)
    for _ in range(trials):
        C1, C2 = random_pair(F, rng, m, n, max_k1=4)
        ell = C1.dim - C2.dim
        defs = [rgmw_definitional(C1, C2, r)[0] for r in range(1, ell + 1)]
        wei = [rgmw_wei(C1, C2, r)[0] for r in range(1, ell + 1)]
        assert defs == wei


def test_wei_witness_is_a_valid_subcode(F2):
    rng = np.random.default_rng(8)
    for _ in range(30):
        C1, C2 = random_pair(F2, rng, 2, 3, max_k1=4)
        for r in range(1, C1.dim - C2.dim + 1):
            v, D = rgmw_wei(C1, C2, r)
            assert D.dim == r and D.issubset(C1) and D.intersect(C2).dim == 0
            assert rank_weight(D) == v


# -- oracle comparisons --------------------------------------------------------------


def test_profile_against_oracle_2x2(F2):
    for C1, C2 in list(all_pairs(F2, 2, 2))[::3]:
        p = weight_profile(C1, C2, wei="off")
        w1, w2 = words(C1), words(C2)
        assert p.d == [rgmw_oracle(F2, 2, 2, w1, w2, r) for r in range(1, p.ell + 1)]
        assert p.K == [rdrp_oracle(F2, 2, 2, w1, w2, mu) for mu in range(3)]


@pytest.mark.parametrize("q,m,n,trials", [(2, 2, 3, 40), (2, 3, 2, 20), (3, 2, 2, 15)])
def test_profile_against_oracle_random(q, m, n, trials):
    F = Field(q)
    rng = np.random.default_rng(77 + m + q)
    for _ in range(trials):
        C1, C2 = random_pair(F, rng, m, n, max_k1=4)
        p = weight_profile(C1, C2)
        w1, w2 = words(C1), words(C2)
        assert p.d == [rgmw_oracle(F, m, n, w1, w2, r) for r in range(1, p.ell + 1)]
        assert p.K == [rdrp_oracle(F, m, n, w1, w2, mu) for mu in range(n + 1)]


# -- profile invariants ------------------------------------------------------------


def test_profile_checks_all_pass(F2):
    rng = np.random.default_rng(12)
    for _ in range(50):
        C1, C2 = random_pair(F2, rng, 2, 3)
        p = weight_profile(C1, C2)
        for name, ok in p.checks.items():
            if name == "wei_agreement":
                assert not ok["disagree"]
            else:
                assert ok is True, name
        assert p.K[0] == 0 and p.K[-1] == p.ell
        for r, (lo, up) in enumerate(p.bounds(), start=1):
            assert lo <= p.dM(r) <= up


def test_verify_profile_detects_corruption(F2, viii_c):
    p = weight_profile(viii_c, zero(viii_c))
    p.K = [0, 2, 2]
    with pytest.raises(TheoremViolation):
        verify_profile(p)


def test_mrd_meets_upper_singleton(F2):
    G = gabidulin_code(ExtField(F2, 3), 3, 1)
    p = weight_profile(G, zero(G))
    assert p.d == [singleton_bounds(3, 3, 3, r)[1] for r in range(1, 4)] == [3, 3, 3]


# -- duality -----------------------------------------------------------------------


def test_duality_zero_code(F2):
    C = MatrixCode.zero(F2, 2, 3)
    for p in range(2):
        v = wei_duality_check(C, p)
        assert v.bar_set == frozenset() and v.dual_set == frozenset({1, 2, 3}) and v.holds


def test_duality_viii_c(F2, viii_c):
    for p in (0, 1):
        assert wei_duality_check(viii_c, p).holds


def test_duality_with_oracle_tables(F2):
    for seed in range(100):
        C = random_code(F2, np.random.default_rng([seed]), 2, 3, 3)
        table = [rgmw_oracle(F2, 2, 3, words(C), [((0,) * 3,) * 2], r) for r in range(1, 4)]
        D = C.dual()
        dual_table = [rgmw_oracle(F2, 2, 3, words(D), [((0,) * 3,) * 2], r) for r in range(1, 4)]
        assert table == gmw_table(C) and dual_table == gmw_table(D)
        for p in range(4):
            v = wei_duality_check(C, p, table, dual_table)
            assert v.holds, v.as_dict()


def test_duality_exhaustive_2x2(F2):
    for C in all_codes(F2, 2, 2, min_dim=1, max_dim=3):
        for p in range(2):
            assert wei_duality_check(C, p).holds


def test_duality_report_shape(F2, viii_c):
    d = wei_duality_check(viii_c, 0).as_dict()
    assert d["holds"] and d["overlap"] == [] and d["missing"] == []
    assert set(d["W_p(C_dual)"]) | set(d["Wbar_p+k(C)"]) == {1, 2}


def test_matrix_unit_helper():
    assert matrix_unit(2, 2, 0, 1).tolist() == [[0, 1], [0, 0]]
