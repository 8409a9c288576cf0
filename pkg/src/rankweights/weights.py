"""Relative generalized matrix weights and relative dimension/rank support profiles.

Two independent routes compute d_{M,r}(C1, C2):

* the definitional sweep over subspaces L of F^n in ascending dimension,
  stopping at the first L with dim(C1 & V_L) - dim(C2 & V_L) >= r;
* the subcode search: the least rank weight of an r-dimensional D in C1
  meeting C2 trivially, found by a pruned walk over RREF patterns of D.

``rgmw`` runs both and raises ``ConsistencyError`` on any disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import itertools
from functools import lru_cache

import numpy as np

from .errors import ConsistencyError, GuardExceeded, TheoremViolation
from .guards import check_guard, wei_budget
from .linalg import (
    Subspace,
    batch_rank,
    coefficient_block,
    combine,
    enumerate_all_subspaces,
    pack_gf2,
)
from .rank import MatrixCode, support_space_intersection_dim


def ceil_div(a, b):
    return -(-a // b)


def check_pair(C1, C2):
    """Validate C2 strictly inside C1; return ell = dim C1 - dim C2."""
    C1._same(C2)
    if not C2.issubset(C1):
        raise ValueError("C2 is not contained in C1")
    if C2.dim == C1.dim:
        raise ValueError("C2 must be a proper subcode of C1")
    return C1.dim - C2.dim


def complement_basis(C1, C2):
    """Greedy first-fit extension of C2's basis through C1's canonical basis.

    Returns the flattened rows of a complement W with C1 = C2 (+) W.
    """
    current = C2.space
    chosen = []
    for row in C1.space.rows:
        if not current.contains(row):
            chosen.append(list(row))
            current = current + Subspace(C1.field, C1.m * C1.n, [row])
    return chosen


def gap(C1, C2, L):
    """dim(C1 & V_L) - dim(C2 & V_L)."""
    return support_space_intersection_dim(C1, L) - support_space_intersection_dim(C2, L)


def _sweep(C1, C2, max_dim=None):
    for L in enumerate_all_subspaces(C1.field, C1.n, max_dim):
        yield L, gap(C1, C2, L)


def min_rank_distance(C1, C2):
    """d_R(C1, C2) = min{Rk(C) : C in C1, C not in C2}, by exhaustive enumeration."""
    check_pair(C1, C2)
    field = C1.field
    q = field.order
    check_guard(f"the {q}^{C1.dim} codewords of C1", q**C1.dim)
    W = complement_basis(C1, C2)
    ell = len(W)
    # coordinates over [W; C2]; codewords outside C2 have a nonzero W part
    gens = np.array(W + [list(r) for r in C2.space.rows], dtype=np.int64)
    frame = _Frame(field, C1.m, C1.n, gens)
    best = None
    for coeffs, words in frame.blocks():
        outside = coeffs[:, :ell].any(axis=1)
        if not outside.any():
            continue
        ranks = batch_rank(field, words[outside])
        low = int(ranks.min())
        best = low if best is None else min(best, low)
        if best == 1:
            break
    return best


class _Frame:
    """Codewords sum_i c_i G_i for a fixed (not necessarily RREF) generator list."""

    def __init__(self, field, m, n, gens):
        self.field = field
        self.m = m
        self.n = n
        self.gens = np.asarray(gens, dtype=np.int64).reshape(-1, m * n)

    def blocks(self, chunk=1 << 14):
        q, k = self.field.order, self.gens.shape[0]
        total = q**k
        for lo in range(0, total, chunk):
            hi = min(total, lo + chunk)
            coeffs = coefficient_block(q, k, lo, hi)
            words = self.field.matmul(coeffs, self.gens) if k else np.zeros((hi - lo, self.m * self.n), dtype=np.int64)
            yield coeffs, words.reshape(-1, self.m, self.n)


def rdrp(C1, C2, mu):
    """K_{M,mu}(C1, C2) with the first maximising L in enumeration order."""
    check_pair(C1, C2)
    if not 0 <= mu <= C1.n:
        raise ValueError(f"mu must lie in 0..{C1.n}")
    best, witness = -1, None
    for L, g in _sweep(C1, C2, mu):
        if g > best:
            best, witness = g, L
    return best, witness


def rgmw_definitional(C1, C2, r):
    """d_{M,r} by the ascending-dimension sweep; returns (value, L)."""
    ell = check_pair(C1, C2)
    if not 1 <= r <= ell:
        raise ValueError(f"r must lie in 1..{ell}")
    for L, g in _sweep(C1, C2):
        if g >= r:
            return L.dim, L
    raise TheoremViolation("no subspace reaches the full quotient", {"r": r})  # pragma: no cover


class _Support:
    """Incremental row echelon basis of a subspace of F^n, used for RSupp of a growing D."""

    __slots__ = ("field", "rows", "packed")

    def __init__(self, field, packed):
        self.field = field
        self.packed = packed
        self.rows = {} if packed else []

    def copy(self):
        s = _Support.__new__(_Support)
        s.field = self.field
        s.packed = self.packed
        s.rows = dict(self.rows) if self.packed else list(self.rows)
        return s

    def __len__(self):
        return len(self.rows)

    def insert(self, v):
        if self.packed:
            rows = self.rows
            while v:
                h = v.bit_length() - 1
                b = rows.get(h)
                if b is None:
                    rows[h] = v
                    return
                v ^= b
            return
        f = self.field
        v = list(v)
        for pc, row in self.rows:
            c = v[pc]
            if c:
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        for pc, x in enumerate(v):
            if x:
                inv = f.inv(x)
                v = [f.mul(inv, a) for a in v]
                self.rows.append((pc, v))
                self.rows.sort(key=lambda t: t[0])
                return


def rgmw_wei(C1, C2, r, budget=None, lower=None):
    """min wt_R(D) over r-dimensional D in C1 with D & C2 = {0}; returns (value, D).

    D is written in coordinates over the basis [W; C2] of C1. D meets C2
    trivially exactly when every RREF pivot of D falls in the first ell
    (W) coordinates, so each admissible D is visited once. Rows are fixed
    from the last pivot backwards, making every prefix a genuine subcode;
    its rank weight is a lower bound for all completions, which drives the
    pruning. ``lower`` is a proven lower bound that allows an early stop.
    """
    ell = check_pair(C1, C2)
    if not 1 <= r <= ell:
        raise ValueError(f"r must lie in 1..{ell}")
    field, m, n = C1.field, C1.m, C1.n
    q = field.order
    gens = complement_basis(C1, C2) + [list(x) for x in C2.space.rows]
    k1 = len(gens)
    packed = field.is_prime and field.p == 2
    mats = [np.array(g, dtype=np.int64).reshape(m, n) for g in gens]
    if packed:
        mat_rows = [[pack_gf2(row) for row in M.tolist()] for M in mats]
    else:
        mat_rows = [M.tolist() for M in mats]
    budget = wei_budget() if budget is None else budget
    floor = max(ceil_div(r, m), lower or 0)
    state = {"best": n + 1, "rows": None, "nodes": 0}

    def codeword_rows(coords):
        if packed:
            out = [0] * m
            for c, rows in zip(coords, mat_rows):
                if c:
                    out = [a ^ b for a, b in zip(out, rows)]
            return out
        out = [[0] * n for _ in range(m)]
        for c, rows in zip(coords, mat_rows):
            if c:
                out = [[field.add(a, field.mul(c, b)) for a, b in zip(orow, brow)] for orow, brow in zip(out, rows)]
        return out

    def walk(chosen, taken, upper, support):
        need = r - len(chosen)
        if need == 0:
            state["best"] = len(support)
            state["rows"] = list(chosen)
            return state["best"] <= floor
        for p in range(upper - 1, need - 2, -1):
            free = [j for j in range(p + 1, k1) if j not in taken]
            for values in itertools.product(range(q), repeat=len(free)):
                state["nodes"] += 1
                if state["nodes"] > budget:
                    raise GuardExceeded("subcode search for d_{M,%d}" % r, state["nodes"], budget)
                coords = [0] * k1
                coords[p] = 1
                for j, x in zip(free, values):
                    coords[j] = x
                nxt = support.copy()
                for row in codeword_rows(coords):
                    nxt.insert(row)
                    if len(nxt) >= state["best"]:
                        break
                if len(nxt) >= state["best"]:
                    continue
                if walk(chosen + [coords], taken | {p}, p, nxt):
                    return True
        return False

    walk([], frozenset(), ell, _Support(field, packed))
    if state["rows"] is None:  # pragma: no cover
        raise TheoremViolation("subcode search found no admissible subcode", {"r": r})
    D = MatrixCode(field, m, n, [combine(field, c, gens) for c in state["rows"]])
    return state["best"], D


def rgmw(C1, C2, r, budget=None):
    """d_{M,r}(C1, C2) by both algorithms; returns (value, witness L)."""
    value, L = rgmw_definitional(C1, C2, r)
    other, D = rgmw_wei(C1, C2, r, budget=budget)
    if other != value:
        raise ConsistencyError(
            f"d_M,{r}: definitional sweep gives {value}, subcode search gives {other}",
            {"r": r, "definitional": value, "wei": other},
        )
    return value, L


def gmw(C, r, budget=None):
    """d_{M,r}(C) = d_{M,r}(C, {0})."""
    return rgmw(C, MatrixCode.zero(C.field, C.m, C.n), r, budget=budget)


def singleton_bounds(m, n, ell, r):
    """(ceil(r/m), n - ceil((ell - r + 1)/m) + 1)."""
    if not (1 <= r <= ell <= m * n):
        raise ValueError(f"need 1 <= r <= ell <= mn, got r={r}, ell={ell}, m={m}, n={n}")
    return ceil_div(r, m), n - ceil_div(ell - r + 1, m) + 1


@dataclass
class WeightProfile:
    """All d_{M,r} (r = 1..ell) and K_{M,mu} (mu = 0..n) of a nested pair.

    ``d[r - 1]`` is d_{M,r}; ``K[mu]`` is K_{M,mu}. Every value carries the
    subspace L that achieved it. ``wei[r - 1]`` is the subcode-search value
    or None when its budget ran out.
    """

    C1: MatrixCode
    C2: MatrixCode
    ell: int
    d: list
    K: list
    d_witness: list
    K_witness: list
    wei: list
    checks: dict = dc_field(default_factory=dict)

    @property
    def m(self):
        return self.C1.m

    @property
    def n(self):
        return self.C1.n

    def dM(self, r):
        return self.d[r - 1]

    def KM(self, mu):
        return self.K[mu]

    def bounds(self):
        return [singleton_bounds(self.m, self.n, self.ell, r) for r in range(1, self.ell + 1)]


def weight_profile(C1, C2, wei="auto", budget=None):
    """Compute and verify the full profile of C2 < C1.

    ``wei`` selects the cross-check: "on" requires the subcode search for every
    r, "auto" records r values whose search exceeded the budget, "off" skips it.
    Raises TheoremViolation / ConsistencyError when any check fails.
    """
    ell = check_pair(C1, C2)
    m, n = C1.m, C1.n
    table = list(_sweep(C1, C2))
    K, K_wit = [], []
    for mu in range(n + 1):
        best, wit = -1, None
        for L, g in table:
            if L.dim > mu:
                break
            if g > best:
                best, wit = g, L
        K.append(best)
        K_wit.append(wit)
    d, d_wit = [], []
    for r in range(1, ell + 1):
        L = next(L for L, g in table if g >= r)
        d.append(L.dim)
        d_wit.append(L)
    wei_values = [None] * ell
    if wei != "off":
        for r in range(1, ell + 1):
            lower = 0
            if r > 1 and wei_values[r - 2] is not None:
                lower = wei_values[r - 2]
            if r > m and wei_values[r - m - 1] is not None:
                lower = max(lower, wei_values[r - m - 1] + 1)
            try:
                wei_values[r - 1] = rgmw_wei(C1, C2, r, budget=budget, lower=lower)[0]
            except GuardExceeded:
                if wei == "on":
                    raise
    profile = WeightProfile(C1, C2, ell, d, K, d_wit, K_wit, wei_values)
    profile.checks = verify_profile(profile, gaps=dict(table))
    return profile


def verify_profile(profile, gaps=None):
    """Check every structural theorem on a profile; raise on violation."""
    m, n, ell = profile.m, profile.n, profile.ell
    d, K = profile.d, profile.K
    C1, C2 = profile.C1, profile.C2

    def g(L):
        if gaps is not None and L in gaps:
            return gaps[L]
        return gap(C1, C2, L)

    failures = {}
    checks = {}
    checks["rdrp_endpoints"] = K[0] == 0 and K[n] == ell
    checks["rdrp_monotone"] = all(0 <= K[mu + 1] - K[mu] <= m for mu in range(n))
    checks["rgmw_monotone"] = all(0 <= d[r] - d[r - 1] <= min(m, n) for r in range(1, ell)) and all(
        d[r - 1] + 1 <= d[r + m - 1] for r in range(1, ell - m + 1)
    )
    lo_ok = up_ok = True
    for r in range(1, ell + 1):
        lo, up = singleton_bounds(m, n, ell, r)
        lo_ok &= d[r - 1] >= lo
        up_ok &= d[r - 1] <= up
    checks["singleton_lower"] = lo_ok
    checks["singleton_upper"] = up_ok
    checks["galois_connection"] = all(
        (d[r - 1] <= mu) == (K[mu] >= r) for r in range(1, ell + 1) for mu in range(n + 1)
    )
    checks["witnesses"] = all(
        profile.d_witness[r - 1].dim == d[r - 1] and g(profile.d_witness[r - 1]) >= r
        for r in range(1, ell + 1)
    ) and all(
        profile.K_witness[mu].dim <= mu and g(profile.K_witness[mu]) == K[mu] for mu in range(n + 1)
    )
    agree = [r for r in range(1, ell + 1) if profile.wei[r - 1] == d[r - 1]]
    skipped = [r for r in range(1, ell + 1) if profile.wei[r - 1] is None]
    mismatch = [r for r in range(1, ell + 1) if profile.wei[r - 1] not in (None, d[r - 1])]
    checks["wei_agreement"] = {"agree": agree, "skipped": skipped, "disagree": mismatch}
    for name, ok in checks.items():
        if name != "wei_agreement" and not ok:
            failures[name] = False
    if mismatch:
        raise ConsistencyError(
            f"definitional and subcode-search RGMW disagree at r = {mismatch}",
            {"d": d, "wei": profile.wei},
        )
    if failures:
        raise TheoremViolation(f"profile checks failed: {sorted(failures)}", {"d": d, "K": K})
    return checks


@lru_cache(maxsize=4096)
def _gmw_table_cached(C, wei):
    if C.dim == 0:
        return ()
    return tuple(weight_profile(C, MatrixCode.zero(C.field, C.m, C.n), wei=wei).d)


def gmw_table(C, wei="auto"):
    """[d_{M,1}(C), ..., d_{M,k}(C)]; empty for the zero code."""
    return list(_gmw_table_cached(C, wei))


@dataclass(frozen=True)
class DualityVerdict:
    p: int
    k: int
    dual_set: frozenset
    bar_set: frozenset
    holds: bool

    def as_dict(self):
        return {
            "p": self.p,
            "k": self.k,
            "W_p(C_dual)": sorted(self.dual_set),
            "Wbar_p+k(C)": sorted(self.bar_set),
            "overlap": sorted(self.dual_set & self.bar_set),
            "missing": sorted(set(range(1, self._n + 1)) - (self.dual_set | self.bar_set)),
            "holds": self.holds,
        }


def w_set(table, m, p):
    """W_p = {d_{M,p+rm} : 1 <= p + rm <= k} from a GMW table."""
    k = len(table)
    return frozenset(table[j - 1] for j in range(1, k + 1) if (j - p) % m == 0)


def w_bar_set(table, m, n, p):
    k = len(table)
    return frozenset(n + 1 - table[j - 1] for j in range(1, k + 1) if (j - p) % m == 0)


def wei_duality_check(C, p, table=None, dual_table=None):
    """Check {1..n} = W_p(C^perp) disjoint-union Wbar_{p+k}(C)."""
    m, n, k = C.m, C.n, C.dim
    table = gmw_table(C) if table is None else table
    dual_table = gmw_table(C.dual()) if dual_table is None else dual_table
    A = w_set(dual_table, m, p)
    B = w_bar_set(table, m, n, p + k)
    holds = not (A & B) and (A | B) == frozenset(range(1, n + 1))
    verdict = DualityVerdict(p, k, A, B, holds)
    object.__setattr__(verdict, "_n", n)
    return verdict
