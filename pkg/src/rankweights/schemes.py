"""Nested code pairs, coset coding schemes and their leakage.

Messages x in F_q^ell index the cosets C_x = psi(x) + C2 of C2 in C1, with
psi(x) = sum x_i W_i for an ordered basis W_1..W_ell of a complement of C2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bridges import matrix_rep
from .errors import TheoremViolation
from .field import ExtField, Field
from .guards import check_guard
from .linalg import Subspace, batch_rank, coefficient_block, enumerate_all_subspaces, solve_coords
from .rank import MatrixCode, support_space_intersection_dim
from .weights import ceil_div, check_pair, complement_basis, min_rank_distance, rdrp, rgmw

# -- pairs and schemes ----------------------------------------------------------


@dataclass(frozen=True)
class NestedPair:
    C1: MatrixCode
    C2: MatrixCode

    def __post_init__(self):
        check_pair(self.C1, self.C2)

    @property
    def ell(self):
        return self.C1.dim - self.C2.dim

    @property
    def field(self):
        return self.C1.field

    @property
    def shape(self):
        return self.C1.m, self.C1.n

    def dual(self):
        """The pair C1^perp < C2^perp that governs leakage."""
        return NestedPair(self.C2.dual(), self.C1.dual())


class CosetScheme:
    """Coset coding over a nested pair, with a seeded encoder.

    ``W`` is the ordered complement basis (flattened rows). The encoder's
    generator is the only mutable state.
    """

    def __init__(self, pair, W, seed=0):
        self.pair = pair
        self.seed = seed
        self.W = [list(map(int, w)) for w in W]
        field = pair.field
        self._c2 = [list(r) for r in pair.C2.space.rows]
        self._frame = self.W + self._c2
        if len(self.W) != pair.ell or Subspace(field, pair.C1.m * pair.C1.n, self._frame) != pair.C1.space:
            raise ValueError("W is not a complement of C2 in C1")
        self.rng = np.random.default_rng(seed)

    @property
    def field(self):
        return self.pair.field

    @property
    def ell(self):
        return self.pair.ell

    @property
    def shape(self):
        return self.pair.shape

    def W_code(self):
        m, n = self.shape
        return MatrixCode(self.field, m, n, self.W)

    def _matrix(self, coeffs):
        m, n = self.shape
        c = np.asarray(coeffs, dtype=np.int64)
        return self.field.matmul(c, np.array(self._frame, dtype=np.int64)).reshape(m, n)

    def psi(self, x):
        return self._matrix(list(x) + [0] * len(self._c2))

    def _check_message(self, x):
        x = [int(v) for v in x]
        if len(x) != self.ell or any(not 0 <= v < self.field.order for v in x):
            raise ValueError(f"message must be {self.ell} symbols of {self.field.spec}")
        return x

    def encode(self, x, rng=None):
        """A uniformly random element of the coset C_x."""
        return self.encode_with_randomness(x, rng)[0]

    def encode_with_randomness(self, x, rng=None):
        """(C, r) with C = psi(x) + sum r_j C2_j and r uniform."""
        x = self._check_message(x)
        rng = self.rng if rng is None else rng
        r = self.field.random(rng, len(self._c2)).tolist() if self._c2 else []
        return self._matrix(x + r), r

    def coset(self, x):
        """Every element of C_x (guarded)."""
        x = self._check_message(x)
        q, k2 = self.field.order, len(self._c2)
        check_guard(f"the {q}^{k2} elements of a coset", q**k2)
        for r in coefficient_block(q, k2, 0, q**k2).tolist():
            yield self._matrix(x + r)

    def decode_message(self, C):
        """The message x with C in C_x; C must lie in C1."""
        C = np.asarray(C, dtype=np.int64)
        if C.shape != self.shape:
            raise ValueError(f"expected a {self.shape[0]}x{self.shape[1]} matrix")
        c = solve_coords(self.field, self._frame, C.reshape(-1).tolist())
        if c is None:
            raise ValueError("matrix is not a codeword of C1")
        return c[: self.ell]

    def to_dict(self):
        m, n = self.shape
        return {"q": self.field.spec, "m": m, "n": n, "seed": self.seed}

    def __repr__(self):
        m, n = self.shape
        return f"CosetScheme({self.field.spec}, {m}x{n}, ell={self.ell}, seed={self.seed})"


def build_scheme(C1, C2, seed=0, W=None):
    """Coset scheme for C2 < C1; W defaults to the first-fit complement."""
    pair = NestedPair(C1, C2)
    if W is None:
        W = complement_basis(C1, C2)
    else:
        W = [np.asarray(w, dtype=np.int64).reshape(-1).tolist() for w in W]
    return CosetScheme(pair, W, seed)


# -- leakage --------------------------------------------------------------------


def _wiretap(field, n, B):
    B = np.asarray(B, dtype=np.int64)
    if B.ndim != 2 or B.shape[1] != n:
        if B.size == 0:
            return np.zeros((0, n), dtype=np.int64)
        raise ValueError(f"wiretap matrix must have {n} columns")
    return B


def leakage_exact(scheme, B):
    """I(x; C B^T) in log_q units: dim(C2^perp & V_L) - dim(C1^perp & V_L), L = Row(B)."""
    m, n = scheme.shape
    B = _wiretap(scheme.field, n, B)
    L = Subspace(scheme.field, n, B)
    C1, C2 = scheme.pair.C1, scheme.pair.C2
    return support_space_intersection_dim(C2.dual(), L) - support_space_intersection_dim(C1.dual(), L)


def _log_q(q, x):
    """log_q of a positive Fraction that is an integer power of q."""
    num, den = x.numerator, x.denominator
    k = 0
    while num % q == 0 and num > 1:
        num //= q
        k += 1
    while den % q == 0 and den > 1:
        den //= q
        k -= 1
    if num != 1 or den != 1:
        raise ValueError(f"probability {x} is not a power of {q}")
    return k


def leakage_oracle(scheme, B):
    """I(x; C B^T) = H(C B^T) - H(C B^T | x) from the exact joint distribution.

    Every (message, randomness) pair is enumerated; each has probability
    q^{-dim C1}. Entropies are exact in log_q units.
    """
    field = scheme.field
    q = field.order
    m, n = scheme.shape
    B = _wiretap(field, n, B)
    k1, ell = len(scheme._frame), scheme.ell
    check_guard(f"the {q}^{k1} (message, randomness) pairs", q**k1)
    total = q**k1
    coeffs = coefficient_block(q, k1, 0, total)
    frame = np.array(scheme._frame, dtype=np.int64).reshape(k1, m * n)
    words = field.matmul(coeffs, frame).reshape(total, m, n)
    if B.shape[0]:
        obs = field.matmul(words, B.T).reshape(total, -1)
    else:
        obs = np.zeros((total, 0), dtype=np.int64)
    weights = q ** np.arange(obs.shape[1], dtype=object) if obs.shape[1] else np.zeros(0, dtype=object)
    obs_keys = [int(v) for v in (obs.astype(object) @ weights)] if obs.shape[1] else [0] * total
    msg_keys = [tuple(row) for row in coeffs[:, :ell].tolist()]
    p_xy = Counter(zip(msg_keys, obs_keys))
    p_y = Counter(obs_keys)
    p_x = Counter(msg_keys)
    h_y = sum(Fraction(c, total) * -_log_q(q, Fraction(c, total)) for c in p_y.values())
    h_y_x = sum(
        Fraction(c, total) * -_log_q(q, Fraction(c, p_x[x])) for (x, _), c in p_xy.items()
    )
    return h_y - h_y_x


def _pad_rows(L, mu):
    n = L.n
    B = np.zeros((mu, n), dtype=np.int64)
    if L.dim:
        B[: L.dim] = L.basis
    return B


def worst_case_leakage(scheme, mu):
    """(K_{M,mu}(C2^perp, C1^perp), witness mu x n wiretap matrix)."""
    D = scheme.pair.dual()
    value, L = rdrp(D.C1, D.C2, mu)
    return value, _pad_rows(L, mu)


def links_needed(scheme, r):
    """(d_{M,r}(C2^perp, C1^perp), witness wiretap matrix with that many rows)."""
    D = scheme.pair.dual()
    value, L = rgmw(D.C1, D.C2, r)
    return value, _pad_rows(L, value)


def optimal_bound(m, n, t):
    """max{m,n} (min{m,n} - t)."""
    return max(m, n) * (min(m, n) - t)


def optimal_security(m, n, ell):
    """min{m,n} - ceil(ell / max{m,n})."""
    return min(m, n) - ceil_div(ell, max(m, n))


def measured_security(scheme):
    """Largest mu with zero leakage for every wiretap row space of dimension <= mu.

    Sweeps every subspace L of F^n through ``leakage_exact``; independent of
    the weight-engine route used by ``scheme_parameters``.
    """
    n = scheme.shape[1]
    worst = [0] * (n + 1)
    for L in enumerate_all_subspaces(scheme.field, n):
        worst[L.dim] = max(worst[L.dim], leakage_exact(scheme, L.basis))
    for mu in range(1, n + 1):
        worst[mu] = max(worst[mu], worst[mu - 1])
    return max(mu for mu in range(n + 1) if worst[mu] == 0)


@dataclass(frozen=True)
class SchemeParameters:
    ell: int
    t: int
    bound: int
    meets_bound: bool


def scheme_parameters(scheme):
    m, n = scheme.shape
    d, _ = links_needed(scheme, 1)
    t = d - 1
    bound = optimal_bound(m, n, t)
    if scheme.ell > bound:
        raise TheoremViolation(
            f"ell = {scheme.ell} exceeds max(m,n)(min(m,n) - t) = {bound}", {"ell": scheme.ell, "t": t}
        )
    return SchemeParameters(scheme.ell, t, bound, scheme.ell == bound)


# -- Gabidulin codes and optimal constructions ---------------------------------


def evaluation_points(ext, N):
    """The first N basis elements alpha_1..alpha_N."""
    if N > ext.m:
        raise ValueError(f"at most {ext.m} linearly independent points exist in {ext.spec}")
    return list(ext.basis[:N])


def gabidulin_generators(ext, N, degrees, points=None):
    """F_q-generators M_alpha(ev(beta x^{q^i})), i in degrees, beta in ext.basis."""
    points = evaluation_points(ext, N) if points is None else list(points)
    gens = []
    for i in degrees:
        powered = [ext.frobenius(a, i) for a in points]
        for beta in ext.basis:
            gens.append(matrix_rep(ext, [ext.mul(beta, a) for a in powered]))
    return gens


def gabidulin_code(ext, n, k, points=None):
    """{M_alpha(ev(F)) : deg_q F < k}, a code of dimension m k in F_q^{m x n}."""
    if not 0 <= k <= n <= ext.m:
        raise ValueError(f"need 0 <= k <= n <= m, got k={k}, n={n}, m={ext.m}")
    return MatrixCode(ext.base, ext.m, n, gabidulin_generators(ext, n, range(k), points))


def gabidulin_pair(ext, n, k1, k2, points=None):
    """Gabidulin pair Gab(k2) < Gab(k1) in F_q^{m x n}."""
    if not 0 <= k2 < k1 <= n <= ext.m:
        raise ValueError(f"need 0 <= k2 < k1 <= n <= m, got k1={k1}, k2={k2}, n={n}, m={ext.m}")
    C1 = gabidulin_code(ext, n, k1, points)
    C2 = gabidulin_code(ext, n, k2, points)
    if C1.dim != ext.m * k1 or C2.dim != ext.m * k2:  # pragma: no cover
        raise TheoremViolation("Gabidulin code has the wrong dimension", {"k1": k1, "k2": k2})
    return NestedPair(C1, C2)


def window_pair(ext, n, k1, k2):
    """Coefficient-window pair with every H_i = F_{q^m}.

    C2 keeps coefficients k1-k2..k1-1, C1 keeps 0..k1-1; requires n | m and
    a basis whose first n elements span F_{q^n}.
    """
    if not 1 <= k2 < k1 <= n <= ext.m:
        raise ValueError(f"need 1 <= k2 < k1 <= n <= m, got k1={k1}, k2={k2}, n={n}")
    if ext.m % n:
        raise ValueError(f"window pairs need n | m (n={n}, m={ext.m})")
    if not ext.is_nested(n):
        ext = ext.with_nested_basis(n)
    C1 = MatrixCode(ext.base, ext.m, n, gabidulin_generators(ext, n, range(k1)))
    C2 = MatrixCode(ext.base, ext.m, n, gabidulin_generators(ext, n, range(k1 - k2, k1)))
    return NestedPair(C1, C2)


def mrd_code(field, m, n, dim):
    """An F_q-linear MRD code of any dimension in F_q^{m x n}.

    Built as the first ``dim`` generators of Gab(ceil(dim / M)) over F_{q^M},
    M = max(m, n), evaluated at N = min(m, n) points; transposed when n > m.
    """
    if not 0 <= dim <= m * n:
        raise ValueError(f"dimension must lie in 0..{m * n}")
    M, N = max(m, n), min(m, n)
    k = ceil_div(dim, M)
    ext = ExtField(field, M)
    gens = gabidulin_generators(ext, N, range(k))[:dim]
    code = MatrixCode(field, M, N, gens)
    return code.transpose() if n > m else code


def optimal_scheme(m, n, q, ell=None, t=None, seed=0):
    """Pair C < F_q^{m x n} attaining the optimal (ell, t) trade-off; C = MRD(ell)^perp.

    Exactly one of ``ell`` (information parameter) or ``t`` (security
    parameter) must be given.
    """
    if (ell is None) == (t is None):
        raise ValueError("give exactly one of ell or t")
    N = min(m, n)
    if t is not None:
        if not 0 <= t < N:
            raise ValueError(
                f"security parameter t={t} is infeasible: ell = max(m,n)(min(m,n) - t) must be >= 1, "
                f"so t <= {N - 1}"
            )
        ell = optimal_bound(m, n, t)
    if not 1 <= ell <= m * n:
        raise ValueError(f"information parameter ell={ell} is infeasible: need 1 <= ell <= mn = {m * n}")
    field = Field(q)
    C = mrd_code(field, m, n, ell).dual()
    return build_scheme(MatrixCode.full(field, m, n), C, seed)


# -- brute-force decoding -------------------------------------------------------


def unique_radius(scheme):
    """floor((d_R(C1, C2) - 1) / 2): list decoding below it returns one message."""
    return (min_rank_distance(scheme.pair.C1, scheme.pair.C2) - 1) // 2


def rank_error_decode(scheme, Y, e_max, radius=None):
    """All messages x whose coset has some C with Rk(Y - C) <= e_max (brute force).

    When e_max is within the unique decoding radius, more than one message is
    a theorem violation.
    """
    field = scheme.field
    m, n = scheme.shape
    Y = np.asarray(Y, dtype=np.int64)
    if Y.shape != (m, n):
        raise ValueError(f"received matrix must be {m}x{n}")
    q, k1, ell = field.order, len(scheme._frame), scheme.ell
    check_guard(f"the {q}^{k1} codewords of C1", q**k1)
    frame = np.array(scheme._frame, dtype=np.int64).reshape(k1, m * n)
    found = set()
    for lo in range(0, q**k1, 1 << 14):
        hi = min(q**k1, lo + (1 << 14))
        coeffs = coefficient_block(q, k1, lo, hi)
        words = field.matmul(coeffs, frame).reshape(-1, m, n)
        diff = field.vsub(np.broadcast_to(Y, words.shape), words)
        close = batch_rank(field, diff) <= e_max
        for row in coeffs[close][:, :ell].tolist():
            found.add(tuple(row))
    messages = sorted(found)
    if len(messages) > 1:
        radius = unique_radius(scheme) if radius is None else radius
        if e_max <= radius:
            raise TheoremViolation(
                f"{len(messages)} messages within the unique decoding radius {radius}", {"e_max": e_max}
            )
    return [list(x) for x in messages]
