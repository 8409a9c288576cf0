"""Linear network coding channel with errors, erasures and a wiretapper.

The sink receives Y = C A^T + E and the adversary sees C B^T. Erasures are
rank deficiency of the transfer matrix A: rho = n - Rk(A).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .errors import TheoremViolation
from .guards import check_guard
from .linalg import Subspace, matrix_rank
from .schemes import leakage_exact, scheme_parameters, worst_case_leakage

EXHAUSTIVE_LIMIT = 2**20


@dataclass(frozen=True)
class NetworkInstance:
    field: object
    m: int
    n: int
    N: int
    A: np.ndarray
    B: np.ndarray
    E: np.ndarray
    t: int
    rho: int
    seed: int | None = None

    def __post_init__(self):
        if self.A.shape != (self.N, self.n):
            raise ValueError(f"A must be {self.N}x{self.n}")
        if self.B.ndim != 2 or self.B.shape[1] != self.n:
            raise ValueError(f"B must have {self.n} columns")
        if self.E.shape != (self.m, self.N):
            raise ValueError(f"E must be {self.m}x{self.N}")
        if matrix_rank(self.field, self.E) != self.t:
            raise ValueError(f"declared t={self.t} but Rk(E)={matrix_rank(self.field, self.E)}")
        if self.n - matrix_rank(self.field, self.A) != self.rho:
            raise ValueError(f"declared rho={self.rho} but n - Rk(A)={self.n - matrix_rank(self.field, self.A)}")

    @property
    def mu(self):
        return self.B.shape[0]


def transmit(C, inst):
    """Y = C A^T + E."""
    C = np.asarray(C, dtype=np.int64)
    if C.shape != (inst.m, inst.n):
        raise ValueError(f"codeword must be {inst.m}x{inst.n}")
    f = inst.field
    return f.vadd(f.matmul(C, inst.A.T), inst.E)


def wiretap_observe(C, inst):
    """C B^T."""
    C = np.asarray(C, dtype=np.int64)
    if C.shape != (inst.m, inst.n):
        raise ValueError(f"codeword must be {inst.m}x{inst.n}")
    if inst.mu == 0:
        return np.zeros((inst.m, 0), dtype=np.int64)
    return inst.field.matmul(C, inst.B.T)


def _full_rank(field, rng, rows, cols):
    # rejection sampling of a uniform matrix of rank min(rows, cols)
    target = min(rows, cols)
    while True:
        M = field.random(rng, (rows, cols))
        if target == 0 or matrix_rank(field, M) == target:
            return M


def random_rank_matrix(field, rng, rows, cols, rank):
    """X Y with X (rows x rank) and Y (rank x cols) full rank; the product has rank exactly ``rank``."""
    if rank == 0:
        return np.zeros((rows, cols), dtype=np.int64)
    X = _full_rank(field, rng, rows, rank)
    Y = _full_rank(field, rng, rank, cols)
    return field.matmul(X, Y)


def random_instance(field, m, n, N, mu, t, rho, seed):
    if not 0 <= t <= min(m, N):
        raise ValueError(f"error rank t={t} must lie in 0..min(m, N) = {min(m, N)}")
    if not 0 <= rho <= n or n - rho > N:
        raise ValueError(f"erasures rho={rho} need 0 <= rho <= n and n - rho <= N")
    if mu < 0:
        raise ValueError("mu must be non-negative")
    rng = np.random.default_rng(seed)
    A = random_rank_matrix(field, rng, N, n, n - rho)
    E = random_rank_matrix(field, rng, m, N, t)
    B = field.random(rng, (mu, n)) if mu else np.zeros((0, n), dtype=np.int64)
    return NetworkInstance(field, m, n, N, A, B, E, t, rho, seed)


def _wiretaps(field, mu, n):
    q = field.order
    for flat in itertools.product(range(q), repeat=mu * n):
        yield np.array(flat, dtype=np.int64).reshape(mu, n)


def leakage_experiment(scheme, mu, trials=100, seed=0, exhaustive="auto"):
    """Confront sampled or exhaustive wiretap leakage with the worst-case theory."""
    field = scheme.field
    q = field.order
    n = scheme.shape[1]
    if not 0 <= mu <= n:
        raise ValueError(f"mu must lie in 0..{n}")
    if exhaustive not in ("auto", "on", "off"):
        raise ValueError("exhaustive must be auto, on or off")
    full = exhaustive == "on" or (exhaustive == "auto" and q ** (mu * n) <= EXHAUSTIVE_LIMIT)
    theory, witness = worst_case_leakage(scheme, mu)
    t = scheme_parameters(scheme).t
    cache = {}

    def leak(B):
        key = Subspace(field, n, B) if mu else Subspace.zero(field, n)
        if key not in cache:
            cache[key] = leakage_exact(scheme, B)
        return cache[key]

    if full:
        check_guard(f"the {q}^{mu * n} wiretap matrices", q ** (mu * n))
        histogram = {}
        for B in _wiretaps(field, mu, n):
            v = leak(B)
            histogram[v] = histogram.get(v, 0) + 1
        observed = max(histogram)
        per_trial = None
        count = sum(histogram.values())
    else:
        per_trial = []
        for i in range(trials):
            rng = np.random.default_rng([seed, i])
            B = field.random(rng, (mu, n)) if mu else np.zeros((0, n), dtype=np.int64)
            per_trial.append(leak(B))
        observed = max(per_trial) if per_trial else 0
        histogram = {}
        for v in per_trial:
            histogram[v] = histogram.get(v, 0) + 1
        count = trials
    checks = {
        "observed_le_theory": observed <= theory,
        "exhaustive_max_equals_theory": (observed == theory) if full else None,
        "zero_below_security": (observed == 0) if mu <= t else None,
    }
    verdict = "PASS" if all(v is not False for v in checks.values()) else "VIOLATED"
    report = {
        "mu": mu,
        "mode": "exhaustive" if full else "sampled",
        "count": count,
        "seed": seed,
        "per_trial": per_trial,
        "histogram": {str(k): histogram[k] for k in sorted(histogram)},
        "max": observed,
        "theory_max": theory,
        "theory_witness": witness.tolist(),
        "security_parameter": t,
        "checks": checks,
        "verdict": verdict,
    }
    if verdict != "PASS":
        raise TheoremViolation("simulated leakage contradicts the worst-case theory", report)
    return report


def transcript(scheme, inst, messages, seed=0):
    """JSON-lines records, one per (message, randomness, observation) triple."""
    rng = np.random.default_rng(seed)
    for i, x in enumerate(messages):
        C, r = scheme.encode_with_randomness(x, rng)
        record = {
            "index": i,
            "message": [int(v) for v in x],
            "randomness": [int(v) for v in r],
            "codeword": C.tolist(),
            "observation": wiretap_observe(C, inst).tolist(),
            "received": transmit(C, inst).tolist(),
        }
        yield json.dumps(record, sort_keys=True)
