"""JSON file formats for codes, pairs, schemes and reports.

Matrix code / pair file (generators as row-major flattened rows, or as
m x n nested lists)::

    {"q": 2, "m": 2, "n": 2, "C1": [[1, 0, 0, 0], ...], "C2": []}

A single-code file uses "code" (or "generators") in place of C1/C2. Scheme
files add "W" and "seed". Vector pairs for Hamming comparisons omit "m" and
list vectors; extension-field pairs carry a "field" spec such as
"gf(2^2)/basis=polynomial" and list vectors over that field.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .bridges import ExtVectorCode
from .field import ExtField, Field, parse_field
from .linalg import Subspace
from .rank import MatrixCode
from .schemes import build_scheme


class InputError(ValueError):
    """Malformed or inconsistent input file."""


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def file_hash(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def to_jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, Subspace):
        return [list(r) for r in obj.rows]
    if isinstance(obj, MatrixCode):
        return code_to_dict(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [to_jsonable(x) for x in obj]
    if hasattr(obj, "numerator") and hasattr(obj, "denominator") and not isinstance(obj, (int, bool)):
        return str(obj) if obj.denominator != 1 else int(obj)
    return obj


def dumps(obj):
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True) + "\n"


# -- fields ----------------------------------------------------------------------


def field_from(doc):
    if "field" in doc:
        return parse_field(str(doc["field"]))
    if "q" in doc:
        q = doc["q"]
        return parse_field(q) if isinstance(q, str) else Field(int(q))
    raise InputError("missing field: give 'q' or 'field'")


# -- matrix codes ----------------------------------------------------------------


def _shape(doc):
    try:
        return int(doc["m"]), int(doc["n"])
    except KeyError as exc:
        raise InputError(f"missing key {exc.args[0]!r}") from None


def code_from_generators(field, m, n, gens):
    mats = []
    for g in gens:
        a = np.asarray(g, dtype=np.int64)
        if a.shape not in ((m, n), (m * n,)):
            raise InputError(f"generator of shape {a.shape} does not fit {m}x{n}")
        if a.size and (a.min() < 0 or a.max() >= field.order):
            raise InputError(f"entries must be element codes 0..{field.order - 1}")
        mats.append(a)
    return MatrixCode(field, m, n, mats)


def code_to_dict(C):
    return {"q": C.field.order, "m": C.m, "n": C.n, "generators": C.flat.tolist()}


def load_code(path):
    doc = read_json(path)
    field = field_from(doc)
    if isinstance(field, ExtField):
        raise InputError("matrix codes are defined over a prime-power field gf(q)")
    m, n = _shape(doc)
    gens = doc.get("code", doc.get("generators", doc.get("C1")))
    if gens is None:
        raise InputError("code file needs 'code' or 'generators'")
    return code_from_generators(field, m, n, gens)


def load_pair(path):
    """(C1, C2) from a pair file; a single-code file gives C2 = {0}."""
    doc = read_json(path)
    field = field_from(doc)
    m, n = _shape(doc)
    if "C1" in doc:
        C1 = code_from_generators(field, m, n, doc["C1"])
        C2 = code_from_generators(field, m, n, doc.get("C2", []))
    else:
        C1 = load_code(path)
        C2 = MatrixCode.zero(field, m, n)
    if not C2.issubset(C1) or C2.dim == C1.dim:
        raise InputError("pair must satisfy C2 strictly inside C1")
    return C1, C2


def pair_to_dict(C1, C2):
    return {"q": C1.field.order, "m": C1.m, "n": C1.n, "C1": C1.flat.tolist(), "C2": C2.flat.tolist()}


# -- schemes ---------------------------------------------------------------------


def scheme_to_dict(S):
    m, n = S.shape
    return {
        "q": S.field.order,
        "m": m,
        "n": n,
        "C1": S.pair.C1.flat.tolist(),
        "C2": S.pair.C2.flat.tolist(),
        "W": [list(w) for w in S.W],
        "seed": S.seed,
    }


def load_scheme(path, seed=None):
    doc = read_json(path)
    field = field_from(doc)
    m, n = _shape(doc)
    for key in ("C1", "C2"):
        if key not in doc:
            raise InputError(f"scheme file needs {key!r}")
    C1 = code_from_generators(field, m, n, doc["C1"])
    C2 = code_from_generators(field, m, n, doc["C2"])
    if not C2.issubset(C1) or C2.dim == C1.dim:
        raise InputError("scheme must satisfy C2 strictly inside C1")
    W = doc.get("W")
    s = doc.get("seed", 0) if seed is None else seed
    try:
        return build_scheme(C1, C2, seed=int(s), W=W)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# -- vector codes ----------------------------------------------------------------


def _vectors(field, n, rows):
    out = []
    for v in rows:
        v = [int(x) for x in v]
        if len(v) != n or any(not 0 <= x < field.order for x in v):
            raise InputError(f"vector {v} is not in {field.spec}^{n}")
        out.append(v)
    return out


def load_vector_pair(path):
    """(C1, C2) as Subspaces of F_q^n, or ExtVectorCodes when 'field' is an extension."""
    doc = read_json(path)
    field = field_from(doc)
    try:
        n = int(doc["n"])
    except KeyError:
        raise InputError("vector pair needs 'n'") from None
    rows1 = _vectors(field, n, doc.get("C1", []))
    rows2 = _vectors(field, n, doc.get("C2", []))
    if isinstance(field, ExtField):
        C1, C2 = ExtVectorCode(field, n, rows1), ExtVectorCode(field, n, rows2)
    else:
        C1, C2 = Subspace(field, n, rows1), Subspace(field, n, rows2)
    if not C2.issubset(C1) or C2.dim == C1.dim:
        raise InputError("pair must satisfy C2 strictly inside C1")
    return C1, C2


def file_kind(path):
    """'matrix', 'hamming' or 'rank' depending on the pair file's content."""
    doc = read_json(path)
    if "m" in doc:
        return "matrix"
    field = field_from(doc)
    return "rank" if isinstance(field, ExtField) else "hamming"


def load_matrix(path, shape=None):
    doc = read_json(path)
    if isinstance(doc, dict):
        doc = doc.get("matrix", doc.get("B", doc.get("Y")))
    a = np.asarray(doc, dtype=np.int64)
    if a.ndim == 1 and a.size == 0:
        a = a.reshape(0, shape[1] if shape else 0)
    if a.ndim != 2:
        raise InputError(f"{path}: expected a matrix")
    if shape is not None and a.shape[1] != shape[1]:
        raise InputError(f"{path}: expected {shape[1]} columns, got {a.shape[1]}")
    return a
