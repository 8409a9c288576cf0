"""Command line front end: ``rankweights <verb> [options]``.

Exit status: 0 success, 1 usage or input error (including guard refusals),
2 a theorem check failed. Every run writes a manifest next to its report.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import bridges, equivalence, netsim, schemes, weights
from .errors import GuardExceeded, TheoremViolation
from .field import ExtField, Field
from .io import (
    InputError,
    dumps,
    file_hash,
    file_kind,
    load_code,
    load_matrix,
    load_pair,
    load_scheme,
    load_vector_pair,
    pair_to_dict,
    read_json,
    scheme_to_dict,
    to_jsonable,
)
from .rank import MatrixCode

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class Report:
    """A result payload plus one flat table for csv/table output."""

    def __init__(self, verb, result, columns, rows, violations=()):
        self.verb = verb
        self.result = result
        self.columns = list(columns)
        self.rows = [list(r) for r in rows]
        self.violations = list(violations)

    def render(self, fmt):
        if fmt == "json":
            return dumps({"command": self.verb, "result": self.result, "violations": self.violations})
        cells = [[_cell(c) for c in row] for row in self.rows]
        if fmt == "csv":
            buf = _io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            w.writerows(cells)
            return buf.getvalue()
        widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(self.columns)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(self.columns, widths)).rstrip()]
        lines.append("  ".join("-" * w for w in widths))
        lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
        if self.violations:
            lines.append(f"VIOLATIONS: {', '.join(self.violations)}")
        return "\n".join(lines) + "\n"


def _cell(v):
    v = to_jsonable(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"), sort_keys=True)
    if v is None:
        return ""
    return str(v)


def _range(spec, lo, hi, name):
    """Parse '3', '1..4' or 'all' into a list within [lo, hi]."""
    if spec in (None, "all"):
        return list(range(lo, hi + 1))
    try:
        if ".." in spec:
            a, b = spec.split("..", 1)
            a = int(a) if a else lo
            b = hi if b in ("", "ell", "n") else int(b)
            values = list(range(a, b + 1))
        else:
            values = [int(spec)]
    except ValueError:
        raise UsageError(f"bad {name} range {spec!r}") from None
    bad = [v for v in values if not lo <= v <= hi]
    if bad or not values:
        raise UsageError(f"{name} must lie in {lo}..{hi}")
    return values


def _basis(L):
    return [list(r) for r in L.rows]


# -- verbs -----------------------------------------------------------------------


def cmd_weights(args):
    C1, C2 = load_pair(args.pair or args.code)
    ell = C1.dim - C2.dim
    rs = _range(args.r, 1, ell, "r")
    rows, out = [], []
    for r in rs:
        lo, up = weights.singleton_bounds(C1.m, C1.n, ell, r)
        d, L = weights.rgmw_definitional(C1, C2, r)
        wei = None
        if args.wei != "off":
            try:
                wei = weights.rgmw_wei(C1, C2, r)[0]
            except GuardExceeded:
                if args.wei == "on":
                    raise
        if wei is not None and wei != d:
            raise weights.ConsistencyError(f"d_M,{r}: sweep {d} vs subcode search {wei}", {"r": r})
        out.append({"r": r, "dM": d, "witness": _basis(L), "wei": wei, "bounds": [lo, up]})
        rows.append([r, d, wei, lo, up, _basis(L)])
    return Report("weights", {"ell": ell, "weights": out}, ["r", "d_M", "wei", "lower", "upper", "witness_L"], rows)


def _profile_dict(P):
    return {
        "pair": pair_to_dict(P.C1, P.C2),
        "ell": P.ell,
        "dM": P.d,
        "KM": P.K,
        "witnesses": {"dM": [_basis(L) for L in P.d_witness], "KM": [_basis(L) for L in P.K_witness]},
        "wei": P.wei,
        "bounds": {"lower": [b[0] for b in P.bounds()], "upper": [b[1] for b in P.bounds()]},
        "checks": P.checks,
    }


def cmd_profile(args):
    C1, C2 = load_pair(args.pair)
    P = weights.weight_profile(C1, C2, wei=args.wei)
    rows = [["dM", r, P.dM(r), _basis(P.d_witness[r - 1])] for r in range(1, P.ell + 1)]
    rows += [["KM", mu, P.KM(mu), _basis(P.K_witness[mu])] for mu in range(P.n + 1)]
    return Report("profile", _profile_dict(P), ["quantity", "index", "value", "witness_L"], rows)


def cmd_verify_bounds(args):
    C1, C2 = load_pair(args.pair)
    P = weights.weight_profile(C1, C2, wei=args.wei)
    rows = []
    for name, ok in P.checks.items():
        if name == "wei_agreement":
            verdict = "PASS" if not ok["disagree"] else "VIOLATED"
            rows.append([name, verdict, f"agree={ok['agree']} skipped={ok['skipped']}"])
        else:
            rows.append([name, "PASS" if ok else "VIOLATED", ""])
    return Report("verify-bounds", _profile_dict(P), ["check", "verdict", "detail"], rows)


def cmd_leak(args):
    S = load_scheme(args.scheme)
    B = load_matrix(args.wiretap, S.shape)
    exact = schemes.leakage_exact(S, B)
    result = {"leakage": exact, "rows": int(B.shape[0])}
    rows = [["leakage_exact", exact, ""]]
    violations = []
    if args.oracle:
        oracle = schemes.leakage_oracle(S, B)
        ok = oracle == exact
        result["oracle"] = oracle
        result["agree"] = ok
        rows.append(["leakage_oracle", oracle, "PASS" if ok else "VIOLATED"])
        if not ok:
            violations.append("leakage_oracle")
    return Report("leak", result, ["quantity", "value", "verdict"], rows, violations)


def cmd_worst_case(args):
    S = load_scheme(args.scheme)
    n = S.shape[1]
    rows, K, d = [], [], []
    for mu in _range(args.mu, 0, n, "mu"):
        v, B = schemes.worst_case_leakage(S, mu)
        K.append({"mu": mu, "leakage": v, "witness_B": B.tolist()})
        rows.append(["worst_case_leakage", mu, v, B.tolist()])
    for r in _range(args.r, 1, S.ell, "r"):
        v, B = schemes.links_needed(S, r)
        d.append({"r": r, "links": v, "witness_B": B.tolist()})
        rows.append(["links_needed", r, v, B.tolist()])
    params = schemes.scheme_parameters(S)
    result = {"worst_case": K, "links_needed": d, "ell": params.ell, "t": params.t, "bound": params.bound}
    rows.append(["security_parameter", "", params.t, ""])
    return Report("worst-case", result, ["quantity", "index", "value", "witness_B"], rows)


def _scheme_report(verb, S, extra, args):
    params = schemes.scheme_parameters(S)
    result = dict(extra)
    result.update({"ell": params.ell, "t": params.t, "bound": params.bound, "meets_bound": params.meets_bound})
    violations = []
    if args.verify:
        measured = schemes.measured_security(S)
        result["measured_t"] = measured
        if measured != params.t:
            violations.append("measured_t")
    result["scheme"] = scheme_to_dict(S)
    if args.scheme_out:
        Path(args.scheme_out).write_text(dumps(scheme_to_dict(S)))
    rows = [[k, result[k]] for k in sorted(result) if k != "scheme"]
    return Report(verb, result, ["quantity", "value"], rows, violations)


def cmd_construct(args):
    S = schemes.optimal_scheme(args.m, args.n, args.q, ell=args.ell, t=args.t, seed=args.seed)
    target = {"m": args.m, "n": args.n, "q": args.q}
    target["predicted_t"] = schemes.optimal_security(args.m, args.n, S.ell)
    report = _scheme_report("construct", S, target, args)
    if report.result["t"] != target["predicted_t"]:
        report.violations.append("optimal_t")
    return report


def cmd_gabidulin(args):
    ext = ExtField(Field(args.q), args.m)
    if args.window:
        pair = schemes.window_pair(ext, args.n, args.k1, args.k2)
    else:
        pair = schemes.gabidulin_pair(ext, args.n, args.k1, args.k2)
    S = schemes.build_scheme(pair.C1, pair.C2, seed=args.seed)
    extra = {"k1": args.k1, "k2": args.k2, "predicted_ell": args.m * (args.k1 - args.k2), "predicted_t": args.k2}
    report = _scheme_report("gabidulin", S, extra, args)
    if report.result["ell"] != extra["predicted_ell"]:
        report.violations.append("ell")
    if report.result["t"] < args.k2 or (not args.window and report.result["t"] != args.k2):
        report.violations.append("t")
    return report


def cmd_simulate(args):
    if args.config:
        cfg = read_json(args.config)
        base = Path(args.config).parent
        scheme_file = base / cfg["scheme_file"]
        mu, trials = int(cfg["mu"]), int(cfg.get("trials", 100))
        seed, exhaustive = int(cfg.get("seed", 0)), cfg.get("exhaustive", "auto")
    else:
        if not args.scheme or args.mu is None:
            raise UsageError("simulate needs --config or both --scheme and --mu")
        scheme_file, mu, trials, seed, exhaustive = args.scheme, args.mu, args.trials, args.seed, args.exhaustive
    S = load_scheme(scheme_file)
    report = netsim.leakage_experiment(S, mu, trials=trials, seed=seed, exhaustive=exhaustive)
    if args.transcript:
        m, n = S.shape
        inst = netsim.random_instance(S.field, m, n, n, mu, 0, 0, seed)
        rng = np.random.default_rng(seed)
        msgs = [S.field.random(rng, S.ell).tolist() for _ in range(trials)]
        Path(args.transcript).write_text("".join(line + "\n" for line in netsim.transcript(S, inst, msgs, seed)))
    rows = [[k, report[k]] for k in ("mode", "count", "max", "theory_max", "security_parameter", "verdict")]
    return Report("simulate", report, ["quantity", "value"], rows)


def cmd_decode(args):
    S = load_scheme(args.scheme)
    Y = load_matrix(args.received, S.shape)
    if Y.shape != S.shape:
        raise InputError(f"received matrix must be {S.shape[0]}x{S.shape[1]}")
    radius = schemes.unique_radius(S)
    msgs = schemes.rank_error_decode(S, Y, args.e_max, radius=radius)
    result = {"e_max": args.e_max, "unique_radius": radius, "messages": msgs, "list_size": len(msgs)}
    return Report("decode", result, ["message"], [[m] for m in msgs])


def cmd_duality(args):
    C = load_code(args.code)
    m, n, k = C.m, C.n, C.dim
    table, dual_table = weights.gmw_table(C), weights.gmw_table(C.dual())
    out, rows, violations = [], [], []
    degenerate = k in (0, m * n)
    for p in _range(args.p, 0, m - 1, "p"):
        v = weights.wei_duality_check(C, p, table, dual_table)
        d = v.as_dict()
        out.append(d)
        rows.append([p, d["W_p(C_dual)"], d["Wbar_p+k(C)"], "PASS" if v.holds else "VIOLATED"])
        if not v.holds and not degenerate:
            violations.append(f"p={p}")
    result = {"k": k, "gmw": table, "gmw_dual": dual_table, "degenerate": degenerate, "checks": out}
    return Report("duality", result, ["p", "W_p(C_dual)", "Wbar_p+k(C)", "verdict"], rows, violations)


def cmd_equivalence(args):
    C = load_code(args.code)
    result, rows = {}, []
    if args.transpose or args.A or args.B:
        V = MatrixCode.full(C.field, C.m, C.n)
        if args.transpose:
            phi, W = equivalence.LinearMap.transpose(V), MatrixCode.full(C.field, C.n, C.m)
        else:
            A = load_matrix(args.A) if args.A else np.eye(C.m, dtype=np.int64)
            B = load_matrix(args.B) if args.B else np.eye(C.n, dtype=np.int64)
            phi = equivalence.LinearMap.from_matrices(V, A, B)
            W = MatrixCode.full(C.field, C.m, B.shape[1])
        verdict = equivalence.classify_map(phi, W)
        result["map"] = verdict.__dict__
        result["image"] = phi.image_code(C)
        rows.append(["map_class", verdict.label])
    mp = equivalence.minimal_parameters(C)
    result["n_min"], result["m_min"] = mp.n_min, mp.m_min
    result["compressed"] = mp.compressed
    result["columns"] = list(mp.columns)
    result["compression_verdict"] = mp.verdict.label if mp.verdict else None
    rows += [["n_min", mp.n_min], ["m_min", mp.m_min], ["columns", list(mp.columns)]]
    return Report("equivalence", result, ["quantity", "value"], rows)


def cmd_compare(args):
    path = args.pair or args.code
    kind = file_kind(path)
    flag = {True: "EQUAL", False: "DIFFER"}
    if kind == "matrix":
        C1, C2 = load_pair(path)
        if C2.dim:
            raise InputError("Delsarte comparison takes a single code (C2 = {0})")
        rows_ = bridges.compare_weights(C1, wei=args.wei)
        rows = [[r.r, str(r.d_D), r.d_M, r.relation] for r in rows_]
        result = {
            "kind": "delsarte",
            "rows": [{"r": r.r, "dD": r.d_D, "dM": r.d_M, "integral": r.integral, "relation": r.relation} for r in rows_],
            "anticode": bridges.is_optimal_anticode(C1),
            "rank_support_space": bridges.recognize_rank_support_space(C1) is not None,
        }
        return Report("compare", result, ["r", "d_D", "d_M", "relation"], rows)
    C1, C2 = load_vector_pair(path)
    if kind == "hamming":
        rep = bridges.hamming_bridge(C1, C2, wei=args.wei)
        rows = [["d_H", r + 1, rep.d_H[r], rep.d_M[r], flag[rep.d_H[r] == rep.d_M[r]]] for r in range(len(rep.d_H))]
        rows += [["K_H", mu, rep.K_H[mu], rep.K_M[mu], flag[rep.K_H[mu] == rep.K_M[mu]]] for mu in range(len(rep.K_H))]
        return Report("compare", {"kind": "hamming", **rep.__dict__}, ["quantity", "index", "hamming", "matrix", "relation"], rows)
    rep = bridges.rank_bridge(C1, C2, wei=args.wei)
    m = C1.ext.m
    rows = []
    for r, v in enumerate(rep.d_R, start=1):
        rows.append(["d_R", r, v, [rep.d_M[r * m - p - 1] for p in range(m)], "EQUAL" if rep.collapse_ok else "DIFFER"])
    for mu, v in enumerate(rep.K_R):
        rows.append(["m*K_R", mu, m * v, rep.K_M[mu], flag[m * v == rep.K_M[mu]]])
    return Report("compare", {"kind": "rank", **rep.__dict__}, ["quantity", "index", "rank", "matrix", "relation"], rows)


VERBS = {
    "weights": cmd_weights,
    "profile": cmd_profile,
    "leak": cmd_leak,
    "worst-case": cmd_worst_case,
    "construct": cmd_construct,
    "gabidulin": cmd_gabidulin,
    "simulate": cmd_simulate,
    "decode": cmd_decode,
    "verify-bounds": cmd_verify_bounds,
    "duality": cmd_duality,
    "equivalence": cmd_equivalence,
    "compare": cmd_compare,
}


def build_parser():
    p = _Parser(prog="rankweights", description="Matrix-weight computations for universally secure network coding.")
    p.add_argument("--version", action="version", version=f"rankweights {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "table"], default="json")
    common.add_argument("--output", "-o", help="report path (default: stdout)")
    common.add_argument("--manifest", help="manifest path (default: <output>.manifest.json or ./rankweights-manifest.json)")
    common.add_argument("--seed", type=int, default=0)
    wei = _Parser(add_help=False)
    wei.add_argument("--wei", choices=["auto", "on", "off"], default="auto", help="subcode-search cross-check")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("weights", parents=[common, wei], help="d_M,r table with witnesses")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--code")
    g.add_argument("--pair")
    s.add_argument("--r", default="all", help="r or a..b (default all)")

    for verb, text in (("profile", "full RGMW/RDRP profile"), ("verify-bounds", "check every structural theorem")):
        s = sub.add_parser(verb, parents=[common, wei], help=text)
        s.add_argument("--pair", required=True)

    s = sub.add_parser("leak", parents=[common], help="exact leakage for one wiretap matrix")
    s.add_argument("--scheme", required=True)
    s.add_argument("--wiretap", required=True)
    s.add_argument("--oracle", action="store_true", help="also compute the enumeration oracle")

    s = sub.add_parser("worst-case", parents=[common], help="worst-case leakage and links needed")
    s.add_argument("--scheme", required=True)
    s.add_argument("--mu", default="all")
    s.add_argument("--r", default="all")

    s = sub.add_parser("construct", parents=[common], help="optimal scheme C < F^{m x n}")
    for name in ("m", "n", "q"):
        s.add_argument(f"--{name}", type=int, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--ell", type=int)
    g.add_argument("--t", type=int)
    s.add_argument("--scheme-out")
    s.add_argument("--verify", action="store_true", help="measure t by sweeping all wiretap spaces")

    s = sub.add_parser("gabidulin", parents=[common], help="Gabidulin nested pair scheme")
    for name in ("q", "m", "n", "k1", "k2"):
        s.add_argument(f"--{name}", type=int, required=True)
    s.add_argument("--window", action="store_true", help="coefficient-window pair (requires n | m)")
    s.add_argument("--scheme-out")
    s.add_argument("--verify", action="store_true")

    s = sub.add_parser("simulate", parents=[common], help="wiretap leakage experiment")
    s.add_argument("--config")
    s.add_argument("--scheme")
    s.add_argument("--mu", type=int)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--exhaustive", choices=["auto", "on", "off"], default="auto")
    s.add_argument("--transcript", help="write a JSON-lines transcript")

    s = sub.add_parser("decode", parents=[common], help="brute-force rank error decoding")
    s.add_argument("--scheme", required=True)
    s.add_argument("--received", required=True)
    s.add_argument("--e-max", type=int, required=True)

    s = sub.add_parser("duality", parents=[common], help="Wei-type duality partition")
    s.add_argument("--code", required=True)
    s.add_argument("--p", default="all")

    s = sub.add_parser("equivalence", parents=[common], help="map classification and minimum parameters")
    s.add_argument("--code", required=True)
    s.add_argument("--A")
    s.add_argument("--B")
    s.add_argument("--transpose", action="store_true")

    s = sub.add_parser("compare", parents=[common, wei], help="compare with Hamming, rank or Delsarte weights")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--code")
    g.add_argument("--pair")
    return p


_INPUT_FLAGS = ("code", "pair", "scheme", "wiretap", "received", "config", "A", "B")


def _manifest(argv, args):
    inputs = {}
    for flag in _INPUT_FLAGS:
        path = getattr(args, flag, None)
        if path and Path(path).is_file():
            inputs[path] = file_hash(path)
    return {"command": ["rankweights", *argv], "inputs": inputs, "version": __version__, "seed": args.seed}


def run(argv):
    """Run one command; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    status, report = EXIT_OK, None
    try:
        report = VERBS[args.verb](args)
        if report.violations:
            status = EXIT_VIOLATION
    except TheoremViolation as exc:
        print(f"theorem check violated: {exc}", file=sys.stderr)
        if exc.details:
            print(dumps(exc.details), file=sys.stderr, end="")
        status = EXIT_VIOLATION
    except GuardExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UsageError, InputError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if report is not None:
        text = report.render(args.format)
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
    manifest = args.manifest or (f"{args.output}.manifest.json" if args.output else "rankweights-manifest.json")
    Path(manifest).write_text(dumps(_manifest(argv, args)))
    if report is not None and report.violations:
        print(f"theorem check violated: {', '.join(report.violations)}", file=sys.stderr)
    return status


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":  # pragma: no cover
    main()
