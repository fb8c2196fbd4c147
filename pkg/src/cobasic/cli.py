"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 usage or ingestion error,
3 capacity exceeded.
"""

import argparse
import contextlib
import json
import sys

from . import __version__
from . import bicomplex as bx
from . import checks
from . import cohomology as co
from . import linalg
from . import spectral as sp
from .algebra import load_algebra, parse_selector
from .errors import CobasicError, TheoremViolation

ZOO = ("field", "upper_triangular:2", "matrix:2")


def _algebra(args):
    if getattr(args, "algebra_file", None):
        return load_algebra(args.algebra_file)
    return parse_selector(args.algebra or "field")


def _meta(args, alg=None):
    out = {"tool": "cobasic", "version": __version__, "seed": args.seed}
    if alg is not None:
        out["algebra"] = alg.ident
        out["algebra_hash"] = alg.digest
    return out


def _emit(args, payload, pretty):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(pretty(payload))


# -- commands ---------------------------------------------------------------

def cmd_table(args):
    alg = _algebra(args)
    variants = co.VARIANTS if args.complex == "all" else (args.complex,)
    reports = [co.cohomology_dims(alg, v, args.max_degree) for v in variants]
    payload = dict(_meta(args, alg), reports=[r.to_json() for r in reports])
    if args.format == "csv":
        for i, r in enumerate(reports):
            text = r.to_csv()
            sys.stdout.write(text if i == 0 else text.split("\n", 1)[1])
        return 0, payload

    def pretty(p):
        lines = ["cobasic %s  algebra %s (%s)  seed %s" % (p["version"], p["algebra"], p["algebra_hash"], p["seed"])]
        for rep in p["reports"]:
            lines.append("%s complex" % rep["variant"])
            lines.append("  n  dimC  dimCH  dimCI  dimCB  dimZ  dimB  dimH")
            for r in rep["rows"]:
                lines.append("%3d %5d %6d %6d %6d %5d %5d %5d" % (
                    r["n"], r["dimC"], r["dimCH"], r["dimCI"], r["dimCB"], r["dimZ"], r["dimB"], r["dimH"]))
            lines.append("  dims H: " + ",".join(str(r["dimH"]) for r in rep["rows"]))
        return "\n".join(lines)

    _emit(args, payload, pretty)
    return 0, payload


def cmd_theorem(args):
    alg = _algebra(args)
    try:
        result = co.theorem1_check(alg, args.max_degree)
        code = 0
    except TheoremViolation as exc:
        result = exc.tables
        code = 1
    payload = dict(_meta(args, alg), **result)

    def pretty(p):
        return ("H_B dims %s\ninvariant polynomial dims %s\nholds: %s"
                % (p["basic_dims"], p["invariant_polynomial_dims"], p["holds"]))

    _emit(args, payload, pretty)
    return code, payload


def cmd_selftest(args):
    names = [args.algebra] if args.algebra else list(ZOO)
    algs = [load_algebra(args.algebra_file)] if args.algebra_file else [parse_selector(n) for n in names]
    results = []
    for alg in algs:
        results += checks.operator_suite(alg, args.seed, args.samples)
        results += checks.oracle_suite(alg, args.seed, args.samples)
        results += checks.bicomplex_suite(alg, args.seed, args.samples, max_total=4)
        results += checks.invariant_bicomplex_suite(alg, args.seed, max(1, args.samples // 4), max_total=3)
        results += checks.filtration_suite(alg, args.seed)
    results += checks.group_algebra_suite(args.seed)
    rows, products = checks.lemma_table(6)
    lemma_ok = all(r["holds"] for r in rows) and all(r["holds"] for r in products)
    summary = checks.summarize(results)
    passed = summary["passed"] and lemma_ok
    payload = dict(_meta(args), passed=passed, checks=summary["checks"],
                   lemma={"recursion": rows, "product": products})
    if not passed:
        failed = [c for c in summary["checks"] if not c["passed"]]
        payload["first_failure"] = failed[0] if failed else {"lemma": "failed"}

    def pretty(p):
        lines = ["%-4s %-22s %s (%d samples)" % ("ok" if c["passed"] else "FAIL", c["algebra"], c["name"], c["samples"])
                 for c in p["checks"]]
        lines.append("%-4s Q[S_n] lemma checks for n <= 6" % ("ok" if lemma_ok else "FAIL"))
        if "first_failure" in p:
            lines.append("first failure: " + json.dumps(p["first_failure"], sort_keys=True))
        lines.append("selftest %s (seed %s)" % ("passed" if p["passed"] else "FAILED", p["seed"]))
        return "\n".join(lines)

    _emit(args, payload, pretty)
    return (0 if passed else 1), payload


def cmd_lemma(args):
    from . import permutations as perm
    n = args.n
    large = n > perm.DEFAULT_MAX_N
    rows = [{"n": n, "k": k, "holds": perm.lemma_recursion_check(n, k, large)} for k in range(1, n)]
    if args.k is not None:
        rows = [r for r in rows if r["k"] == args.k] or [
            {"n": n, "k": args.k, "holds": perm.lemma_recursion_check(n, args.k, large)}]
    product = perm.lemma_product_check(n, large) if n >= 2 else True
    holds = all(r["holds"] for r in rows) and product
    payload = dict(_meta(args), n=n, checks=rows, product={"n": n, "holds": product}, holds=holds)

    def pretty(p):
        lines = ["H H_(%d) = %d H_(%d) + H_(%d) in Q[S_%d]: %s" % (r["k"], r["k"], r["k"], r["k"] + 1, r["n"], r["holds"])
                 for r in p["checks"]]
        lines.append("product formulas in Q[S_%d]: %s" % (n, product))
        return "\n".join(lines)

    _emit(args, payload, pretty)
    return (0 if holds else 1), payload


def cmd_bicomplex(args):
    alg = _algebra(args)
    res = bx.delta_mod_d_dims(alg, args.m, args.n)
    payload = dict(_meta(args, alg), m=args.m, n=args.n, dimZ=res.z, dimB=res.b, dimH=res.h)

    def pretty(p):
        return "H^{%d,%d}(delta|d): dim Z = %d, dim B = %d, dim H = %d" % (
            p["m"], p["n"], p["dimZ"], p["dimB"], p["dimH"])

    _emit(args, payload, pretty)
    return 0, payload


def cmd_spectral(args):
    alg = _algebra(args)
    page = sp.page_dims(alg, args.page, args.max_total)
    payload = dict(_meta(args, alg), **page.to_json())
    if args.convergence:
        payload["convergence"] = sp.convergence_check(alg, args.max_total)

    def pretty(p):
        table = {(c["p"], c["q"]): c["dim"] for c in p["cells"]}
        top = args.max_total
        lines = ["E_%d page, p across, q up (total degree <= %d)" % (p["r"], top)]
        for q in range(top, -1, -1):
            cells = [str(table[(pp, q)]) if (pp, q) in table else "." for pp in range(top + 1)]
            lines.append("q=%d | " % q + " ".join("%4s" % c for c in cells))
        lines.append("stabilized: %s" % p["stabilized"])
        return "\n".join(lines)

    _emit(args, payload, pretty)
    return 0, payload


# -- parser -------------------------------------------------------------------

def _positive(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser():
    parser = argparse.ArgumentParser(prog="cobasic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version="cobasic " + __version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="built-in selector: field, matrix:N, upper_triangular:N, direct_sum:(A),(B)")
    common.add_argument("--algebra-file", help="algebra JSON file")
    common.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--capacity", type=int, help="nonzero-entry guard for matrices")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="cohomology dimension table")
    p.add_argument("--complex", choices=co.VARIANTS + ("all",), default="basic")
    p.add_argument("--max-degree", type=_positive, default=4)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("theorem", parents=[common], help="compare H_B with invariant polynomials")
    p.add_argument("--max-degree", type=_positive, default=4)
    p.set_defaults(func=cmd_theorem)

    p = sub.add_parser("selftest", parents=[common], help="run the exact identity suites")
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("lemma", parents=[common], help="brute-force the group algebra lemma")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("bicomplex", parents=[common], help="delta-cohomology modulo d")
    p.add_argument("--m", type=_positive, default=1)
    p.add_argument("--n", type=_positive, default=3)
    p.set_defaults(func=cmd_bicomplex)

    p = sub.add_parser("spectral", parents=[common], help="spectral sequence page")
    p.add_argument("--page", type=_positive, default=1)
    p.add_argument("--max-total", type=_positive, default=4)
    p.add_argument("--convergence", action="store_true", help="also check E_infinity")
    p.set_defaults(func=cmd_spectral)
    return parser


def run(argv=None):
    """Parse and execute; returns ``(exit_code, payload)``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.command != "table":
        parser.error("csv output is only available for 'table'")
    if args.capacity is not None:
        if args.capacity <= 0:
            parser.error("--capacity must be positive")
        ctx = linalg.capacity_limit(args.capacity)
    else:
        ctx = contextlib.nullcontext()
    with ctx:
        try:
            return args.func(args)
        except CobasicError as exc:
            err = {"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
            print(json.dumps(err, sort_keys=True), file=sys.stderr)
            return exc.exit_code, err


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
