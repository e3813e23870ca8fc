"""Command-line front end: verification commands, range scans and JSON reports."""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd
from pathlib import Path

import mpmath

from . import congruence as cg
from . import numerics as nm
from .cyclotomic import polys
from .errors import (BadModulus, DenominatorVanishes, NoConvergence, NotInvertible, ParseError,
                     QCongruenceError, ValidationError)
from .family import FamilySpec, load_family
from .numtheory import is_prime, parse_range

EXACT = ("supercongruence", "q-congruence", "parametric", "lemma", "root-vanishing",
         "truncated-half")
NUMERIC = ("identity", "rahman", "limit-probe")


class UsageError(Exception):
    pass


# -- single instances (top level so worker processes can import them) ----
def _fail(statement, params, exc) -> dict:
    return cg.Verdict(statement, params, False, f"{type(exc).__name__}: {exc}").to_record()


def run_exact(statement: str, value: int, family: FamilySpec | None, mode: str = "full",
              ell: int | None = None) -> list[dict]:
    key = "p" if statement == "supercongruence" else ("d" if statement == "root-vanishing" else "n")
    try:
        if statement == "supercongruence":
            return [cg.verify_supercongruence(value).to_record()]
        if statement == "q-congruence":
            fn = cg.verify_parametric_congruence if mode == "parametric" else cg.verify_q_congruence
            return [fn(value, family).to_record()]
        if statement == "parametric":
            return [cg.verify_parametric_congruence(value, family).to_record()]
        if statement == "lemma":
            return [cg.verify_lemma(value, family).to_record()]
        if statement == "truncated-half":
            return [cg.verify_truncated_half(value, family).to_record()]
        if statement == "root-vanishing":
            out = [cg.verify_root_vanishing(value, family).to_record()]
            if ell:
                out += [cg.verify_block_multiplicativity(value, ell, k, family).to_record()
                        for k in range(value)]
            return out
    except BadModulus:
        raise
    except (NotInvertible, DenominatorVanishes, NoConvergence) as exc:
        return [_fail(statement, {key: value}, exc)]
    raise UsageError(f"unknown statement {statement!r}")


def run_identity(family: FamilySpec, q, a, digits: int) -> dict:
    params = {"q": q, "a": a, "digits": digits}
    t0 = time.perf_counter()
    try:
        L = nm.eval_q_lhs(family.summand, q, a, digits)
        R = nm.eval_q_rhs((family.rhs_num, family.rhs_den), q, a, digits)
    except (DenominatorVanishes, NoConvergence) as exc:
        return _fail("identity", params, exc)
    ok, diff = nm.agree(L, R, mpmath.mpf(10) ** (-digits))
    detail = (f"|LHS - RHS| = {mpmath.nstr(diff, 3)} after {L.terms_used} terms "
              f"(tail <= {mpmath.nstr(L.tail_bound, 3)})")
    return cg.Verdict("identity", params, ok, detail, time.perf_counter() - t0).to_record()


def run_rahman(q, a, c, digits: int) -> dict:
    params = {"q": q, "a": a, "c": c, "digits": digits}
    t0 = time.perf_counter()
    try:
        rep = nm.eval_rahman(a, c, q, digits)
    except (DenominatorVanishes, NoConvergence) as exc:
        return _fail("rahman", params, exc)
    return cg.Verdict("rahman", params, rep.holds, rep.detail, time.perf_counter() - t0).to_record()


def run_probe(js, digits: int) -> dict:
    params = {"j_values": ",".join(map(str, js)), "digits": digits}
    t0 = time.perf_counter()
    try:
        rows, ratios, ok = nm.limit_probe_q_to_1(js, digits=digits)
    except NoConvergence as exc:
        return _fail("limit-probe", params, exc)
    detail = "; ".join(f"j={r.j}: err {mpmath.nstr(r.error, 4)}" for r in rows)
    if ratios:
        detail += "; ratios " + ", ".join(mpmath.nstr(x, 4) for x in ratios)
    return cg.Verdict("limit-probe", params, ok, detail, time.perf_counter() - t0).to_record()


# -- argument handling ---------------------------------------------------
def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _range(text: str) -> range:
    try:
        return parse_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", default="rahman-8k1", help="bundled family name or file path")
    common.add_argument("--n", type=int, help="single modulus index (d for root-vanishing)")
    common.add_argument("--n-range", type=_range, help="A..B; filtered to admissible n")
    common.add_argument("--p", type=int, help="single prime for supercongruence")
    common.add_argument("--p-range", type=_range, help="A..B; filtered to primes > 3")
    common.add_argument("--mode", choices=("full", "parametric"), default=None,
                        help="modulus for q-congruence (default: family's modulus_kind)")
    common.add_argument("--ell", type=int, help="root-vanishing: also check blocks l*d + k")
    common.add_argument("--q", type=_rational, default=Fraction(1, 2))
    common.add_argument("--a", type=_rational, default=Fraction(1))
    common.add_argument("--c", type=_rational, default=Fraction(1, 2))
    common.add_argument("--j-values", type=_ints, default=[2, 3, 4])
    common.add_argument("--digits", type=int, default=30)
    common.add_argument("--json", type=Path, help="write the report here")
    common.add_argument("--cache", type=Path, help="cyclotomic cache directory")
    common.add_argument("--jobs", type=int, default=1)

    p = argparse.ArgumentParser(prog="qcongruence",
                                description="Exact and numeric checks of q-series congruences.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run one verifier")
    v.add_argument("statement", choices=EXACT + NUMERIC)
    s = sub.add_parser("scan", parents=[common], help="run an exact verifier over a range")
    s.add_argument("statement", choices=EXACT)
    c = sub.add_parser("cache", help="manage the cyclotomic polynomial cache")
    c.add_argument("action", choices=("show", "build", "clear"))
    c.add_argument("--cache", type=Path)
    c.add_argument("--upto", type=int, default=200, help="build: largest index")
    return p


def _instances(args, family: FamilySpec | None) -> list[int]:
    st = args.statement
    if st == "supercongruence":
        if args.p is not None:
            return [args.p]
        if args.p_range is not None:
            return [p for p in args.p_range if p > 3 and is_prime(p)]
        raise UsageError("supercongruence needs --p or --p-range")
    if args.n is not None:
        return [args.n]
    if args.n_range is None:
        raise UsageError(f"{st} needs --n or --n-range")
    if st == "lemma":
        return [n for n in args.n_range if n >= 1 and n % 2]
    coprime = family.coprime_to
    out = [n for n in args.n_range if n >= 1 and gcd(n, coprime) == 1]
    if st == "root-vanishing":
        out = [n for n in out if n > 1]
    return out


def _sorted(records):
    def key(rec):
        nums = tuple(v if isinstance(v, int) else 0 for v in rec["params"].values())
        return (rec["statement"], nums, json.dumps(rec["params"], sort_keys=True))
    return sorted(records, key=key)


def _print_table(records, out=None):
    out = out or sys.stdout
    rows = [(r["statement"], ", ".join(f"{k}={v}" for k, v in r["params"].items()),
             "PASS" if r["holds"] else "FAIL", f"{r['elapsed_ms']:.1f}", r["detail"])
            for r in records]
    head = ("statement", "params", "result", "ms", "detail")
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
              for i, h in enumerate(head[:4])]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths) + "  {}"
    print(fmt.format(*head), file=out)
    for row in rows:
        print(fmt.format(*row), file=out)
    passed = sum(r["holds"] for r in records)
    print(f"{passed}/{len(records)} hold", file=out)


def _report(records) -> dict:
    passed = sum(1 for r in records if r["holds"])
    return {"records": records,
            "summary": {"total": len(records), "passed": passed, "failed": len(records) - passed}}


def _cache_dir(args) -> Path | None:
    if getattr(args, "cache", None):
        return args.cache
    return polys.default_cache_dir()


def _cache_command(args) -> int:
    d = _cache_dir(args)
    if d is None:
        print(f"no cache directory (use --cache or {polys.CACHE_ENV})", file=sys.stderr)
        return 2
    path = d / polys.CACHE_FILE
    if args.action == "show":
        n = polys.load_cache(d) if path.exists() else 0
        print(f"{path}: {n} cyclotomic polynomials")
    elif args.action == "build":
        for n in range(1, args.upto + 1):
            polys.cyclotomic_coeffs(n)
        print(f"wrote {polys.save_cache(d)}")
    else:
        if path.exists():
            path.unlink()
        print(f"cleared {path}")
    return 0


def _run(args) -> list[dict]:
    st = args.statement
    family = None
    if st not in ("supercongruence", "rahman", "limit-probe"):
        family = load_family(args.family)
    if st == "identity":
        return [run_identity(family, args.q, args.a, args.digits)]
    if st == "rahman":
        return [run_rahman(args.q, args.a, args.c, args.digits)]
    if st == "limit-probe":
        return [run_probe(args.j_values, args.digits)]
    values = _instances(args, family)
    if family is not None and st != "root-vanishing":
        family.check_exponents(values)
    mode = args.mode or (family.modulus_kind if family else "full")
    if st == "parametric":
        mode = "parametric"
    jobs = max(1, args.jobs)
    records = []
    if jobs == 1 or len(values) < 2:
        for v in values:
            records += run_exact(st, v, family, mode, args.ell)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_exact, st, v, family, mode, args.ell) for v in values]
            for f in futures:
                records += f.result()
    return records


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "cache":
        return _cache_command(args)
    cache = _cache_dir(args)
    if cache is not None and (cache / polys.CACHE_FILE).exists():
        polys.load_cache(cache)
    try:
        if args.digits < 1:
            raise UsageError("--digits must be >= 1")
        records = _run(args)
    except (UsageError, BadModulus, ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QCongruenceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    records = _sorted(records)
    _print_table(records)
    if args.json:
        args.json.write_text(json.dumps(_report(records), indent=2) + "\n")
    if cache is not None:
        try:
            polys.save_cache(cache)
        except OSError as exc:
            print(f"warning: cache not saved: {exc}", file=sys.stderr)
    return 0 if all(r["holds"] for r in records) else 1


def main() -> None:
    sys.exit(run_command())
