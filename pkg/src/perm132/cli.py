"""Command line front end: ``perm132 <command> ...`` or ``python3 -m perm132``.

Exit codes: 0 success, 1 failed check or internal assertion, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

from .algebra import catalan, format_fraction, gf_from_ed
from .enumeration import DEFAULT_CAP, EnumerationCapError, exact_distribution, exact_mixed_moment
from .excursion import sample_psi_stats, supported
from .expectation import SymbolicConstant, asymptotic_constant, ed_expectation
from .moments import Monomial, asymptotic_mixed, ed_monomial
from .perms import PatternError, parse_pattern
from .sampler import sample_scaled_stats

SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
CONFIG_KEYS = {"cap": int, "seed": int, "threads": int, "reps": int, "order": int}


class UsageError(Exception):
    pass


def read_config(path) -> dict:
    """Parse a key=value file; '#' starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = CONFIG_KEYS[key](val)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}") from None
    return out


def _setting(args, name, default):
    val = getattr(args, name, None)
    if val is not None:
        return val
    return args.config_values.get(name, default)


def variance_text(m1: SymbolicConstant, m2: SymbolicConstant) -> str:
    """E X^2 - (E X)^2 in closed form, e.g. '(10-3*pi)/12'."""
    sq = m1.q * m1.q
    if m1.pi_half_power == 0 or sq == 0:
        if m2.pi_half_power != 0:
            return f"{m2.format_value()} - {format_fraction(sq)}"
        return format_fraction(m2.q - sq)
    if m1.pi_half_power != 1 or m2.pi_half_power != 0:
        return f"{m2.format_value()} - ({m1.format_value()})^2"
    den = math.lcm(m2.q.denominator, sq.denominator)
    a = m2.q * den
    b = sq * den
    g = math.gcd(int(a), int(b), den)
    a, b, den = int(a) // g, int(b) // g, den // g
    bterm = "pi" if b == 1 else f"{b}*pi"
    return f"({a}-{bterm})/{den}" if den != 1 else f"{a}-{bterm}"


def _parse_patterns(text: str) -> list:
    return [parse_pattern(s) for s in text.split(",") if s.strip()]


def _parse_ns(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def _emit(args, payload):
    text = json.dumps(payload, indent=2)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


# -- commands ----------------------------------------------------------------------


def cmd_expect(args) -> int:
    sigma = parse_pattern(args.pattern)
    f = ed_expectation(sigma)
    a = asymptotic_constant(sigma)
    coeffs = None
    if args.gf:
        series = gf_from_ed(f, args.gf)
        coeffs = [series[n] for n in range(args.gf)]
    if args.json:
        payload = {
            "pattern": str(sigma),
            "ed": {str(e): format_fraction(v) for e, v in f.coeffs.items()},
            "leading": format_fraction(f.leading()),
            "A": a.format_value(),
            "A_decimal": a.value,
            "n_exponent": format_fraction(a.n_exponent),
        }
        if coeffs is not None:
            payload["gf"] = [format_fraction(c) for c in coeffs]
            payload["means"] = [format_fraction(c / catalan(n)) for n, c in enumerate(coeffs)]
        _emit(args, payload)
        return 0
    print(f"E_d X_{sigma} = {f.format(sep=' ')}")
    print(f"e = {format_fraction(f.leading())}")
    print(f"A = {a}")
    print(f"A ≈ {a.value:.10g}")
    if coeffs is not None:
        print("n, [x^n] sum C_n z_n x^n, mean z_n")
        for n, c in enumerate(coeffs):
            print(f"{n}, {format_fraction(c)}, {format_fraction(c / catalan(n))}")
    return 0


def _moment_label(mono: Monomial) -> str:
    if len(mono.factors) == 1:
        p, k = mono.factors[0]
        return "E Λ" + (str(k).translate(SUPERSCRIPT) if k > 1 else "")
    parts = [f"Λ_{p}" + (str(k).translate(SUPERSCRIPT) if k > 1 else "") for p, k in mono.factors]
    return "E " + " ".join(parts)


def cmd_moment(args) -> int:
    try:
        mono = Monomial.parse(args.monomial)
    except PatternError as exc:
        raise UsageError(str(exc)) from None
    if not mono:
        raise UsageError("empty monomial")
    f = ed_monomial(mono)
    c = asymptotic_mixed(mono)
    exact = {n: exact_mixed_moment(mono, n, cap=_setting(args, "cap", DEFAULT_CAP)) for n in args.n or []}
    if args.json:
        _emit(args, {
            "monomial": str(mono),
            "weight": mono.weight,
            "ed": {str(e): format_fraction(v) for e, v in f.coeffs.items()},
            "limit": c.format_value(),
            "limit_decimal": c.value,
            "n_exponent": format_fraction(c.n_exponent),
            "exact": {str(n): format_fraction(v) for n, v in exact.items()},
        })
        return 0
    print(f"monomial {mono}, weight {mono.weight}")
    print(f"E_d = {f.format(sep=' ')}")
    print(f"{_moment_label(mono)} = {c.format_value()}")
    print(f"decimal ≈ {c.value:.10g}")
    print(f"E prod X ~ {c}")
    for n, v in exact.items():
        print(f"n={n}: {format_fraction(v)}")
    return 0


STATS = ("mean", "var", "m2", "m3", "dist")


def cmd_exact(args) -> int:
    cap = _setting(args, "cap", DEFAULT_CAP)
    stats = args.stat or ["mean"]
    for s in stats:
        if s not in STATS:
            raise UsageError(f"unknown statistic {s!r}; choose from {', '.join(STATS)}")
    patterns = [parse_pattern(s) for s in args.pattern]
    cols = ["mean"] + [s for s in stats if s not in ("mean", "dist")]
    rows = []
    for n in _parse_ns(args.n):
        for p in patterns:
            m1 = exact_mixed_moment({p: 1}, n, cap)
            vals = {"mean": m1}
            if "var" in cols or "m2" in cols:
                m2 = exact_mixed_moment({p: 2}, n, cap)
                vals["m2"] = m2
                vals["var"] = m2 - m1 * m1
            if "m3" in cols:
                vals["m3"] = exact_mixed_moment({p: 3}, n, cap)
            row = {"n": n, "pattern": str(p), **{c: format_fraction(vals[c]) for c in cols}}
            if "dist" in stats:
                row["dist"] = ";".join(f"{k}:{v}" for k, v in exact_distribution(p, n, cap).items())
            rows.append(row)
    fields = ["n", "pattern"] + cols + (["dist"] if "dist" in stats else [])
    if args.json:
        _emit(args, rows)
    elif args.csv:
        w = csv.DictWriter(sys.stdout, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    else:
        for r in rows:
            print("  ".join(f"{k}={r[k]}" for k in fields))
    return 0


def cmd_gf(args) -> int:
    sigma = parse_pattern(args.pattern)
    order = _setting(args, "order", 12)
    series = gf_from_ed(ed_expectation(sigma), order)
    rows = [(n, series[n], series[n] / catalan(n)) for n in range(order)]
    if args.csv or not args.json:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["n", "coefficient", "mean"])
        for n, c, m in rows:
            w.writerow([n, format_fraction(c), format_fraction(m)])
    else:
        _emit(args, {"pattern": str(sigma), "coefficients": [format_fraction(c) for _, c, _ in rows]})
    return 0


def _report_stats(args, stats, target_of):
    payload = stats.to_dict()
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
    if args.json and not args.out:
        print(json.dumps(payload, indent=2))
        return
    print(f"{'pattern':>8} {'mean':>12} {'se':>10} {'limit':>12} {'z':>7} {'second':>12} {'limit2':>12}")
    for name, st in stats.per_pattern.items():
        a, a2 = target_of(name)
        z = (st["mean"] - a) / st["se"] if st["se"] else math.nan
        print(f"{name:>8} {st['mean']:12.6f} {st['se']:10.2e} {a:12.6f} {z:7.2f} {st['m2']:12.6f} {a2:12.6f}")


def _limits(name):
    return asymptotic_constant(name).value, asymptotic_mixed({name: 2}).value


def cmd_sample(args) -> int:
    patterns = _parse_patterns(args.patterns)
    if not patterns:
        raise UsageError("no patterns given")
    reps = _setting(args, "reps", 10000)
    seed = _setting(args, "seed", 0)
    threads = _setting(args, "threads", os.cpu_count() or 1)
    stats = sample_scaled_stats(args.n, patterns, reps, seed, threads)
    _report_stats(args, stats, _limits)
    return 0


def cmd_excursion(args) -> int:
    patterns = _parse_patterns(args.patterns)
    if not patterns:
        raise UsageError("no patterns given")
    for p in patterns:
        if not supported(p):
            raise UsageError(f"no excursion functional for {p}")
    reps = _setting(args, "reps", 1000)
    seed = _setting(args, "seed", 0)
    threads = _setting(args, "threads", os.cpu_count() or 1)
    stats = sample_psi_stats(args.m, patterns, reps, seed, threads)
    _report_stats(args, stats, _limits)
    return 0


TABLE_PATTERNS = ("12", "123", "213", "231", "312", "321")
MIXED = ("12*123", "12*213", "12*231", "12*312", "213*231", "213*312", "231*312")


def table_rows() -> list[dict]:
    rows = []
    for s in TABLE_PATTERNS:
        m1 = asymptotic_constant(s)
        m2 = asymptotic_mixed({s: 2})
        rows.append({
            "quantity": f"Lambda_{s}",
            "mean": m1.format_value(),
            "mean_decimal": m1.value,
            "second_moment": m2.format_value(),
            "variance": variance_text(m1, m2),
            "variance_decimal": m2.value - m1.value**2,
        })
    for text in MIXED:
        c = asymptotic_mixed(text)
        rows.append({"quantity": f"E[{text}]", "second_moment": c.format_value(), "mean_decimal": c.value})
    return rows


def cmd_table(args) -> int:
    rows = table_rows()
    trio = ("213", "231", "312")
    matrix = [[asymptotic_mixed(Monomial.of([a, b])).q * 840 for b in trio] for a in trio]
    if args.json:
        _emit(args, {"rows": rows, "second_moments_213_231_312_times_840": [[format_fraction(v) for v in r] for r in matrix]})
        return 0
    if args.csv:
        fields = ["quantity", "mean", "mean_decimal", "second_moment", "variance", "variance_decimal"]
        w = csv.DictWriter(sys.stdout, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return 0
    print("Limit constants E Λ_σ, E Λ_σ², Var Λ_σ")
    for r in rows[: len(TABLE_PATTERNS)]:
        print(f"  {r['quantity']:<12} mean {r['mean']:<14} ≈ {r['mean_decimal']:<10.6f}"
              f" E² {r['second_moment']:<8} Var {r['variance']:<20} ≈ {r['variance_decimal']:.6g}")
    print("Mixed second moments")
    for r in rows[len(TABLE_PATTERNS):]:
        print(f"  {r['quantity']:<14} {r['second_moment']:<8} ≈ {r['mean_decimal']:.6f}")
    print("Second moments of (Λ_213, Λ_231, Λ_312), times 840")
    for r in matrix:
        print("  " + " ".join(f"{format_fraction(v):>4}" for v in r))
    return 0


def cmd_verify(args) -> int:
    from .oracles import verify_all

    failed = 0
    results = []
    for check in verify_all():
        failed += not check.ok
        results.append({"check": check.name, "ok": check.ok, "detail": check.detail})
        if not args.json:
            status = "ok  " if check.ok else "FAIL"
            print(f"{status} {check.name}" + (f": {check.detail}" if check.detail else ""))
    if args.json:
        _emit(args, {"ok": failed == 0, "checks": results})
    return 1 if failed else 0


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file (cap, seed, threads, reps, order)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="machine-readable JSON output")
    fmt.add_argument("--csv", action="store_true", help="CSV output where tabular")

    p = argparse.ArgumentParser(prog="perm132", description="Pattern counts in random 132-avoiding permutations")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("expect", parents=[common], help="E_d X_sigma and the mean constant A_sigma")
    s.add_argument("pattern")
    s.add_argument("--gf", type=int, metavar="K", help="also print the first K series coefficients")
    s.add_argument("--out")
    s.set_defaults(func=cmd_expect)

    s = sub.add_parser("moment", parents=[common], help="mixed moment of limits, e.g. '12^2' or '213*231'")
    s.add_argument("monomial")
    s.add_argument("--n", type=int, action="append", help="also give the exact moment at size n")
    s.add_argument("--cap", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_moment)

    s = sub.add_parser("exact", parents=[common], help="exact finite-n statistics by enumeration")
    s.add_argument("--n", required=True, help="size, list or range such as 1-9")
    s.add_argument("--pattern", action="append", required=True)
    s.add_argument("--stat", action="append", help=f"one of {', '.join(STATS)}; repeatable")
    s.add_argument("--cap", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("gf", parents=[common], help="series coefficients of sum C_n z_n x^n")
    s.add_argument("pattern")
    s.add_argument("--order", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gf)

    s = sub.add_parser("sample", parents=[common], help="Monte Carlo over uniform trees")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--reps", type=int)
    s.add_argument("--patterns", required=True)
    s.add_argument("--seed", type=int)
    s.add_argument("--threads", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("excursion", parents=[common], help="excursion functionals Psi_sigma")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--reps", type=int)
    s.add_argument("--patterns", required=True)
    s.add_argument("--seed", type=int)
    s.add_argument("--threads", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_excursion)

    s = sub.add_parser("table", parents=[common], help="table of limit constants")
    s.add_argument("--out")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("verify", parents=[common], help="cross-engine consistency checks")
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.config_values = read_config(args.config) if args.config else {}
        return args.func(args)
    except (UsageError, PatternError, EnumerationCapError, FileNotFoundError) as exc:
        print(f"perm132 {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"perm132 {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"perm132 {args.command}: internal check failed: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
