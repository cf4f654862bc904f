"""Command-line entry point.

Every subcommand maps to a single library call and prints one JSON
document (or CSV for ``table``).  Exact integers are printed as decimal
strings, rationals as ``"p/q"`` and certified intervals as ``"[lo,hi]"``.

Exit status: 0 on success, 2 on a usage error, 1 on a domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from fractions import Fraction

import mpmath
from mpmath import iv

from . import asymptotics, enumeration, llt, sampler, verify
from .enumeration import DEFAULT_N_MAX_CAP
from .errors import CompositionError, PartSpecError
from .intervals import format_interval
from .partset import PartSet, format_tuple_spec, parse_tuple_spec

__all__ = ["main", "build_parser", "encode"]


class UsageError(Exception):
    """Bad flag value detected after argparse accepted the command line."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"argument {flag}: {message}")


def _digits(bits: int) -> int:
    return math.ceil(bits * math.log10(2)) + 2


def encode(value, digits: int = 40, plain_ints: bool = False):
    """JSON-safe form: big numbers never become floats.

    Integers become decimal strings unless ``plain_ints`` is set (used for
    the echoed inputs, which are small).
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value if plain_ints else str(value)
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return value
    if isinstance(value, iv.mpf):
        return format_interval(value, digits)
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, digits)
    if isinstance(value, PartSet):
        return str(value)
    if isinstance(value, dict):
        return {str(k): encode(v, digits, plain_ints) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v, digits, plain_ints) for v in value]
    raise TypeError(f"cannot encode {type(value).__name__}")


# argument handling


def _add_common(p: argparse.ArgumentParser, *, parts=True, n=False, m=False, seed=False,
                trials=False, precision=False, fmt_csv=False):
    if parts:
        p.add_argument("--parts", required=True, metavar="SPEC",
                       help='part set or ";"-separated tuple, e.g. "{1,2}" or "N;2N"')
    if n:
        p.add_argument("--n", type=int, required=(n == "required"), metavar="N")
    if m:
        p.add_argument("--m", "--tuple-size", dest="m", type=int, metavar="M",
                       help="number of coordinates; replicates a single part set")
    if seed:
        p.add_argument("--seed", type=int, default=0)
    if trials:
        p.add_argument("--trials", type=int, default=10_000)
    if precision:
        p.add_argument("--precision-bits", type=int, default=asymptotics.DEFAULT_PRECISION_BITS)
    p.add_argument("--n-max-cap", type=int, default=DEFAULT_N_MAX_CAP,
                   help="refuse sizes above this bound (default %(default)s)")
    p.add_argument("--format", choices=["json", "csv"] if fmt_csv else ["json"], default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqparts",
        description="Tuples of restricted compositions with equal numbers of parts.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("describe", help="canonical form and properties of each part set")
    _add_common(p)
    p.add_argument("--allow-zero", action="store_true")

    p = sub.add_parser("count", help="D_n: tuples with equal part counts")
    _add_common(p, n="required", m=True)
    p.add_argument("--allow-zero", action="store_true", help="admit part 0 in some coordinates")

    p = sub.add_parser("prob", help="exact probability pi_n")
    _add_common(p, n="required", m=True)

    p = sub.add_parser("dist", help="exact law of the number of parts")
    _add_common(p, n="required")

    p = sub.add_parser("decreasing", help="tuples with weakly decreasing part counts")
    _add_common(p, n="required", m=True)

    p = sub.add_parser("asym", help="certified rho, K and C_m")
    _add_common(p, n="optional", m=True, precision=True)

    p = sub.add_parser("llt", help="local-limit deviation and pairing gap")
    _add_common(p, n="required", m=True)

    p = sub.add_parser("sample", help="random compositions, exact weight-proportional law")
    _add_common(p, n="required", seed=True)
    p.add_argument("--samples", type=int, default=1)

    p = sub.add_parser("mc", help="Monte Carlo estimate of pi_n")
    _add_common(p, n="required", m=True, seed=True, trials=True)

    p = sub.add_parser("verify", help="run the oracle battery")
    _add_common(p, parts=False)

    p = sub.add_parser("table", help="exact vs asymptotic pi_n along a list of sizes")
    _add_common(p, m=True, precision=True, fmt_csv=True)
    p.add_argument("--ns", required=True, metavar="N1,N2,...",
                   help="comma-separated sizes")
    return parser


def _parse(args):
    try:
        return parse_tuple_spec(args.parts, allow_zero=getattr(args, "allow_zero", False))
    except PartSpecError as exc:
        raise UsageError("--parts", str(exc)) from None


def _tuple(args):
    sets = _parse(args)
    m = getattr(args, "m", None)
    if m is not None:
        if m < 1:
            raise UsageError("--m/--tuple-size", "must be at least 1")
        if len(sets) == 1:
            sets = sets * m
        elif len(sets) != m:
            raise UsageError("--m/--tuple-size", f"{m} does not match the {len(sets)} coordinates in --parts")
    return sets


def _single(args) -> PartSet:
    """The one part set of commands where --m counts copies of it."""
    sets = _parse(args)
    if len(sets) != 1:
        raise UsageError("--parts", "this command takes a single part set")
    return sets[0]


def _check_n(args):
    if args.n is not None and args.n < 0:
        raise UsageError("--n", "must be nonnegative")


# commands


def cmd_describe(args):
    sets = _tuple(args)
    out = []
    for ps in sets:
        out.append({
            "spec": str(ps),
            "family": ps.family.name.lower(),
            "min_part": ps.min_part,
            "max_part": ps.max_part if ps.max_part is not None else "unbounded",
            "support_gcd": ps.support_gcd,
            "weight_sum_exceeds_one": ps.weight_sum_exceeds_one,
            "supercritical": ps.is_supercritical,
            "aperiodic": ps.is_aperiodic,
            "integral_weights": ps.is_integral,
        })
    return {"parts": format_tuple_spec(sets)}, {"coordinates": out}


def cmd_count(args):
    _check_n(args)
    sets = _tuple(args)
    res = enumeration.equal_parts_count(sets, args.n, allow_zero=args.allow_zero, cap=args.n_max_cap)
    return {"parts": format_tuple_spec(sets), "n": args.n, "m": len(sets)}, {"d_n": res.d_n}


def cmd_prob(args):
    _check_n(args)
    sets = _tuple(args)
    res = enumeration.equal_parts_probability(sets, args.n, cap=args.n_max_cap)
    return ({"parts": format_tuple_spec(sets), "n": args.n, "m": len(sets)},
            {"d_n": res.d_n, "pi_n": res.pi_n})


def cmd_dist(args):
    _check_n(args)
    ps = _single(args)
    d = enumeration.parts_distribution(ps, args.n, cap=args.n_max_cap)
    return {"parts": str(ps), "n": args.n}, {"pmf": d.pmf, "mean": d.mean, "variance": d.variance}


def cmd_decreasing(args):
    _check_n(args)
    sets = _tuple(args)
    value = enumeration.decreasing_parts_count(sets, args.n, cap=args.n_max_cap)
    return {"parts": format_tuple_spec(sets), "n": args.n, "m": len(sets)}, {"count": value}


def cmd_asym(args):
    ps = _single(args)
    m = args.m or 2
    bits = args.precision_bits
    if m < 2:
        raise UsageError("--m/--tuple-size", "constants need m >= 2")
    if args.n is not None and args.n < 1:
        raise UsageError("--n", "must be positive")
    prof = asymptotics.asymptotic_profile(ps, bits)
    tup = asymptotics.constant_cm(ps, m, bits)
    outputs = {
        "rho": prof.rho,
        "mean_coeff": prof.mean_coeff,
        "K": prof.K,
        "pn_prefactor": prof.pn_prefactor,
        "C_m": tup.C_m,
        "exponent": tup.exponent,
    }
    if args.n is not None:
        outputs["pi_asymptotic"] = asymptotics.pi_asymptotic(ps, m, args.n, bits)
    return {"parts": str(ps), "m": m, "n": args.n, "precision_bits": bits}, outputs


def cmd_llt(args):
    _check_n(args)
    ps = _single(args)
    m = args.m or 2
    report = llt.llt_deviation(ps, args.n)
    outputs = {
        "mu_n": report.mu_n,
        "sigma_n": report.sigma_n,
        "deviation": report.deviation,
        "pairing_gap": report.pairing_gap,
        "degenerate": report.degenerate,
    }
    if m > 2 and not report.degenerate:
        outputs[f"pairing_gap_m{m}"] = llt.tuple_pairing_gap(ps, args.n, m)
    return {"parts": str(ps), "n": args.n, "m": m}, outputs


def cmd_sample(args):
    _check_n(args)
    ps = _single(args)
    if args.samples < 1:
        raise UsageError("--samples", "must be at least 1")
    state = sampler.SamplerState(ps, args.n, args.seed)
    draws = [sampler.sample_composition(state) for _ in range(args.samples)]
    return ({"parts": str(ps), "n": args.n, "seed": args.seed, "samples": args.samples},
            {"compositions": ["+".join(map(str, c)) for c in draws], "rng": sampler.RNG_ALGORITHM})


def cmd_mc(args):
    _check_n(args)
    sets = _tuple(args)
    if args.trials < 1:
        raise UsageError("--trials", "must be at least 1")
    res = sampler.monte_carlo_pi(sets, args.n, args.trials, args.seed)
    return ({"parts": format_tuple_spec(sets), "n": args.n, "m": len(sets),
             "seed": args.seed, "trials": args.trials},
            {"estimate": res.estimate, "standard_error": res.standard_error,
             "hits": res.hits, "rng": res.algorithm})


def cmd_verify(args):
    results = verify.run_battery()
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}", file=sys.stderr)
    checks = [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]
    failed = sum(not r.passed for r in results)
    return {}, {"checks": checks, "passed": len(results) - failed, "failed": failed}


def _parse_ns(text):
    try:
        ns = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError("--ns", f"expected comma-separated integers, got {text!r}") from None
    if not ns or min(ns) < 1:
        raise UsageError("--ns", "sizes must be positive")
    return ns


def cmd_table(args):
    ps = _single(args)
    m = args.m or 2
    if m < 2:
        raise UsageError("--m/--tuple-size", "the table needs m >= 2")
    ns = _parse_ns(args.ns)
    if max(ns) > args.n_max_cap:
        raise UsageError("--ns", f"size {max(ns)} exceeds --n-max-cap {args.n_max_cap}")
    rows = asymptotics.convergence_table(ps, m, ns, args.precision_bits)
    keys = ("n", "exact_pi_n", "asymptotic_pi_n", "ratio")
    return ({"parts": str(ps), "m": m, "ns": ns, "precision_bits": args.precision_bits},
            {"rows": [dict(zip(keys, row)) for row in rows]})


COMMANDS = {
    "describe": cmd_describe,
    "count": cmd_count,
    "prob": cmd_prob,
    "dist": cmd_dist,
    "decreasing": cmd_decreasing,
    "asym": cmd_asym,
    "llt": cmd_llt,
    "sample": cmd_sample,
    "mc": cmd_mc,
    "verify": cmd_verify,
    "table": cmd_table,
}


def _write_csv(rows, digits, stream):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "exact_pi_n", "asymptotic_pi_n", "ratio"])
    for row in rows:
        writer.writerow([encode(row[k], digits) for k in ("n", "exact_pi_n", "asymptotic_pi_n", "ratio")])
    stream.write(buf.getvalue())


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    digits = _digits(getattr(args, "precision_bits", asymptotics.DEFAULT_PRECISION_BITS))
    start = time.perf_counter()
    try:
        inputs, outputs = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=stderr)
        return 2
    except (CompositionError, ValueError, ArithmeticError) as exc:
        name = getattr(exc, "name", type(exc).__name__)
        print(f"error: {name}: {exc}", file=stderr)
        return 1
    elapsed = time.perf_counter() - start

    if args.command == "table" and args.format == "csv":
        _write_csv(outputs["rows"], digits, stdout)
    else:
        doc = {
            "command": args.command,
            "inputs": encode(inputs, digits, plain_ints=True),
            "outputs": encode(outputs, digits),
            "timing": {"seconds": round(elapsed, 6)},
        }
        json.dump(doc, stdout, indent=2)
        stdout.write("\n")
    if args.command == "verify" and outputs["failed"]:
        print(f"error: VerificationFailed: {outputs['failed']} check(s) failed", file=stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
