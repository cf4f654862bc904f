"""A quick battery of cross-checks between the DP engine, closed forms and constants.

Each check is small enough that the whole battery runs in a few seconds;
the exhaustive versions live in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath

from . import intervals, oracles
from .asymptotics import asymptotic_profile, constant_cm
from .enumeration import equal_parts_probability, equal_parts_sequence
from .partset import PartSet, parse_part_spec, parse_tuple_spec

__all__ = ["CheckResult", "run_battery", "CHECKS"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _seq(spec, n_max, **kw):
    return equal_parts_sequence(parse_tuple_spec(spec, **kw), n_max, **kw)


def check_domino_series():
    got = _seq("{1,2};{1,2}", 9)
    want = [1, 1, 2, 5, 11, 26, 63, 153, 376, 931]
    return got == want, f"D_0..D_9 = {got}"


def check_unrestricted_pairs():
    sets = parse_tuple_spec("N;N")
    bad = [
        n for n in range(1, 61)
        if equal_parts_probability(sets, n).pi_n != Fraction(comb(2 * n - 2, n - 1), 4 ** (n - 1))
    ]
    return not bad, f"pi_n = C(2n-2,n-1)/4^(n-1) for n <= 60; mismatches {bad}"


def check_binomial_power_sum():
    bad = []
    for m in range(1, 6):
        got = _seq(";".join(["{1,2}"] * m), 100)
        if got != [oracles.binomial_power_sum(n, m) for n in range(101)]:
            bad.append(m)
    return not bad, f"{{1,2}}, m = 1..5, n <= 100; failing m {bad}"


def check_franel():
    bad = []
    for d in (1, 2, 3):
        for m in (2, 3):
            got = _seq(";".join([f"{d}N"] * m), 40 * d)
            want = [0] * (40 * d + 1)
            want[0] = 1
            for j in range(1, 41):
                want[d * j] = oracles.franel(j - 1, m)
            if got != want:
                bad.append((d, m))
    return not bad, f"dN vs Franel, d = 1..3, m = 2,3; failing {bad}"


def check_two_n_power():
    bad = []
    for beta in (1, 2, 3):
        got = _seq(f"{{1,2^{beta}}};2N", 80)
        if [got[2 * j] for j in range(41)] != [beta**j for j in range(41)]:
            bad.append(beta)
    return not bad, f"D_2n = beta^n for ({{1,2^beta}}; 2N); failing beta {bad}"


def check_directed_animals():
    got = _seq("{1,2};N", 101)
    ok = got[0] == 1 and all(got[n + 1] == oracles.motzkin_directed_animals(n) for n in range(101))
    return ok, "D_{n+1} = Motzkin meanders M_n for ({1,2}; N), n <= 100"


def check_product_invariance():
    a = _seq("{1^2,2^3};{1^3,2^5}", 100)
    b = _seq("{1^6,2};{1,2^15}", 100)
    c = [oracles.two_part_weighted(n, 2, 1, 2, 6, 15) for n in range(101)]
    return a == b == c, "weighted two-part pairs depend only on weight products"


def check_table_rows():
    odd = _seq("odd>=1;odd>=1", 60)
    tail = _seq("N>=2;N>=2", 60)
    mixed = _seq("N;2N", 60)
    zero = _seq("N;N>=0", 40, allow_zero=True)
    delannoy = _seq("{1^2,2};{1^2,2}", 60)
    ok = (
        all(odd[n + 1] == oracles.binomial_power_sum(n, 2) for n in range(60))
        and all(tail[n + 2] == oracles.binomial_power_sum(n, 2) for n in range(59))
        and all(mixed[2 * j] == oracles.all_vs_multiples(j, 2) for j in range(31))
        and all(zero[n] == oracles.all_vs_all_with_zero(n) for n in range(41))
        and all(delannoy[n] == oracles.delannoy_partial_sum(n) for n in range(61))
    )
    return ok, "odd parts, parts >= 2, (N;2N), (N;N u {0}), Delannoy partial sums"


def check_constants():
    worst = mpmath.mpf(0)
    with mpmath.workdps(40):
        for m in range(2, 7):
            c12 = intervals.midpoint(constant_cm(parse_part_spec("{1,2}"), m).C_m)
            want12 = (mpmath.mpf(5) ** 0.75) ** (m - 1) / mpmath.sqrt(2 ** (m - 1) * m)
            cn = intervals.midpoint(constant_cm(parse_part_spec("N"), m).C_m)
            wantn = mpmath.sqrt(mpmath.mpf(2) ** (m - 1) / m)
            worst = max(worst, abs(c12 - want12), abs(cn - wantn))
    return worst < mpmath.mpf(10) ** -10, f"max |C_m - closed form| = {mpmath.nstr(worst, 5)}"


def check_two_part_constants():
    worst = mpmath.mpf(0)
    for a, b in ((1, 2), (2, 3), (1, 3), (3, 4), (2, 5)):
        c = intervals.midpoint(constant_cm(PartSet.finite([a, b]), 2).C_m)
        worst = max(worst, abs(c - oracles.two_part_constant(a, b)))
    return worst < mpmath.mpf(10) ** -10, f"max deviation {mpmath.nstr(worst, 5)}"


def check_hanna_ratio():
    worst = 0.0
    for m in range(1, 6):
        d = _seq(";".join(["{1,2}"] * m), 201)
        ratio = mpmath.mpf(d[201]) / d[200]
        limit = oracles.golden_ratio_limit(m)
        worst = max(worst, float(abs(ratio / limit - 1)))
    return worst < 0.02, f"max relative gap at n = 200: {worst:.3g}"


def check_brute_force():
    specs = ["{1,2};{1,2}", "{1^2,2};{1^2,2}", "{1,2};N", "N;N", "2N;{1,2}", "{2,3};{2,3};{2,3}"]
    bad = []
    for spec in specs:
        sets = parse_tuple_spec(spec)
        got = equal_parts_sequence(sets, 9)
        if any(got[n] != oracles.brute_force_equal_count(sets, n) for n in range(10)):
            bad.append(spec)
    return not bad, f"DP vs exhaustive enumeration, n <= 9; failing {bad}"


def check_variance_identity():
    ok = True
    for a, b in ((1, 2), (2, 3), (3, 5)):
        prof = asymptotic_profile(PartSet.finite([a, b]))
        with intervals.ivprec(prof.precision_bits + 64):
            diff = prof.variance_numerator - (a - b) ** 2 * prof.rho ** (a + b - 1)
        ok &= intervals.contains(diff, 0)
    return ok, "rho p'' + p' - rho p'^2 = (a-b)^2 rho^(a+b-1) within certified width"


CHECKS = [
    ("domino series", check_domino_series),
    ("unrestricted pair probability", check_unrestricted_pairs),
    ("binomial power sums", check_binomial_power_sum),
    ("Franel numbers", check_franel),
    ("D_2n = beta^n", check_two_n_power),
    ("directed animals", check_directed_animals),
    ("product invariance", check_product_invariance),
    ("table rows", check_table_rows),
    ("C_m closed forms", check_constants),
    ("two-part constants", check_two_part_constants),
    ("two-part variance identity", check_variance_identity),
    ("Hanna ratio", check_hanna_ratio),
    ("brute force", check_brute_force),
]


def run_battery() -> list[CheckResult]:
    results = []
    for name, check in CHECKS:
        try:
            passed, detail = check()
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), detail))
    return results
