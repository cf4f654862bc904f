from fractions import Fraction
from math import gcd

import mpmath
import pytest

from eqparts import intervals, oracles
from eqparts.asymptotics import (
    asymptotic_profile,
    constant_cm,
    convergence_table,
    mean_coefficient,
    mismatch_decay_rate,
    pi_asymptotic,
    pn_asymptotic,
    rho_bracket,
    solve_rho,
    variance_coefficient,
)
from eqparts.enumeration import part_count_table, parts_distribution
from eqparts.errors import NotSupercritical, Periodic, UndefinedProbability
from eqparts.partset import PartSet, p_exact, parse_part_spec, parse_tuple_spec

TOL = mpmath.mpf(10) ** -10


def ps(text):
    return parse_part_spec(text)


def mid(x):
    with mpmath.workdps(50):
        return intervals.midpoint(x)


def test_rho_golden():
    rho = solve_rho(ps("{1,2}"))
    lo, hi = intervals.bounds(rho)
    assert hi - lo <= Fraction(1, 2**128)
    with mpmath.workdps(60):
        golden = (mpmath.sqrt(5) - 1) / 2
        assert mpmath.mpf(lo.numerator) / lo.denominator <= golden <= mpmath.mpf(hi.numerator) / hi.denominator


def test_rho_unrestricted_is_exact_half():
    assert intervals.contains(solve_rho(ps("N")), Fraction(1, 2))


@pytest.mark.parametrize("a,b", [(2, 3), (1, 3), (3, 4), (2, 5), (3, 7)])
def test_rho_two_part_matches_polynomial_root(a, b):
    with mpmath.workdps(60):
        r = oracles.two_part_root(a, b)
        lo, hi = intervals.bounds(solve_rho(PartSet.finite([a, b])))
        assert mpmath.mpf(lo.numerator) / lo.denominator - TOL <= r
        assert r <= mpmath.mpf(hi.numerator) / hi.denominator + TOL


@pytest.mark.parametrize("spec", ["{1,2}", "N", "N>=2", "odd>=1", "{2,3}", "{1^1/2,2^1/2,5}", "{3,5,7}"])
def test_bracket_invariant(spec):
    s = ps(spec)
    for bits in (32, 128):
        lo, hi = rho_bracket(s, bits)
        assert 0 < lo <= hi < 1
        assert hi - lo <= Fraction(1, 2**bits)
        assert p_exact(s, lo) <= 1 <= p_exact(s, hi)
    prof = asymptotic_profile(s)
    assert intervals.contains(prof.p_at_rho, 1)


def test_variance_coefficients():
    assert intervals.contains(variance_coefficient(ps("N")), Fraction(1, 4))
    with mpmath.workdps(50):
        k = mid(variance_coefficient(ps("{1,2}")))
        assert abs(k - mpmath.mpf(5) ** -1.5) < mpmath.mpf(10) ** -35


@pytest.mark.parametrize("a", range(1, 8))
def test_two_part_variance_identity(a):
    for b in range(a + 1, 9):
        if gcd(a, b) != 1:
            continue
        prof = asymptotic_profile(PartSet.finite([a, b]))
        with intervals.ivprec(prof.precision_bits + 64):
            diff = prof.variance_numerator - (a - b) ** 2 * prof.rho ** (a + b - 1)
        assert intervals.contains(diff, 0)


def test_errors():
    with pytest.raises(Periodic):
        solve_rho(ps("{2,4}"))
    with pytest.raises(NotSupercritical):
        constant_cm(ps("{1}"), 2)
    with pytest.raises(ValueError):
        constant_cm(ps("{1,2}"), 1)


@pytest.mark.parametrize("m", range(2, 7))
def test_constant_closed_forms(m):
    with mpmath.workdps(50):
        want = (mpmath.mpf(5) ** (mpmath.mpf(3) / 4)) ** (m - 1) / mpmath.sqrt(2 ** (m - 1) * m)
        assert abs(mid(constant_cm(ps("{1,2}"), m).C_m) - want) < TOL
        want = mpmath.sqrt(mpmath.mpf(2) ** (m - 1) / m)
        assert abs(mid(constant_cm(ps("N"), m).C_m) - want) < TOL
    assert constant_cm(ps("N"), m).exponent == Fraction(m - 1, 2)


def test_unrestricted_pair_constant_is_one():
    assert intervals.contains(constant_cm(ps("N"), 2).C_m, 1)


@pytest.mark.parametrize("spec", ["{1,2}", "N", "N>=2", "odd>=1", "{2,3}", "{1^2,2^3}"])
def test_pair_constant_times_two_root_k_is_one(spec):
    s = ps(spec)
    c = constant_cm(s, 2).C_m
    with intervals.ivprec(256):
        product = c * 2 * mpmath.iv.sqrt(variance_coefficient(s))
    assert intervals.contains(product, 1)


@pytest.mark.parametrize("a,b", [(1, 2), (2, 3), (1, 3), (3, 4), (2, 5)])
def test_two_part_constant(a, b):
    with mpmath.workdps(50):
        got = mid(constant_cm(PartSet.finite([a, b]), 2).C_m)
        assert abs(got - oracles.two_part_constant(a, b)) < TOL
        assert abs(got - oracles.uncorrected_two_part_constant(a, b) / abs(a - b)) < TOL


@pytest.mark.parametrize(
    "m, n_power, value",
    [(2, 0.5, "0.9432407854"), (3, 1, "1.027340740"), (4, 1.5, "1.186814138"), (5, 2, "1.416006588")],
)
def test_pi_asymptotic_decimals(m, n_power, value):
    n = 1000
    got = pi_asymptotic(ps("{1,2}"), m, n) * mpmath.mpf(n) ** n_power
    assert abs(got - mpmath.mpf(value)) < mpmath.mpf(10) ** -9


def test_pn_asymptotic():
    table = part_count_table(ps("{1,2}"), 50)
    assert abs(pn_asymptotic(ps("{1,2}"), 50) / table.total(50) - 1) < 0.01
    n_table = part_count_table(ps("N"), 40)
    for n in (10, 40):
        assert abs(pn_asymptotic(ps("N"), n) / n_table.total(n) - 1) < mpmath.mpf(10) ** -30
    ratios = []
    with mpmath.workdps(60):
        for n in (20, 40, 80):
            t = part_count_table(ps("{1,3}"), n)
            ratios.append(abs(pn_asymptotic(ps("{1,3}"), n) / t.total(n) - 1))
    assert ratios[0] > ratios[1] > ratios[2]


@pytest.mark.parametrize("spec", ["{1,2}", "N>=2", "{2,3}"])
def test_mean_coefficient_matches_exact_slope(spec):
    s = ps(spec)
    coeff = mid(mean_coefficient(s))
    assert 0 < coeff <= 1
    errors = []
    for n in (100, 200, 400, 800):
        mu = parts_distribution(s, n).mean
        err = abs(mpmath.mpf(mu.numerator) / mu.denominator / n - coeff)
        errors.append(err * n)
    assert max(errors) < 5


def test_mismatch_decay():
    assert abs(mismatch_decay_rate(parse_tuple_spec("{1,2};{1,2}"), 300, 500) - 1) < 0.002
    assert abs(mismatch_decay_rate(parse_tuple_spec("N;N"), 300, 500) - 1) < 0.002
    with pytest.raises(UndefinedProbability):
        mismatch_decay_rate(parse_tuple_spec("{1,2};{2,3}"), 1, 5)
    with pytest.raises(Periodic):
        mismatch_decay_rate(parse_tuple_spec("{1,2};2N"), 10, 20)


@pytest.mark.parametrize("alpha,beta,spec", [(1, 2, "{1,2};{1,2^2}"), (2, 1, "{1,2};{1^2,2}"), (1, 3, "{1,2};{1,2^3}")])
def test_mismatch_rate_against_saddle_point(alpha, beta, spec):
    got = mismatch_decay_rate(parse_tuple_spec(spec), 300, 500)
    assert abs(got / oracles.golden_pair_decay_rate(alpha, beta) - 1) < 0.002


def test_convergence_table_trend():
    rows = convergence_table(ps("{1,2}"), 2, [50, 100, 200, 400])
    gaps = [abs(ratio - 1) for _, _, _, ratio in rows]
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 0.001
