"""Certified asymptotic constants for supercritical, aperiodic part sets.

The root ``rho`` of ``p(rho) = 1`` is bracketed by bisection on dyadic
rationals with exact evaluation of p, so the bracket is correct by
construction.  Because p' and p'' have nonnegative coefficients they are
increasing on ``[0, 1)``; their values over the bracket are therefore
enclosed by their exact values at the two endpoints, and every derived
constant is computed in outward-rounded interval arithmetic from there.

Constants follow the explicit parenthesised formula

    C_m = (2^(m-1) m)^(-1/2) * (rho^2 p'^3 / (rho p'' + p' - rho p'^2))^((m-1)/2)

whose parenthesised factor is ``1/K`` with ``K`` the variance slope.
For unrestricted compositions this gives ``C_2 = 1``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import iv

from . import intervals
from .enumeration import equal_parts_probability
from .errors import UndefinedProbability
from .intervals import ivprec
from .partset import PartSet, p_exact, validate_for_asymptotics

__all__ = [
    "DEFAULT_PRECISION_BITS",
    "AsymptoticProfile",
    "TupleAsymptotics",
    "rho_bracket",
    "solve_rho",
    "asymptotic_profile",
    "variance_coefficient",
    "mean_coefficient",
    "constant_cm",
    "pi_asymptotic",
    "pn_asymptotic",
    "mismatch_decay_rate",
    "convergence_table",
]

DEFAULT_PRECISION_BITS = 128
GUARD_BITS = 64


@dataclass(frozen=True)
class AsymptoticProfile:
    part_set: PartSet
    precision_bits: int
    rho_lo: Fraction
    rho_hi: Fraction
    rho: object
    p_at_rho: object
    dp_at_rho: object
    d2p_at_rho: object
    mean_coeff: object
    K: object
    pn_prefactor: object
    variance_numerator: object


@dataclass(frozen=True)
class TupleAsymptotics:
    m: int
    C_m: object
    exponent: Fraction


def _upper_start(ps: PartSet) -> Fraction:
    if ps.is_finite:
        return Fraction(1)
    k = 1
    while True:
        x = 1 - Fraction(1, 2**k)
        if p_exact(ps, x) > 1:
            return x
        k += 1


@functools.lru_cache(maxsize=128)
def rho_bracket(ps: PartSet, precision_bits: int = DEFAULT_PRECISION_BITS):
    """Dyadic ``(lo, hi)`` with ``p(lo) <= 1 <= p(hi)`` and ``hi - lo <= 2^-bits``."""
    validate_for_asymptotics(ps)
    lo, hi = Fraction(0), _upper_start(ps)
    tol = Fraction(1, 2**precision_bits)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        value = p_exact(ps, mid)
        if value < 1:
            lo = mid
        elif value > 1:
            hi = mid
        else:
            return mid, mid
    return lo, hi


def solve_rho(ps: PartSet, precision_bits: int = DEFAULT_PRECISION_BITS):
    """Certified interval of width <= 2^-precision_bits containing rho."""
    lo, hi = rho_bracket(ps, precision_bits)
    return intervals.from_bounds(lo, hi, precision_bits + GUARD_BITS)


@functools.lru_cache(maxsize=128)
def asymptotic_profile(ps: PartSet, precision_bits: int = DEFAULT_PRECISION_BITS) -> AsymptoticProfile:
    lo, hi = rho_bracket(ps, precision_bits)
    work = precision_bits + GUARD_BITS

    def over_bracket(order):
        return intervals.from_bounds(p_exact(ps, lo, order), p_exact(ps, hi, order), work)

    rho = intervals.from_bounds(lo, hi, work)
    p0, p1, p2 = over_bracket(0), over_bracket(1), over_bracket(2)
    with ivprec(work):
        rp = rho * p1
        mean = 1 / rp
        numerator = rho * p2 + p1 - rho * p1**2
        K = numerator / (rho**2 * p1**3)
    return AsymptoticProfile(
        part_set=ps,
        precision_bits=precision_bits,
        rho_lo=lo,
        rho_hi=hi,
        rho=rho,
        p_at_rho=p0,
        dp_at_rho=p1,
        d2p_at_rho=p2,
        mean_coeff=mean,
        K=K,
        pn_prefactor=mean,
        variance_numerator=numerator,
    )


def variance_coefficient(ps: PartSet, precision_bits: int = DEFAULT_PRECISION_BITS):
    """Certified K with ``var(X_n) = K n + O(1)``."""
    return asymptotic_profile(ps, precision_bits).K


def mean_coefficient(ps: PartSet, precision_bits: int = DEFAULT_PRECISION_BITS):
    """Certified ``1/(rho p'(rho))`` with ``E X_n = n/(rho p'(rho)) + O(1)``."""
    return asymptotic_profile(ps, precision_bits).mean_coeff


def _overlap(a, b) -> bool:
    alo, ahi = intervals.bounds(a)
    blo, bhi = intervals.bounds(b)
    return max(alo, blo) <= min(ahi, bhi)


def constant_cm(ps: PartSet, m: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> TupleAsymptotics:
    """Certified C_m in ``pi_n ~ C_m / (pi n)^((m-1)/2)``."""
    if m < 2:
        raise ValueError("C_m is defined for m >= 2")
    prof = asymptotic_profile(ps, precision_bits)
    rho, p1 = prof.rho, prof.dp_at_rho
    e = m - 1
    with ivprec(precision_bits + GUARD_BITS):
        norm = iv.sqrt(iv.mpf(2**e * m))
        ratio = rho**2 * p1**3 / prof.variance_numerator
        powered = ratio ** (e // 2)
        if e % 2:
            powered = powered * iv.sqrt(ratio)
        c_m = powered / norm
        via_k = (1 / iv.sqrt(prof.K)) ** e / norm
    if not _overlap(c_m, via_k):
        raise ArithmeticError(f"C_{m} enclosures disagree: {c_m} vs {via_k}")
    return TupleAsymptotics(m, c_m, Fraction(e, 2))


def pi_asymptotic(ps: PartSet, m: int, n: int, precision_bits: int = DEFAULT_PRECISION_BITS):
    """First-order approximation ``C_m / (pi n)^((m-1)/2)``."""
    if n < 1:
        raise ValueError("n must be positive")
    c_m = constant_cm(ps, m, precision_bits).C_m
    with mpmath.workprec(precision_bits):
        return intervals.midpoint(c_m) / (mpmath.pi * n) ** (mpmath.mpf(m - 1) / 2)


def pn_asymptotic(ps: PartSet, n: int, precision_bits: int = DEFAULT_PRECISION_BITS):
    """First-order approximation ``rho^-n / (rho p'(rho))`` of P_n."""
    prof = asymptotic_profile(ps, precision_bits)
    with mpmath.workprec(precision_bits):
        return intervals.midpoint(prof.pn_prefactor) * intervals.midpoint(prof.rho) ** (-n)


def _log_fraction(q: Fraction):
    return mpmath.log(mpmath.mpf(q.numerator)) - mpmath.log(mpmath.mpf(q.denominator))


def mismatch_decay_rate(sets, n_lo: int, n_hi: int, precision_bits: int = DEFAULT_PRECISION_BITS):
    """Empirical per-step ratio ``(pi_{n_hi} / pi_{n_lo})^(1/(n_hi - n_lo))``.

    Close to 1 when the coordinates have equal mean part counts, and
    exponentially below 1 otherwise.
    """
    if n_hi <= n_lo:
        raise ValueError("need n_lo < n_hi")
    for ps in sets:
        validate_for_asymptotics(ps)
    pi_lo = equal_parts_probability(sets, n_lo).pi_n
    pi_hi = equal_parts_probability(sets, n_hi).pi_n
    if not pi_lo or not pi_hi:
        raise UndefinedProbability("zero probability on the range; log-rate undefined")
    with mpmath.workprec(precision_bits):
        return mpmath.exp((_log_fraction(pi_hi) - _log_fraction(pi_lo)) / (n_hi - n_lo))


def convergence_table(ps: PartSet, m: int, ns, precision_bits: int = DEFAULT_PRECISION_BITS):
    """Rows ``(n, exact pi_n, asymptotic pi_n, exact/asymptotic)``."""
    rows = []
    for n in ns:
        exact = equal_parts_probability([ps] * m, n).pi_n
        approx = pi_asymptotic(ps, m, n, precision_bits)
        with mpmath.workprec(precision_bits):
            ratio = mpmath.mpf(exact.numerator) / exact.denominator / approx
        rows.append((n, exact, approx, ratio))
    return rows
