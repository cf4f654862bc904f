"""Closed-form sequences and brute-force enumerators used to cross-check the DP.

Nothing here touches the count tables of :mod:`eqparts.enumeration`; every
function is an independent route to the same numbers.

Index conventions below were pinned by exhaustive enumeration at small n;
each function documents the relation that actually holds.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from math import comb, prod

import mpmath

from .partset import PartSet

__all__ = [
    "binomial_power_sum",
    "franel",
    "two_part_weighted",
    "motzkin_numbers",
    "motzkin_directed_animals",
    "golden_ratio_power",
    "golden_ratio_limit",
    "central_delannoy",
    "delannoy_partial_sum",
    "all_vs_multiples",
    "all_vs_all_with_zero",
    "all_vs_all_with_zero_alt",
    "two_part_root",
    "two_part_constant",
    "uncorrected_two_part_constant",
    "golden_pair_decay_rate",
    "enumerate_compositions",
    "brute_force_counts",
    "brute_force_equal_count",
    "brute_force_decreasing_count",
]


def binomial_power_sum(n: int, m: int) -> int:
    """``sum_k C(n-k, k)^m``: D_n(m) for parts {1,2}."""
    if n < 0:
        return 0
    return sum(comb(n - k, k) ** m for k in range(n // 2 + 1))


def franel(n: int, m: int) -> int:
    """Franel number ``sum_k C(n, k)^m``.

    For parts in dN the equal-count sequence is ``D_0 = 1`` and
    ``D_{d j} = franel(j - 1, m)`` for ``j >= 1``.
    """
    return sum(comb(n, k) ** m for k in range(n + 1))


def two_part_weighted(n: int, m: int, a: int, b: int, alpha_prod=1, beta_prod=1):
    """D_n(m) for coordinates ``{a^alpha_i, b^beta_i}`` given the weight products.

    Each tuple shares the counts of a-parts (``n1``) and b-parts (``k``);
    terms with fractional ``n1`` vanish.
    """
    if not 1 <= a < b:
        raise ValueError("need 1 <= a < b")
    alpha_prod = Fraction(alpha_prod)
    beta_prod = Fraction(beta_prod)
    total = Fraction(0)
    for k in range(n // b + 1):
        rest = n - k * b
        if rest % a:
            continue
        n1 = rest // a
        total += comb(n1 + k, k) ** m * alpha_prod**n1 * beta_prod**k
    return total.numerator if total.denominator == 1 else total


def motzkin_numbers(count: int) -> list[int]:
    """First ``count`` Motzkin numbers (excursions) via the three-term recurrence."""
    out = []
    for n in range(count):
        if n < 2:
            out.append(1)
        else:
            out.append(((2 * n + 1) * out[n - 1] + (3 * n - 3) * out[n - 2]) // (n + 2))
    return out


def motzkin_directed_animals(n: int) -> int:
    """Motzkin meanders ``3^n - sum_k 3^(n-k-1) E_k``; equals D_{n+1} for ({1,2}; N)."""
    excursions = motzkin_numbers(n)
    return 3**n - sum(3 ** (n - k - 1) * e for k, e in enumerate(excursions))


def golden_ratio_power(m: int) -> tuple[int, int]:
    """Fibonacci and Lucas numbers ``(F_m, L_m)``; ``phi^m = (F_m sqrt5 + L_m)/2``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    f, f_next = 0, 1
    lucas, lucas_next = 2, 1
    for _ in range(m):
        f, f_next = f_next, f + f_next
        lucas, lucas_next = lucas_next, lucas + lucas_next
    return f, lucas


def golden_ratio_limit(m: int):
    f, lucas = golden_ratio_power(m)
    return (f * mpmath.sqrt(5) + lucas) / 2


def central_delannoy(n: int) -> int:
    return sum(comb(n, j) * comb(n + j, j) for j in range(n + 1))


def delannoy_partial_sum(n: int) -> int:
    """``sum_{k<=n}`` central Delannoy; D_n(2) for ``({1^2,2}; {1^2,2})``."""
    return sum(central_delannoy(k) for k in range(n + 1))


def all_vs_multiples(j: int, d: int) -> int:
    """D_{d j} for (N; dN): ``C((d+1) j - 2, j - 1)`` for j >= 1, 1 at j = 0."""
    if j == 0:
        return 1
    return comb((d + 1) * j - 2, j - 1)


def all_vs_all_with_zero(n: int) -> int:
    """D_n for (N; N u {0}): ``sum_k C(n-1, k) C(n+k, k)``."""
    if n == 0:
        return 1
    return sum(comb(n - 1, k) * comb(n + k, k) for k in range(n))


def all_vs_all_with_zero_alt(n: int) -> int:
    """Second expression for the same sequence, ``sum_k (n-k)/n C(n,k)^2 2^(n-k-1)``."""
    if n == 0:
        return 1
    total = sum(
        Fraction(n - k, n) * comb(n, k) ** 2 * 2 ** (n - k - 1) for k in range(n)
    )
    assert total.denominator == 1
    return total.numerator


# two-part constants, from an independent polynomial root


def two_part_root(a: int, b: int, dps: int = 60):
    """The root of ``z^a + z^b = 1`` in (0, 1), via mpmath.polyroots."""
    coeffs = [0] * (b + 1)
    coeffs[0] += 1  # z^b (highest degree first)
    coeffs[b - a] += 1
    coeffs[b] -= 1
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=4 * dps)
        real = [
            mpmath.re(r)
            for r in roots
            if abs(mpmath.im(r)) < mpmath.mpf(10) ** (-dps // 2) and 0 < mpmath.re(r) < 1
        ]
    if len(real) != 1:
        raise ArithmeticError(f"expected one root in (0,1) for z^{a}+z^{b}=1, got {real}")
    return +real[0]


def two_part_constant(a: int, b: int, dps: int = 60):
    """Pair constant ``(a r^a + b r^b)^(3/2) / (2 |a-b| sqrt(r^(a+b)))``."""
    with mpmath.workdps(dps):
        r = two_part_root(a, b, dps)
        return (a * r**a + b * r**b) ** 1.5 / (2 * abs(a - b) * mpmath.sqrt(r ** (a + b)))


def uncorrected_two_part_constant(a: int, b: int, dps: int = 60):
    """An older form of the two-part constant that omits the ``|a-b|`` factor."""
    with mpmath.workdps(dps):
        r = two_part_root(a, b, dps)
        num = r * (a * r ** (a - 1) + b * r ** (b - 1)) ** 2
        den = mpmath.sqrt(
            4 * (a + b) * r ** (2 * a + 2 * b - 2)
            + 2 * (1 - r ** (2 * a) - r ** (2 * b)) * (a * r ** (2 * a - 2) + b * r ** (2 * b - 2))
        )
        return num / den


def golden_pair_decay_rate(alpha=1, beta=1, dps: int = 40):
    """Exponential rate of pi_n for ({1,2}; {1^alpha, 2^beta}).

    Here ``D_n = sum_k C(n-k,k)^2 alpha^(n-2k) beta^k``; its growth is found
    at the saddle ``t = k/n`` solving ``c (1-2t)^2 = t (1-t)`` with
    ``c = sqrt(beta)/alpha``, and ``pi_n`` decays like
    ``(growth * rho_1 * rho_2)^n`` with rho_i the roots of ``p_i(z) = 1``.
    Equal to 1 exactly when both coordinates have the same mean part count.
    """
    with mpmath.workdps(dps):
        alpha, beta = mpmath.mpf(alpha), mpmath.mpf(beta)
        c = mpmath.sqrt(beta) / alpha
        a = 4 * c + 1
        t = (1 - mpmath.sqrt(1 - 4 * c / a)) / 2
        entropy = (1 - t) * mpmath.log(1 - t) - t * mpmath.log(t) - (1 - 2 * t) * mpmath.log(1 - 2 * t)
        growth = mpmath.exp(2 * entropy + (1 - 2 * t) * mpmath.log(alpha) + t * mpmath.log(beta))
        rho_1 = (mpmath.sqrt(5) - 1) / 2
        rho_2 = (mpmath.sqrt(alpha**2 + 4 * beta) - alpha) / (2 * beta)
        return +(growth * rho_1 * rho_2)


# brute force


def enumerate_compositions(ps: PartSet, n: int, max_parts: int | None = None):
    """Yield ``(parts, weight)`` for every composition of n with parts in ``ps``.

    Part 0 is admitted only when ``max_parts`` bounds the length.
    """
    if ps.has_zero and max_parts is None:
        raise ValueError("part 0 needs a max_parts bound")
    support = [(j, w) for j, w in ps.support(n)]

    def rec(remaining, prefix, weight):
        if remaining == 0:
            yield tuple(prefix), weight
        if max_parts is not None and len(prefix) >= max_parts:
            return
        for j, w in support:
            if j > remaining:
                break
            prefix.append(j)
            yield from rec(remaining - j, prefix, weight * w)
            prefix.pop()

    if ps.has_zero:
        # zeros can pad any composition; enumerate by exact length instead
        for k in range(max_parts + 1):
            for combo in itertools.product([j for j, _ in support], repeat=k):
                if sum(combo) == n:
                    yield combo, prod((ps.coefficient(j) for j in combo), start=Fraction(1))
        return
    yield from rec(n, [], Fraction(1))


def brute_force_counts(ps: PartSet, n: int, max_parts: int | None = None) -> Counter:
    """Weighted number of compositions of n with k parts, keyed by k."""
    counts: Counter = Counter()
    for parts, weight in enumerate_compositions(ps, n, max_parts):
        counts[len(parts)] += weight
    return counts


def _normalise(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def brute_force_equal_count(sets, n: int, product_limit: int = 200_000):
    """D_n by exhaustive enumeration of composition tuples.

    Tuples are listed explicitly while their number stays below
    ``product_limit``; beyond that, compositions are still enumerated one
    by one but tuples are counted per shared part count.
    """
    sets = list(sets)
    bounded = [ps for ps in sets if not ps.has_zero]
    max_parts = min((n // ps.min_part for ps in bounded), default=None)
    lists = [
        list(enumerate_compositions(ps, n, max_parts if ps.has_zero else None))
        for ps in sets
    ]
    if prod(len(lst) for lst in lists) <= product_limit:
        total = Fraction(0)
        for combo in itertools.product(*lists):
            if len({len(parts) for parts, _ in combo}) == 1:
                total += prod((w for _, w in combo), start=Fraction(1))
        return _normalise(total)
    per_k = []
    for lst in lists:
        counts: Counter = Counter()
        for parts, w in lst:
            counts[len(parts)] += w
        per_k.append(counts)
    common = set(per_k[0]).intersection(*per_k[1:])
    return _normalise(sum((prod(c[k] for c in per_k) for k in common), Fraction(0)))


def brute_force_decreasing_count(sets, n: int):
    """Weighted tuples with weakly decreasing part counts, by explicit product."""
    lists = [list(enumerate_compositions(ps, n)) for ps in sets]
    total = Fraction(0)
    for combo in itertools.product(*lists):
        ks = [len(parts) for parts, _ in combo]
        if all(x >= y for x, y in zip(ks, ks[1:])):
            total += prod((w for _, w in combo), start=Fraction(1))
    return _normalise(total)
