"""Local-limit diagnostics for the number of parts.

All moments and probabilities come from the exact distribution; only the
final comparison with the Gaussian density is done in floating point
(mpmath, 64 guard bits over double precision).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .enumeration import equal_parts_probability, parts_distribution
from .partset import PartSet

__all__ = [
    "LltReport",
    "llt_deviation",
    "pairing_gap",
    "tuple_pairing_gap",
    "gaussian_power_integral",
]

WORK_BITS = 53 + 64


@dataclass(frozen=True)
class LltReport:
    part_set: PartSet
    n: int
    mu_n: object
    sigma_n: object
    deviation: object
    pairing_gap: object
    degenerate: bool = False


def _mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _density(x):
    return mpmath.exp(-x * x / 2) / mpmath.sqrt(2 * mpmath.pi)


def _sup_abs_diff(level, a, b):
    """sup of ``|level - phi(x)|`` for x in [a, b] (b may be +inf, a -inf)."""
    candidates = []
    for x in (a, b):
        candidates.append(mpmath.mpf(0) if mpmath.isinf(x) else _density(x))
    if a <= 0 <= b:
        candidates.append(_density(mpmath.mpf(0)))
    return max(abs(level - c) for c in candidates)


def _deviation(pmf: dict, mu, sigma):
    """``sup_x |sigma Pr(X = floor(mu + x sigma)) - phi(x)|`` exactly over x.

    For each integer k the set of x with ``floor(mu + x sigma) = k`` is the
    interval ``[(k - mu)/sigma, (k + 1 - mu)/sigma)``; phi is unimodal, so
    the sup over it sits at an endpoint or at 0.  Values of k outside the
    support contribute ``phi`` alone, which is handled by the two tails and
    by zero-probability gaps inside the support.
    """
    ks = sorted(pmf)
    k_lo, k_hi = ks[0], ks[-1]
    best = mpmath.mpf(0)
    for k in range(k_lo, k_hi + 1):
        level = sigma * _mpf(pmf.get(k, Fraction(0)))
        a = (k - mu) / sigma
        b = (k + 1 - mu) / sigma
        best = max(best, _sup_abs_diff(level, a, b))
    best = max(best, _sup_abs_diff(mpmath.mpf(0), mpmath.ninf, (k_lo - mu) / sigma))
    best = max(best, _sup_abs_diff(mpmath.mpf(0), (k_hi + 1 - mu) / sigma, mpmath.inf))
    return best


def llt_deviation(ps: PartSet, n: int) -> LltReport:
    """Sup-distance between the rescaled pmf of the part count and the normal density.

    A distribution with zero variance yields a report flagged ``degenerate``
    with deviation ``phi(0)`` and pairing gap 1.
    """
    dist = parts_distribution(ps, n)
    with mpmath.workprec(WORK_BITS):
        mu = _mpf(dist.mean)
        if dist.variance == 0:
            return LltReport(ps, n, mu, mpmath.mpf(0), _density(mpmath.mpf(0)), mpmath.mpf(1), True)
        sigma = mpmath.sqrt(_mpf(dist.variance))
        deviation = _deviation(dist.pmf, mu, sigma)
    return LltReport(ps, n, mu, sigma, deviation, pairing_gap(ps, n))


def tuple_pairing_gap(ps: PartSet, n: int, m: int = 2):
    """``|pi_n(m) sqrt(m) (sqrt(2 pi) sigma_n)^(m-1) - 1|`` for m copies of ``ps``."""
    if m < 2:
        raise ValueError("m must be at least 2")
    dist = parts_distribution(ps, n)
    pi_n = equal_parts_probability([ps] * m, n).pi_n
    with mpmath.workprec(WORK_BITS):
        sigma = mpmath.sqrt(_mpf(dist.variance))
        scaled = _mpf(pi_n) * mpmath.sqrt(m) * (mpmath.sqrt(2 * mpmath.pi) * sigma) ** (m - 1)
        return abs(scaled - 1)


def pairing_gap(ps: PartSet, n: int):
    """``|pi_n 2 sqrt(pi) sigma_n - 1|`` for two independent compositions."""
    return tuple_pairing_gap(ps, n, 2)


def gaussian_power_integral(m: int):
    """``integral of phi^m`` over the line: ``1 / (sqrt((2 pi)^(m-1)) sqrt(m))``."""
    if m < 1:
        raise ValueError("m must be positive")
    with mpmath.workprec(WORK_BITS):
        return 1 / (mpmath.sqrt((2 * mpmath.pi) ** (m - 1)) * mpmath.sqrt(m))
