"""Small helpers around ``mpmath.iv`` outward-rounded intervals."""

from __future__ import annotations

import contextlib
from fractions import Fraction

from mpmath import iv
from mpmath.libmp import to_rational


@contextlib.contextmanager
def ivprec(bits: int):
    """Temporarily set the working precision of the interval context."""
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def bounds(x) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints of an interval."""
    lo, hi = x._mpi_
    return Fraction(*to_rational(lo)), Fraction(*to_rational(hi))


def width(x) -> Fraction:
    lo, hi = bounds(x)
    return hi - lo


def contains(x, q) -> bool:
    lo, hi = bounds(x)
    return lo <= Fraction(q) <= hi


def from_bounds(lo: Fraction, hi: Fraction, bits: int):
    """Interval containing ``[lo, hi]``, endpoints rounded outward."""
    lo_iv = exact(lo, bits)
    hi_iv = exact(hi, bits)
    with ivprec(bits):
        return iv.mpf([lo_iv.a, hi_iv.b])


def exact(q, bits: int):
    """Outward-rounded enclosure of a rational at ``bits`` of precision."""
    q = Fraction(q)
    with ivprec(bits):
        if q.denominator == 1:
            return iv.mpf(q.numerator)
        return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def enclose(q, precision_bits: int):
    """Interval of absolute width <= 2**-precision_bits containing ``q``."""
    q = Fraction(q)
    magnitude = max(abs(q.numerator).bit_length() - q.denominator.bit_length() + 1, 0)
    prec = precision_bits + magnitude + 8
    bound = Fraction(1, 2**precision_bits)
    while True:
        out = exact(q, prec)
        if width(out) <= bound:
            return out
        prec *= 2


def _floor_decimal(q: Fraction, digits: int) -> str:
    scale = 10**digits
    n = (q.numerator * scale) // q.denominator
    return _scaled_to_str(n, digits)


def _ceil_decimal(q: Fraction, digits: int) -> str:
    scale = 10**digits
    n = -((-q.numerator * scale) // q.denominator)
    return _scaled_to_str(n, digits)


def _scaled_to_str(n: int, digits: int) -> str:
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def format_interval(x, digits: int = 30) -> str:
    """``"[lo,hi]"`` with decimal endpoints rounded outward."""
    lo, hi = bounds(x)
    return f"[{_floor_decimal(lo, digits)},{_ceil_decimal(hi, digits)}]"


def midpoint(x):
    """Midpoint as an ``mpmath.mpf`` at the current ``mp`` precision."""
    import mpmath

    lo, hi = bounds(x)
    mid = (lo + hi) / 2
    return mpmath.mpf(mid.numerator) / mid.denominator
