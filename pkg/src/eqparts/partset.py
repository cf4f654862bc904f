"""Part sets: which parts a composition may use, and with what weight.

A part set is either a finite weighted list ``{1^2,2,5^1/3}`` or one of four
built-in infinite families, all of the form "every part ``start + i*step``,
weight 1":

========  ===============  =====  ====
syntax    meaning          start  step
========  ===============  =====  ====
``N``     all parts        1      1
``N>=d``  parts >= d       d      1
``dN``    multiples of d   d      d
``odd>=d``  odd parts >= d   d      2
========  ===============  =====  ====

Their generating functions ``x^start / (1 - x^step)`` are rational, so p, p'
and p'' can be evaluated exactly at rational points.  Certified intervals are
built from those exact values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterator

from .errors import DomainError, NotSupercritical, PartSpecError, Periodic
from .intervals import enclose

__all__ = [
    "Family",
    "PartSet",
    "parse_part_spec",
    "parse_tuple_spec",
    "format_tuple_spec",
    "coefficient",
    "p_exact",
    "evaluate_p",
    "tail_bound",
    "validate_for_asymptotics",
]


class Family(enum.Enum):
    FINITE = "finite"
    ALL = "all"
    TAIL = "tail"
    PROGRESSION = "progression"
    ODD_TAIL = "odd_tail"


@dataclass(frozen=True)
class PartSet:
    """An immutable, canonical part set.

    ``items`` is only used by the finite family: strictly increasing parts
    with positive rational weights.  ``d`` parametrises the infinite
    families.  Construct through :func:`parse_part_spec` or the
    classmethods; the constructor canonicalises equivalent spellings
    (``N>=1`` and ``1N`` both become ``N``).
    """

    family: Family
    items: tuple[tuple[int, Fraction], ...] = ()
    d: int = 1
    _gcd: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        fam = self.family
        if fam is Family.FINITE:
            merged: dict[int, Fraction] = {}
            for j, w in self.items:
                if j < 0:
                    raise ValueError(f"negative part {j}")
                w = Fraction(w)
                if w < 0:
                    raise ValueError(f"negative weight for part {j}")
                if w:
                    merged[j] = merged.get(j, Fraction(0)) + w
            if not merged:
                raise PartSpecError("empty part set")
            object.__setattr__(self, "items", tuple(sorted(merged.items())))
            object.__setattr__(self, "d", 1)
        else:
            if fam is Family.ALL:
                object.__setattr__(self, "d", 1)
            elif fam is Family.TAIL:
                if self.d < 0:
                    raise ValueError("tail start must be >= 0")
                if self.d == 1:
                    object.__setattr__(self, "family", Family.ALL)
            elif fam is Family.PROGRESSION:
                if self.d < 1:
                    raise ValueError("progression step must be >= 1")
                if self.d == 1:
                    object.__setattr__(self, "family", Family.ALL)
            elif fam is Family.ODD_TAIL:
                if self.d < 1 or self.d % 2 == 0:
                    raise ValueError("odd tail start must be an odd positive integer")
            object.__setattr__(self, "items", ())
        object.__setattr__(self, "_gcd", self._compute_gcd())

    # construction helpers

    @classmethod
    def finite(cls, parts) -> PartSet:
        """``parts`` is an iterable of ints or of ``(part, weight)`` pairs."""
        items = [(p, 1) if isinstance(p, int) else (p[0], p[1]) for p in parts]
        return cls(Family.FINITE, tuple((j, Fraction(w)) for j, w in items))

    @classmethod
    def all_parts(cls) -> PartSet:
        return cls(Family.ALL)

    @classmethod
    def tail(cls, d: int) -> PartSet:
        return cls(Family.TAIL, d=d)

    @classmethod
    def progression(cls, d: int) -> PartSet:
        return cls(Family.PROGRESSION, d=d)

    @classmethod
    def odd_tail(cls, d: int) -> PartSet:
        return cls(Family.ODD_TAIL, d=d)

    # structure

    @property
    def is_finite(self) -> bool:
        return self.family is Family.FINITE

    @property
    def start(self) -> int:
        """Smallest allowed part (for infinite families, the progression start)."""
        if self.is_finite:
            return self.items[0][0]
        if self.family is Family.ALL:
            return 1
        return self.d

    @property
    def step(self) -> int | None:
        if self.family in (Family.ALL, Family.TAIL):
            return 1
        if self.family is Family.PROGRESSION:
            return self.d
        if self.family is Family.ODD_TAIL:
            return 2
        return None

    @property
    def min_part(self) -> int:
        return self.start

    @property
    def max_part(self) -> int | None:
        """Largest allowed part, or None when unbounded."""
        return self.items[-1][0] if self.is_finite else None

    @property
    def has_zero(self) -> bool:
        return self.min_part == 0

    @property
    def is_integral(self) -> bool:
        return all(w.denominator == 1 for _, w in self.items)

    @property
    def support_gcd(self) -> int:
        return self._gcd

    def _compute_gcd(self) -> int:
        if self.is_finite:
            return reduce(math.gcd, (j for j, _ in self.items))
        return math.gcd(self.start, self.start + self.step)

    @property
    def weight_sum(self) -> Fraction | None:
        """Total weight, or None when the sum diverges."""
        if self.is_finite:
            return sum((w for _, w in self.items), Fraction(0))
        return None

    @property
    def weight_sum_exceeds_one(self) -> bool:
        total = self.weight_sum
        return total is None or total > 1

    @property
    def is_supercritical(self) -> bool:
        return self.weight_sum_exceeds_one

    @property
    def is_aperiodic(self) -> bool:
        return self.support_gcd == 1

    def support(self, limit: int) -> Iterator[tuple[int, Fraction]]:
        """Yield ``(part, weight)`` for every part ``<= limit``."""
        if self.is_finite:
            for j, w in self.items:
                if j > limit:
                    break
                yield j, w
        else:
            one = Fraction(1)
            for j in range(self.start, limit + 1, self.step):
                yield j, one

    def coefficient(self, j: int) -> Fraction:
        return coefficient(self, j)

    def __str__(self) -> str:
        fam = self.family
        if fam is Family.ALL:
            return "N"
        if fam is Family.TAIL:
            return f"N>={self.d}"
        if fam is Family.PROGRESSION:
            return f"{self.d}N"
        if fam is Family.ODD_TAIL:
            return f"odd>={self.d}"
        return "{" + ",".join(_format_item(j, w) for j, w in self.items) + "}"


def _format_item(j: int, w: Fraction) -> str:
    if w == 1:
        return str(j)
    if w.denominator == 1:
        return f"{j}^{w.numerator}"
    return f"{j}^{w.numerator}/{w.denominator}"


# parsing


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def error(self, message, expected=None):
        raise PartSpecError(message, self.text, self.pos, expected)

    def expect(self, literal: str):
        self.skip_ws()
        if not self.text.startswith(literal, self.pos):
            found = self.text[self.pos:self.pos + len(literal)] or "end of input"
            self.error(f"unexpected {found!r}", repr(literal))
        self.pos += len(literal)

    def accept(self, literal: str) -> bool:
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            self.pos = start
            self.error(f"unexpected {found!r}", "integer")
        return int(self.text[start:self.pos])


def _parse_partset(sc: _Scanner, allow_zero: bool) -> PartSet:
    ch = sc.peek()
    if ch == "{":
        return _parse_finite(sc, allow_zero)
    if ch == "N":
        sc.expect("N")
        if sc.accept(">="):
            sc.skip_ws()
            at = sc.pos
            d = sc.integer()
            if d == 0 and not allow_zero:
                sc.pos = at
                sc.error("part 0 is not allowed", "positive integer")
            return PartSet.tail(d)
        return PartSet.all_parts()
    if ch == "o":
        sc.expect("odd>=")
        sc.skip_ws()
        at = sc.pos
        d = sc.integer()
        if d % 2 == 0:
            sc.pos = at
            sc.error(f"odd tail start {d} is not odd", "odd positive integer")
        return PartSet.odd_tail(d)
    if ch.isdigit():
        at = sc.pos
        d = sc.integer()
        if d == 0:
            sc.pos = at
            sc.error("progression step 0", "positive integer")
        sc.expect("N")
        return PartSet.progression(d)
    sc.error(f"unexpected {ch or 'end of input'!r}", "'N', 'N>=', 'dN', 'odd>=' or '{'")


def _parse_finite(sc: _Scanner, allow_zero: bool) -> PartSet:
    sc.expect("{")
    items = []
    while True:
        sc.skip_ws()
        at = sc.pos
        j = sc.integer()
        if j == 0 and not allow_zero:
            sc.pos = at
            sc.error("part 0 is not allowed", "positive integer")
        w = Fraction(1)
        if sc.accept("^"):
            num = sc.integer()
            den = 1
            if sc.accept("/"):
                at = sc.pos
                den = sc.integer()
                if den == 0:
                    sc.pos = at
                    sc.error("zero denominator", "positive integer")
            w = Fraction(num, den)
        items.append((j, w))
        if sc.accept("}"):
            break
        sc.expect(",")
    if not any(w for _, w in items):
        raise PartSpecError("empty part set", sc.text, sc.pos)
    return PartSet(Family.FINITE, tuple(items))


def parse_part_spec(text: str, allow_zero: bool = False) -> PartSet:
    """Parse a single part-set spec such as ``"{1,2^3}"`` or ``"N>=2"``.

    ``allow_zero`` admits part 0 (``"{0,1}"``, ``"N>=0"``); only the
    equal-count enumeration accepts such sets.
    """
    sc = _Scanner(text)
    ps = _parse_partset(sc, allow_zero)
    if not sc.at_end():
        sc.error(f"trailing input {sc.text[sc.pos:]!r}", "end of input")
    return ps


def parse_tuple_spec(text: str, allow_zero: bool = False) -> list[PartSet]:
    """Parse ``partset (";" partset)*`` into a list of coordinates."""
    sc = _Scanner(text)
    sets = [_parse_partset(sc, allow_zero)]
    while sc.accept(";"):
        sets.append(_parse_partset(sc, allow_zero))
    if not sc.at_end():
        sc.error(f"trailing input {sc.text[sc.pos:]!r}", "';' or end of input")
    return sets


def format_tuple_spec(sets) -> str:
    return ";".join(str(ps) for ps in sets)


# evaluation


def coefficient(ps: PartSet, j: int) -> Fraction:
    """Exact weight of part ``j`` (zero outside the support)."""
    if ps.is_finite:
        for part, w in ps.items:
            if part == j:
                return w
        return Fraction(0)
    if j >= ps.start and (j - ps.start) % ps.step == 0:
        return Fraction(1)
    return Fraction(0)


def _check_domain(ps: PartSet, x: Fraction):
    if x < 0:
        raise DomainError(f"evaluation point {x} is negative")
    if not ps.is_finite and x >= 1:
        raise DomainError(f"evaluation point {x} outside the disk of convergence of {ps}")


def p_exact(ps: PartSet, x, order: int = 0) -> Fraction:
    """Exact value of the ``order``-th derivative of p at rational ``x``."""
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    x = Fraction(x)
    _check_domain(ps, x)
    if ps.is_finite:
        total = Fraction(0)
        for j, w in ps.items:
            if order == 0:
                total += w * x**j
            elif order == 1 and j >= 1:
                total += w * j * x ** (j - 1)
            elif order == 2 and j >= 2:
                total += w * j * (j - 1) * x ** (j - 2)
        return total
    return _progression_jet(ps.start, ps.step, x)[order]


def _progression_jet(s: int, t: int, x: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """(f, f', f'') for f(x) = x^s / (1 - x^t), via second-order Taylor jets."""

    def power(e):
        # Taylor coefficients of (x + h)^e up to h^2
        c0 = x**e
        c1 = e * x ** (e - 1) if e >= 1 else Fraction(0)
        c2 = Fraction(e * (e - 1), 2) * x ** (e - 2) if e >= 2 else Fraction(0)
        return c0, c1, c2

    a0, a1, a2 = power(s)
    t0, t1, t2 = power(t)
    b0, b1, b2 = 1 - t0, -t1, -t2
    q0 = a0 / b0
    q1 = (a1 - q0 * b1) / b0
    q2 = (a2 - q0 * b2 - q1 * b1) / b0
    return q0, q1, 2 * q2


def evaluate_p(ps: PartSet, x, order: int = 0, precision_bits: int = 128):
    """Certified interval (``mpmath.iv.mpf``) containing p^(order)(x)."""
    return enclose(p_exact(ps, x, order), precision_bits)


def tail_bound(ps: PartSet, x, J: int) -> Fraction:
    """Upper bound on ``sum_{j > J} p_j x^j``.

    Zero-or-exact for finite sets; the geometric bound
    ``x^(J+1) / (1 - x)`` for the unit-weight infinite families.
    """
    x = Fraction(x)
    _check_domain(ps, x)
    if ps.is_finite:
        return sum((w * x**j for j, w in ps.items if j > J), Fraction(0))
    return x ** (J + 1) / (1 - x)


def validate_for_asymptotics(ps: PartSet) -> None:
    """Raise unless ``ps`` is supercritical and aperiodic."""
    if ps.has_zero:
        raise NotSupercritical(f"{ps} contains part 0; P_n is infinite")
    if not ps.weight_sum_exceeds_one:
        raise NotSupercritical(
            f"{ps} is not supercritical: total weight {ps.weight_sum} <= 1"
        )
    if ps.support_gcd != 1:
        raise Periodic(f"{ps} is periodic: gcd of the support is {ps.support_gcd}")
