"""Exact counts of restricted compositions by size and number of parts.

The table ``P[n][k]`` (weighted number of compositions of n with k parts) is
built row by row from ``P[n][k] = sum_j p_j P[n-j][k-1]``.  For the infinite
families the inner sum runs over an arithmetic progression of parts and is
replaced by a strided running sum ``T[n] = P[n] + T[n-step]``, so that
``P[n][k] = T[n-start][k-1]`` costs one addition per entry.

Rows are stored compactly as ``(lo, values)`` covering only the nonzero
window of k; for ``{1,2}`` that is ``ceil(n/2) <= k <= n``.  Arithmetic is
on Python ints when every weight is integral, on Fractions otherwise.
"""

from __future__ import annotations

import functools
from collections import OrderedDict, deque
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .errors import CapacityExceeded, NoCompositions, UndefinedProbability
from .partset import PartSet

__all__ = [
    "DEFAULT_N_MAX_CAP",
    "CountTable",
    "PartsDistribution",
    "EqualTupleResult",
    "part_count_table",
    "count_row",
    "equal_parts_count",
    "equal_parts_sequence",
    "equal_parts_probability",
    "parts_distribution",
    "decreasing_parts_count",
    "clear_cache",
]

DEFAULT_N_MAX_CAP = 10000

# single rows beyond this size are streamed instead of tabulated
TABLE_ROW_LIMIT = 1200

_EMPTY = (0, [])


def _weight(w: Fraction):
    return w.numerator if w.denominator == 1 else w


def _trim(lo: int, vals: list) -> tuple[int, list]:
    start = 0
    end = len(vals)
    while start < end and not vals[start]:
        start += 1
    while end > start and not vals[end - 1]:
        end -= 1
    if start == end:
        return _EMPTY
    if start or end != len(vals):
        vals = vals[start:end]
    return lo + start, vals


def _shift_sum(terms, k_cap):
    """Sum of ``w * row`` with every row shifted up by one part.

    ``terms`` holds ``(w, (lo, vals))``.  Entries beyond ``k_cap`` are
    dropped.
    """
    terms = [(w, r) for w, r in terms if r[1]]
    if not terms:
        return _EMPTY
    lo = min(r[0] for _, r in terms) + 1
    hi = max(r[0] + len(r[1]) for _, r in terms)
    if k_cap is not None:
        hi = min(hi, k_cap)
    if hi < lo:
        return _EMPTY
    size = hi - lo + 1
    acc = [0] * size
    for w, (rlo, vals) in terms:
        off = rlo + 1 - lo
        count = min(len(vals), size - off)
        if count <= 0:
            continue
        seg = acc[off:off + count]
        if w == 1:
            acc[off:off + count] = [a + b for a, b in zip(seg, vals)]
        else:
            acc[off:off + count] = [a + w * b for a, b in zip(seg, vals)]
    return _trim(lo, acc)


def _add(r1, r2):
    if not r1[1]:
        return r2
    if not r2[1]:
        return r1
    lo = min(r1[0], r2[0])
    hi = max(r1[0] + len(r1[1]), r2[0] + len(r2[1]))
    acc = [0] * (hi - lo)
    for rlo, vals in (r1, r2):
        off = rlo - lo
        seg = acc[off:off + len(vals)]
        acc[off:off + len(vals)] = [a + b for a, b in zip(seg, vals)]
    return lo, acc


class _RowBuilder:
    """Produces rows P[0], P[1], ... of one part set.

    With ``keep_all`` every row is retained (table mode); otherwise only the
    window the recurrence needs is kept (streaming mode).
    """

    def __init__(self, ps: PartSet, k_cap: int | None, keep_all: bool):
        self.ps = ps
        self.k_cap = k_cap
        self.keep_all = keep_all
        self.n = 0
        self.zero_weight = _weight(ps.coefficient(0)) if ps.has_zero else 0
        if ps.is_finite:
            self.parts = [(j, _weight(w)) for j, w in ps.items if j >= 1]
            window = max([j for j, _ in self.parts], default=1)
            self.start = self.step = None
        else:
            self.parts = None
            self.start = max(ps.start, 1)
            self.step = ps.step
            window = max(self.start, self.step)
        self.rows = [] if keep_all else deque(maxlen=window)
        self.tsums = deque(maxlen=window) if self.parts is None else None

    def _back(self, j: int):
        """Row n - j (zero row if out of range)."""
        if j > self.n:
            return _EMPTY
        if self.keep_all:
            return self.rows[self.n - j]
        return self.rows[-j]

    def advance(self):
        n = self.n
        if self.parts is not None:
            positive = _shift_sum(
                [(w, self._back(j)) for j, w in self.parts if j <= n], self.k_cap
            )
        else:
            s = self.start
            below = self.tsums[-s] if n >= s else _EMPTY
            positive = _shift_sum([(1, below)], self.k_cap)
        row = self._close(n, positive)
        if self.tsums is not None:
            t = self.step
            prior = self.tsums[-t] if n >= t else _EMPTY
            self.tsums.append(_add(row, prior))
        self.rows.append(row)
        self.n += 1
        return row

    def _close(self, n, positive):
        w0 = self.zero_weight
        if not w0:
            return (0, [1]) if n == 0 else positive
        # part 0: P[n][k] = positive[k] + w0 * P[n][k-1], truncated at k_cap
        cap = self.k_cap
        full = [0] * (cap + 1)
        lo, vals = positive
        full[lo:lo + len(vals)] = vals
        full[0] = 1 if n == 0 else 0
        for k in range(1, cap + 1):
            full[k] += w0 * full[k - 1]
        return _trim(0, full)

    def extend(self, n_max: int):
        while self.n <= n_max:
            self.advance()


_BUILDERS: OrderedDict = OrderedDict()
_BUILDER_CACHE_SIZE = 16


def clear_cache():
    _BUILDERS.clear()
    _streamed_row.cache_clear()


def _check_capacity(n: int, cap: int):
    if n < 0:
        raise ValueError(f"size must be nonnegative, got {n}")
    if n > cap:
        raise CapacityExceeded(f"n = {n} exceeds the capacity limit {cap}")


def _check_zero(ps: PartSet, k_cap):
    if ps.has_zero and k_cap is None:
        raise ValueError(f"{ps} contains part 0; a k_cap is required")
    return k_cap if ps.has_zero else None


def _table_builder(ps: PartSet, k_cap, n_max: int) -> _RowBuilder:
    key = (ps, k_cap)
    builder = _BUILDERS.get(key)
    if builder is None:
        builder = _RowBuilder(ps, k_cap, keep_all=True)
        _BUILDERS[key] = builder
        if len(_BUILDERS) > _BUILDER_CACHE_SIZE:
            _BUILDERS.popitem(last=False)
    else:
        _BUILDERS.move_to_end(key)
    builder.extend(n_max)
    return builder


@functools.lru_cache(maxsize=8)
def _streamed_row(ps: PartSet, n: int, k_cap):
    builder = _RowBuilder(ps, k_cap, keep_all=False)
    row = _EMPTY
    for _ in range(n + 1):
        row = builder.advance()
    return row


def _compact_row(ps: PartSet, n: int, k_cap=None):
    k_cap = _check_zero(ps, k_cap)
    cached = _BUILDERS.get((ps, k_cap))
    if cached is not None and cached.n > n:
        return cached.rows[n]
    if n <= TABLE_ROW_LIMIT:
        return _table_builder(ps, k_cap, n).rows[n]
    return _streamed_row(ps, n, k_cap)


def _expand(row, length: int) -> list:
    lo, vals = row
    out = [0] * length
    hi = min(lo + len(vals), length)
    if hi > lo:
        out[lo:hi] = vals[: hi - lo]
    return out


@dataclass(frozen=True)
class CountTable:
    """Exact ``P[n][k]`` for ``n <= n_max``.

    ``row(n)`` has entries for ``k = 0..n`` (``0..k_cap`` for part sets
    containing 0).
    """

    part_set: PartSet
    n_max: int
    k_cap: int | None
    _rows: tuple

    def row(self, n: int) -> list:
        length = (self.k_cap if self.k_cap is not None else n) + 1
        return _expand(self._rows[n], length)

    @property
    def rows(self) -> list[list]:
        return [self.row(n) for n in range(self.n_max + 1)]

    def count(self, n: int, k: int):
        lo, vals = self._rows[n]
        if lo <= k < lo + len(vals):
            return vals[k - lo]
        return 0

    def total(self, n: int):
        return sum(self._rows[n][1])

    @property
    def totals(self) -> list:
        return [sum(vals) for _, vals in self._rows]

    def k_range(self, n: int) -> tuple[int, int] | None:
        """Smallest and largest k with ``P[n][k] != 0``."""
        lo, vals = self._rows[n]
        return (lo, lo + len(vals) - 1) if vals else None


def part_count_table(
    ps: PartSet, n_max: int, cap: int = DEFAULT_N_MAX_CAP, k_cap: int | None = None
) -> CountTable:
    """Exact count table of ``ps`` up to size ``n_max`` (memoised per part set)."""
    _check_capacity(n_max, cap)
    k_cap = _check_zero(ps, k_cap)
    builder = _table_builder(ps, k_cap, n_max)
    return CountTable(ps, n_max, k_cap, tuple(builder.rows[: n_max + 1]))


def count_row(ps: PartSet, n: int, cap: int = DEFAULT_N_MAX_CAP) -> list:
    """``[P[n][0], ..., P[n][n]]`` without materialising the full table for large n."""
    _check_capacity(n, cap)
    return _expand(_compact_row(ps, n), n + 1)


@dataclass(frozen=True)
class PartsDistribution:
    n: int
    pmf: dict
    mean: Fraction
    variance: Fraction


@dataclass(frozen=True)
class EqualTupleResult:
    tuple: tuple
    n: int
    d_n: int | Fraction
    pi_n: Fraction | None = None

    @property
    def m(self) -> int:
        return len(self.tuple)


def _zero_caps(sets, n_of_max: int, allow_zero: bool):
    """k_cap for coordinates containing part 0 (bounded by the other coordinates)."""
    zero = [ps.has_zero for ps in sets]
    if not any(zero):
        return None
    if not allow_zero:
        raise ValueError("part 0 is only accepted with allow_zero=True")
    bounded = [ps for ps in sets if not ps.has_zero]
    if not bounded:
        raise ValueError("every coordinate contains part 0; the count is infinite")
    return min(n_of_max // ps.min_part for ps in bounded)


def _diagonal(rows) -> int | Fraction:
    lo = max(r[0] for r in rows)
    hi = min(r[0] + len(r[1]) for r in rows)
    total = 0
    for k in range(lo, hi):
        total += prod(vals[k - rlo] for rlo, vals in rows)
    return total


def _as_tuple(sets) -> tuple:
    sets = tuple(sets)
    if not sets:
        raise ValueError("a tuple needs at least one part set")
    return sets


def equal_parts_count(
    sets, n: int, allow_zero: bool = False, cap: int = DEFAULT_N_MAX_CAP
) -> EqualTupleResult:
    """Weighted number of tuples of compositions of n sharing their number of parts.

    Computed as the k-diagonal ``sum_k prod_i P_i[n][k]``.
    """
    sets = _as_tuple(sets)
    _check_capacity(n, cap)
    k_cap = _zero_caps(sets, n, allow_zero)
    rows = [_compact_row(ps, n, k_cap) for ps in sets]
    return EqualTupleResult(sets, n, _diagonal(rows))


def equal_parts_sequence(
    sets, n_max: int, allow_zero: bool = False, cap: int = DEFAULT_N_MAX_CAP
) -> list:
    """``[D_0, ..., D_{n_max}]`` from shared count tables."""
    sets = _as_tuple(sets)
    _check_capacity(n_max, cap)
    k_cap = _zero_caps(sets, n_max, allow_zero)
    tables = [part_count_table(ps, n_max, cap, k_cap) for ps in sets]
    return [_diagonal([t._rows[n] for t in tables]) for n in range(n_max + 1)]


def equal_parts_probability(
    sets, n: int, cap: int = DEFAULT_N_MAX_CAP
) -> EqualTupleResult:
    """Exact probability that independent uniform compositions share their part count."""
    sets = _as_tuple(sets)
    for ps in sets:
        if ps.has_zero:
            raise ValueError(f"{ps} contains part 0; P_n is infinite")
    _check_capacity(n, cap)
    rows = [_compact_row(ps, n) for ps in sets]
    totals = [sum(vals) for _, vals in rows]
    for ps, total in zip(sets, totals):
        if not total:
            raise UndefinedProbability(f"no composition of {n} with parts in {ps}")
    d_n = _diagonal(rows)
    return EqualTupleResult(sets, n, d_n, Fraction(d_n) / prod(totals))


def parts_distribution(ps: PartSet, n: int, cap: int = DEFAULT_N_MAX_CAP) -> PartsDistribution:
    """Exact law of the number of parts of a random composition of n."""
    if ps.has_zero:
        raise ValueError(f"{ps} contains part 0; P_n is infinite")
    _check_capacity(n, cap)
    lo, vals = _compact_row(ps, n)
    total = sum(vals)
    if not total:
        raise NoCompositions(f"no composition of {n} with parts in {ps}")
    pmf = {lo + i: Fraction(v) / total for i, v in enumerate(vals) if v}
    mean = sum((k * p for k, p in pmf.items()), Fraction(0))
    second = sum((k * k * p for k, p in pmf.items()), Fraction(0))
    return PartsDistribution(n, pmf, mean, second - mean * mean)


def decreasing_parts_count(sets, n: int, cap: int = DEFAULT_N_MAX_CAP):
    """Weighted tuples whose part counts satisfy ``k_1 >= k_2 >= ... >= k_m``."""
    sets = _as_tuple(sets)
    for ps in sets:
        if ps.has_zero:
            raise ValueError(f"{ps} contains part 0")
    _check_capacity(n, cap)
    rows = [_expand(_compact_row(ps, n), n + 1) for ps in sets]
    # below[k] = weighted count of the trailing coordinates with k_{i+1} <= k
    below = [1] * (n + 1)
    for row in reversed(rows):
        running = 0
        nxt = [0] * (n + 1)
        for k in range(n + 1):
            running += row[k] * below[k]
            nxt[k] = running
        below = nxt
    return below[n]
