"""Exact random generation of weighted compositions, and Monte Carlo checks.

A composition of n is drawn part by part: the first part is j with
probability ``p_j P[n-j] / P[n]``, then the rest is a composition of
``n - j``.  Selection is an exact inverse-CDF lookup with an integer draw
below the (integer-scaled) total, so there is no floating-point bias.

Randomness comes from CPython's ``random.Random`` (MT19937), whose
``randrange`` over big integers is exact and stable across releases.
"""

from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .enumeration import part_count_table
from .errors import NoCompositions
from .partset import PartSet

__all__ = ["RNG_ALGORITHM", "SamplerState", "sample_composition", "monte_carlo_pi"]

RNG_ALGORITHM = "MT19937 (CPython random.Random, randrange)"


@dataclass
class SamplerState:
    """Cumulative selection tables for one part set and size, plus a seeded RNG."""

    part_set: PartSet
    n: int
    rng_seed: int = 0
    rng: random.Random = field(init=False, repr=False)
    _cumulative: list = field(init=False, repr=False)
    _parts: list = field(init=False, repr=False)

    def __post_init__(self):
        if self.part_set.has_zero:
            raise ValueError(f"{self.part_set} contains part 0")
        totals = part_count_table(self.part_set, self.n).totals
        if not totals[self.n]:
            raise NoCompositions(f"no composition of {self.n} with parts in {self.part_set}")
        self._cumulative = [None] * (self.n + 1)
        self._parts = [None] * (self.n + 1)
        for r in range(1, self.n + 1):
            if not totals[r]:
                continue
            masses, parts = [], []
            for j, w in self.part_set.support(r):
                mass = w * Fraction(totals[r - j])
                if mass:
                    masses.append(mass)
                    parts.append(j)
            # one common denominator per size keeps every draw on integers
            den = math.lcm(*(q.denominator for q in masses))
            running, cum = 0, []
            for q in masses:
                running += q.numerator * (den // q.denominator)
                cum.append(running)
            self._cumulative[r] = cum
            self._parts[r] = parts
        self.rng = random.Random(self.rng_seed)

    def _first_part(self, remaining: int) -> int:
        cum = self._cumulative[remaining]
        u = self.rng.randrange(cum[-1])
        return self._parts[remaining][bisect.bisect_right(cum, u)]

    def draw(self) -> list[int]:
        parts = []
        remaining = self.n
        while remaining:
            j = self._first_part(remaining)
            parts.append(j)
            remaining -= j
        return parts


def sample_composition(state: SamplerState) -> list[int]:
    """Draw one composition with probability proportional to its weight."""
    return state.draw()


@dataclass(frozen=True)
class MonteCarloResult:
    estimate: float
    standard_error: float
    trials: int
    hits: int
    seed: int
    algorithm: str = RNG_ALGORITHM


def monte_carlo_pi(sets, n: int, trials: int, seed: int = 0) -> MonteCarloResult:
    """Fraction of trials in which independent draws share their number of parts.

    Coordinate i uses the sub-seed ``seed * 1_000_003 + i`` so that adding
    coordinates never changes the stream of the earlier ones.
    """
    sets = list(sets)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    states = [SamplerState(ps, n, seed * 1_000_003 + i) for i, ps in enumerate(sets)]
    hits = 0
    for _ in range(trials):
        counts = {len(s.draw()) for s in states}
        if len(counts) == 1:
            hits += 1
    estimate = hits / trials
    stderr = math.sqrt(estimate * (1 - estimate) / trials)
    return MonteCarloResult(estimate, stderr, trials, hits, seed)
