"""Exact counts, probabilities and asymptotic constants for tuples of
restricted integer compositions with equal numbers of parts."""

from .asymptotics import (
    AsymptoticProfile,
    TupleAsymptotics,
    asymptotic_profile,
    constant_cm,
    convergence_table,
    mean_coefficient,
    mismatch_decay_rate,
    pi_asymptotic,
    pn_asymptotic,
    solve_rho,
    variance_coefficient,
)
from .enumeration import (
    CountTable,
    EqualTupleResult,
    PartsDistribution,
    decreasing_parts_count,
    equal_parts_count,
    equal_parts_probability,
    equal_parts_sequence,
    part_count_table,
    parts_distribution,
)
from .errors import (
    CapacityExceeded,
    CompositionError,
    DegenerateVariance,
    DomainError,
    NoCompositions,
    NotSupercritical,
    PartSpecError,
    Periodic,
    UndefinedProbability,
)
from .llt import LltReport, gaussian_power_integral, llt_deviation, pairing_gap, tuple_pairing_gap
from .partset import (
    Family,
    PartSet,
    coefficient,
    evaluate_p,
    format_tuple_spec,
    parse_part_spec,
    parse_tuple_spec,
    validate_for_asymptotics,
)
from .sampler import SamplerState, monte_carlo_pi, sample_composition

__version__ = "0.1.0"
