import itertools
from fractions import Fraction
from math import comb, prod

import pytest

from eqparts import oracles
from eqparts.enumeration import (
    TABLE_ROW_LIMIT,
    clear_cache,
    count_row,
    decreasing_parts_count,
    equal_parts_count,
    equal_parts_probability,
    equal_parts_sequence,
    part_count_table,
    parts_distribution,
)
from eqparts.errors import CapacityExceeded, NoCompositions, UndefinedProbability
from eqparts.partset import PartSet, parse_part_spec, parse_tuple_spec


def sets(text, **kw):
    return parse_tuple_spec(text, **kw)


def test_small_table_value():
    table = part_count_table(parse_part_spec("{1,2,3,4,10}"), 5)
    assert table.count(5, 3) == 6


def test_fibonacci_totals():
    assert part_count_table(parse_part_spec("{1,2}"), 5).totals == [1, 1, 2, 3, 5, 8]


def test_unrestricted_binomials():
    table = part_count_table(parse_part_spec("N"), 20)
    for n in range(21):
        for k in range(n + 2):
            want = 1 if n == k == 0 else (comb(n - 1, k - 1) if n >= 1 and k >= 1 else 0)
            assert table.count(n, k) == want


@pytest.mark.parametrize("spec", ["N", "N>=3", "2N", "odd>=3", "{1,2}", "{2,5^3}", "{1^1/2,3^2/3}"])
def test_table_invariants(spec):
    ps = parse_part_spec(spec)
    table = part_count_table(ps, 40)
    assert table.row(0)[0] == 1
    for n in range(41):
        row = table.row(n)
        assert len(row) == n + 1
        if n:
            assert row[0] == 0
        assert sum(row) == table.total(n)
        for k in range(1, n + 1):
            want = sum((w * table.count(n - j, k - 1) for j, w in ps.support(n)), Fraction(0))
            assert table.count(n, k) == want


def test_streamed_rows_match_table():
    clear_cache()
    ps = parse_part_spec("{1,3}")
    n = TABLE_ROW_LIMIT + 50
    table = part_count_table(ps, n)
    assert count_row(ps, n) == table.row(n)
    clear_cache()
    assert count_row(ps, n) == table.row(n)


def test_integer_arithmetic_for_integer_weights():
    row = part_count_table(parse_part_spec("{1^2,2^3}"), 30).row(30)
    assert all(type(v) is int for v in row)
    assert isinstance(equal_parts_count(sets("{1^2,2};N"), 10).d_n, int)


def test_capacity_guard():
    with pytest.raises(CapacityExceeded):
        equal_parts_count(sets("N;N"), 50, cap=40)
    with pytest.raises(CapacityExceeded):
        part_count_table(parse_part_spec("N"), 11, cap=10)


def test_domino_series():
    assert equal_parts_sequence(sets("{1,2};{1,2}"), 9) == [1, 1, 2, 5, 11, 26, 63, 153, 376, 931]


def test_weighted_pairs_series():
    assert equal_parts_sequence(sets("{1^2,2};{1^2,2}"), 3) == [1, 4, 17, 80]


def test_mixed_pair_series():
    assert equal_parts_sequence(sets("{1,2};N"), 4)[1:] == [1, 2, 5, 13]


def test_single_coordinate_is_total():
    table = part_count_table(parse_part_spec("odd>=1"), 30)
    assert equal_parts_sequence(sets("odd>=1"), 30) == table.totals


def test_probability_examples():
    assert equal_parts_probability(sets("N;N"), 3).pi_n == Fraction(3, 8)
    assert equal_parts_probability(sets("{1,2};{1,2}"), 1).pi_n == 1
    with pytest.raises(UndefinedProbability):
        equal_parts_probability(sets("2N;{1,2}"), 3)


def test_probability_rejects_part_zero():
    with pytest.raises(ValueError):
        equal_parts_probability(sets("N;N>=0", allow_zero=True), 3)


def test_part_zero_needs_flag_and_a_bounded_coordinate():
    zero = sets("N;N>=0", allow_zero=True)
    with pytest.raises(ValueError):
        equal_parts_count(zero, 3)
    with pytest.raises(ValueError):
        equal_parts_count(sets("N>=0;N>=0", allow_zero=True), 3, allow_zero=True)
    assert equal_parts_sequence(zero, 5, allow_zero=True) == [1, 1, 4, 19, 96, 501]


def test_parts_distribution_examples():
    d = parts_distribution(parse_part_spec("{1,2}"), 4)
    assert d.pmf == {2: Fraction(1, 5), 3: Fraction(3, 5), 4: Fraction(1, 5)}
    assert parts_distribution(parse_part_spec("{1,2}"), 1).pmf == {1: 1}
    with pytest.raises(NoCompositions):
        parts_distribution(parse_part_spec("2N"), 5)


@pytest.mark.parametrize("n", range(1, 16))
def test_unrestricted_distribution_is_shifted_binomial(n):
    d = parts_distribution(parse_part_spec("N"), n)
    assert d.pmf == {k + 1: Fraction(comb(n - 1, k), 2 ** (n - 1)) for k in range(n)}
    assert d.mean == Fraction(n + 1, 2)
    assert d.variance == Fraction(n - 1, 4)
    assert sum(d.pmf.values()) == 1


def test_decreasing_examples():
    assert decreasing_parts_count(sets("{1,2};{1,2}"), 3) == 7
    # pairs of compositions of 2 with k1 >= k2: (2,2), (1+1,2), (1+1,1+1)
    assert decreasing_parts_count(sets("N;N"), 2) == 3
    for n in range(8):
        assert decreasing_parts_count(sets("{1,3}"), n) == part_count_table(parse_part_spec("{1,3}"), n).total(n)


@pytest.mark.parametrize("spec", ["{1,2};{1,2}", "N;{1,2}", "{1,2};N", "{1^2,2};N>=2;{1,3}"])
def test_decreasing_vs_brute_force(spec):
    tup = sets(spec)
    for n in range(8):
        assert decreasing_parts_count(tup, n) == oracles.brute_force_decreasing_count(tup, n)


def test_permutation_invariance():
    coords = sets("{1,2};N>=2;odd>=1")
    want = equal_parts_sequence(coords, 60)
    for perm in itertools.permutations(coords):
        assert equal_parts_sequence(list(perm), 60) == want


def test_upper_bound_by_product():
    tup = sets("{1,2};{1,3};N")
    for n in range(1, 40):
        d = equal_parts_count(tup, n).d_n
        totals = [part_count_table(ps, n).total(n) for ps in tup]
        assert d <= prod(totals)
    # deterministic part count: only one composition on each side
    assert equal_parts_count(sets("{3};{3}"), 9).d_n == 1


def test_product_invariance_two_hundred_terms():
    a = equal_parts_sequence(sets("{1^2,2^3};{1^3,2^5}"), 200)
    b = equal_parts_sequence(sets("{1^6,2};{1,2^15}"), 200)
    assert a == b


@pytest.mark.parametrize("beta", [1, 2, 3])
def test_even_parts_against_two_part_set(beta):
    seq = equal_parts_sequence(sets(f"{{1^2,2^{beta}}};2N"), 200)
    assert [seq[2 * j] for j in range(101)] == [beta**j for j in range(101)]
    assert all(seq[2 * j + 1] == 0 for j in range(100))


@pytest.mark.parametrize(
    "spec",
    ["{1,2};{1,2}", "{1^2,2};{1^2,2}", "{1,2};N", "N;N", "odd>=1;odd>=1", "N>=2;N>=2", "N;2N", "2N;2N",
     "{1,2};{1,2^2}", "{1^2,2^3};{1^3,2^5}", "{1,2};{1,2};{1,2}", "{2,3};{1,4}", "{1^1/2,2^3/2};N"],
)
def test_brute_force_agreement(spec):
    tup = sets(spec)
    for n in range(11):
        assert equal_parts_count(tup, n).d_n == oracles.brute_force_equal_count(tup, n)


def test_brute_force_agreement_with_part_zero():
    tup = sets("N;N>=0", allow_zero=True)
    for n in range(9):
        assert equal_parts_count(tup, n, allow_zero=True).d_n == oracles.brute_force_equal_count(tup, n)


def test_empty_tuple_rejected():
    with pytest.raises(ValueError):
        equal_parts_count([], 3)


def test_finite_set_rational_weights():
    ps = PartSet.finite([(1, Fraction(1, 3)), (2, Fraction(5, 2))])
    total = part_count_table(ps, 5).total(5)
    assert total == sum(
        w for _, w in oracles.enumerate_compositions(ps, 5)
    )
