import json

import pytest
from hypothesis import given, settings, strategies as st

from prefab.partitions import (ColoredPart, ColoredPartition, Merge, OracleCapError, enumerate_partitions,
                               format_partition, frequency, oracle_count, oracle_fbar, oracle_gbar,
                               oracle_stat, parse_partition, part_class, parts_repeated_at_least,
                               sum_parts_divisible_by)
from prefab.series import Kind, SeriesError, distinct, expand, kcolors, odd, odd_overlined, overpartition, uniform
from prefab.stats import StatKind

D = Kind.DISTINCT

BUILTINS = [
    uniform(1, 18), uniform(2, 18), uniform(3, 18), kcolors(18), odd(1, 18), odd(2, 18),
    distinct(1, 18), distinct(2, 18), overpartition(1, 1, 18), overpartition(2, 1, 18),
    odd_overlined(1, 1, 18), odd_overlined(1, 2, 18),
]


def test_enumerate_empty():
    for spec in BUILTINS:
        assert list(enumerate_partitions(0, spec)) == [ColoredPartition()]


def test_enumerate_partitions_of_four():
    got = [format_partition(p, uniform(1, 4)) for p in enumerate_partitions(4, uniform(1, 4))]
    assert got == ["4", "3+1", "2+2", "2+1+1", "1+1+1+1"]


def test_enumerate_overpartitions_of_four():
    spec = overpartition(1, 1, 4)
    got = [format_partition(p, spec) for p in enumerate_partitions(4, spec)]
    assert len(got) == 14
    assert "2+1+1~" in got and "2+2~" in got and "3~+1~" in got


def test_enumerate_rejects_negative():
    with pytest.raises(SeriesError):
        list(enumerate_partitions(-1, uniform(1, 3)))


@pytest.mark.parametrize("spec", BUILTINS, ids=lambda s: s.label)
def test_count_weight_and_uniqueness(spec):
    h = expand(spec, 18)
    for n in range(0, 19 if spec.label not in ("uniform(3)", "oddoverlined(1,2)") else 15):
        seen = set()
        for pi in enumerate_partitions(n, spec):
            assert pi.weight == n
            assert pi.stats().weight == n
            key = format_partition(pi)
            assert key not in seen
            seen.add(key)
            for part, f in pi.entries:
                assert part.color <= spec.multiplicity(part.value, part.kind)
                if part.kind is D:
                    assert f == 1
            assert [e[0].sort_key() for e in pi.entries] == sorted(e[0].sort_key() for e in pi.entries)
        assert len(seen) == h[n]


def test_frequencies_of_sample_partition():
    pi = ColoredPartition.plain(4, 3, 3, 2, 1, 1, 1, 1)
    assert [frequency(pi, k) for k in (1, 2, 3, 4)] == [4, 1, 2, 1]
    assert frequency(ColoredPartition(), 3) == 0
    two = parse_partition("3_1+3_2+6_1+6_1+6_1+6_2")
    assert frequency(two, 3) == 2 and frequency(two, 6) == 4


def test_sum_parts_divisible_by():
    assert sum_parts_divisible_by(ColoredPartition.plain(3, 3, 6, 6, 6, 6), 3) == 9
    assert sum_parts_divisible_by(parse_partition("3_1+3_2+6_1+6_1+6_1+6_2"), 3) == 18
    assert sum_parts_divisible_by(ColoredPartition.plain(4, 2, 1), 5) == 0


def test_parts_repeated_at_least():
    over = parse_partition("3+2+2+2~+1+1~")
    assert over.weight == 11
    assert parts_repeated_at_least(over, 3, Merge.BY_VALUE) == 1
    assert [parts_repeated_at_least(over, k, Merge.BY_VALUE) for k in (1, 2, 3, 4)] == [3, 2, 1, 0]
    two = parse_partition("2_1+2_1+2_2")
    assert parts_repeated_at_least(two, 2, Merge.BY_COLORED_PART) == 1
    assert parts_repeated_at_least(two, 3, Merge.BY_VALUE) == 1
    assert parts_repeated_at_least(two, 3, Merge.BY_COLORED_PART) == 0
    pi = parse_partition("5_1+5_2+5_2+1_3")
    assert parts_repeated_at_least(pi, 1) == len(pi.entries) == 3


def test_colored_partition_validation():
    with pytest.raises(ValueError):
        ColoredPartition.of({ColoredPart(2, 1, D): 2})
    with pytest.raises(ValueError):
        ColoredPartition.of({ColoredPart(2, 0): 1})


def test_text_and_json_forms():
    spec = uniform(2, 6)
    pi = parse_partition("3_2+3_1+1_1")
    assert format_partition(pi, spec) == "3_1+3_2+1_1"
    assert format_partition(parse_partition("2+2~+1"), overpartition(1, 1, 5)) == "2+2~+1"
    assert format_partition(ColoredPartition()) == "()"
    assert json.loads(parse_partition("2+2~+1").dumps()) == [
        [2, 1, "REPEATABLE", 1], [2, 1, "DISTINCT", 1], [1, 1, "REPEATABLE", 1]]


def test_part_classes():
    spec = odd_overlined(2, 1, 5)
    assert part_class(spec, ColoredPart(3, 3)) == "odd"
    assert part_class(spec, ColoredPart(3, 2)) == "ordinary"
    assert part_class(spec, ColoredPart(2, 2)) == "ordinary"
    assert part_class(overpartition(1, 1, 5), ColoredPart(3, 1, D)) == "overlined"
    assert part_class(odd(1, 5), ColoredPart(3, 1)) == "odd"


def test_oracle_examples():
    assert oracle_stat(5, uniform(1, 5), StatKind.F_UNIFORM, 1) == 12
    assert oracle_stat(5, uniform(1, 5), StatKind.G_UNIFORM, 1) == 12
    assert oracle_stat(5, distinct(1, 5), StatKind.F_DISTINCT, 1) == 1
    assert oracle_count(4, overpartition(1, 1, 4)) == 14


def test_oracle_cap():
    with pytest.raises(OracleCapError, match="cap 20"):
        oracle_stat(21, uniform(1, 21), StatKind.F_UNIFORM, 1)
    assert oracle_stat(21, uniform(1, 21), StatKind.F_UNIFORM, 1, cap=None) == sum(
        frequency(pi, 1) for pi in enumerate_partitions(21, uniform(1, 21)))


SLOW_SPECS = [uniform(1, 10), uniform(2, 10), kcolors(10), odd(2, 10), distinct(2, 10),
              overpartition(1, 1, 10), odd_overlined(2, 1, 10)]


@pytest.mark.parametrize("spec", SLOW_SPECS, ids=lambda s: s.label)
def test_oracle_matches_per_partition_operations(spec):
    # the oracle accumulates inline; recompute each statistic by summing the public per-partition ops
    for n in range(0, 11):
        parts = list(enumerate_partitions(n, spec))
        ordinary = [ColoredPartition(tuple(e for e in pi.entries if part_class(spec, e[0]) == "ordinary"))
                    for pi in parts]
        oddc = [ColoredPartition(tuple(e for e in pi.entries if part_class(spec, e[0]) == "odd")) for pi in parts]
        over = [ColoredPartition(tuple(e for e in pi.entries if e[0].kind is D)) for pi in parts]
        for k in range(1, n + 1):
            assert oracle_stat(n, spec, StatKind.F_UNIFORM, k) == sum(frequency(p, k) for p in ordinary)
            assert oracle_stat(n, spec, StatKind.G_UNIFORM, k) == sum(
                parts_repeated_at_least(p, k, Merge.BY_COLORED_PART) for p in ordinary)
            assert oracle_stat(n, spec, StatKind.H_UNIFORM, k) == sum(sum_parts_divisible_by(p, k) for p in ordinary)
            assert oracle_stat(n, spec, StatKind.F_ODD, k) == sum(frequency(p, k) for p in oddc)
            assert oracle_stat(n, spec, StatKind.G_ODD, k) == sum(
                parts_repeated_at_least(p, k, Merge.BY_COLORED_PART) for p in oddc)
            assert oracle_stat(n, spec, StatKind.F_DISTINCT, k) == sum(frequency(p, k) for p in over)
            assert oracle_fbar(n, spec, k) == sum(frequency(p, k) for p in parts)
            assert oracle_gbar(n, spec, k) == sum(parts_repeated_at_least(p, k, Merge.BY_VALUE) for p in parts)
            assert oracle_stat(n, spec, StatKind.OBAR_M, k) == sum(1 for p in parts if frequency(p, k) >= 1)
            assert oracle_stat(n, spec, StatKind.TBAR_M, k) == sum(1 for p in parts if frequency(p, k) >= 3)
            assert oracle_stat(n, spec, StatKind.O_OVERLINED_M, k) == sum(
                1 for p in parts
                if any(e[0].value == k and e[0].kind is D for e in p.entries)
                and not any(e[0].value == k and e[0].kind is Kind.REPEATABLE for e in p.entries))


def test_oracle_against_independent_brute_force(brute):
    for n in range(0, 13):
        lams = list(brute.partitions(n))
        for k in range(1, n + 1):
            assert oracle_stat(n, uniform(1, 12), StatKind.F_UNIFORM, k) == sum(lam.count(k) for lam in lams)
            assert oracle_stat(n, uniform(1, 12), StatKind.G_UNIFORM, k) == sum(
                sum(1 for v in set(lam) if lam.count(v) >= k) for lam in lams)


partitions_st = st.lists(
    st.tuples(st.integers(1, 9), st.integers(1, 3), st.sampled_from(list(Kind)), st.integers(1, 5)),
    max_size=8,
).map(lambda rows: ColoredPartition.of(
    {ColoredPart(v, c, kd): (1 if kd is D else f) for v, c, kd, f in rows}))


@settings(max_examples=150, deadline=None)
@given(partitions_st, st.integers(1, 9))
def test_per_partition_properties(pi, k):
    stats = pi.stats()
    assert sum(v * f for v, f in stats.freq_by_value.items()) == pi.weight
    assert frequency(pi, k) == sum(f for p, f in stats.freq_by_colored_part.items() if p.value == k)
    for merge in Merge:
        assert parts_repeated_at_least(pi, k + 1, merge) <= parts_repeated_at_least(pi, k, merge)
    assert parse_partition(format_partition(pi)) == pi


@pytest.mark.parametrize("spec", BUILTINS, ids=lambda s: s.label)
def test_count_agreement_to_18(spec):
    h = expand(spec, 18)
    assert [oracle_count(n, spec) for n in range(19)] == list(h.coeffs)
