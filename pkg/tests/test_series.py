import json

import pytest
from hypothesis import given, settings, strategies as st

from prefab.series import (CoeffSeries, Factor, FactorSpec, Kind, SeriesError, TruncationError,
                           coefficient, convolution_terms, convolve, distinct, expand, identity_series,
                           kcolors, odd, odd_overlined, overpartition, parse_spec, selector,
                           series_equal, uniform)


def test_expand_ordinary_partitions(brute):
    expected = [brute.colored(n, lambda k: 1) for n in range(11)]
    assert expected == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert list(expand(uniform(1, 10), 10).coeffs) == expected


def test_expand_empty_product():
    assert expand(FactorSpec.build([], "empty"), 3).coeffs == (1, 0, 0, 0)


def test_expand_kcolors(brute):
    expected = [brute.colored(n, lambda k: k) for n in range(7)]
    assert expected == [1, 1, 3, 6, 13, 24, 48]
    assert list(expand(kcolors(6), 6).coeffs) == expected


def test_expand_two_colors_is_square_of_p():
    p = [1, 1, 2, 3, 5, 7]
    square = [sum(p[m] * p[n - m] for m in range(n + 1)) for n in range(6)]
    assert square == [1, 2, 5, 10, 20, 36]
    assert list(expand(uniform(2, 5), 5).coeffs) == square


@pytest.mark.parametrize("b", [1, 2, 3])
def test_expand_uniform_matches_brute_force(brute, b):
    assert list(expand(uniform(b, 12), 12).coeffs) == [brute.colored(n, lambda k: b) for n in range(13)]


def test_expand_rejects_bad_input():
    with pytest.raises(SeriesError):
        expand(uniform(1, 3), -1)
    with pytest.raises(SeriesError):
        Factor(0, 1)
    with pytest.raises(SeriesError):
        Factor(2, -1)
    with pytest.raises(SeriesError):
        expand(uniform(1, 5), 8)  # family built only up to part 5


def test_zero_multiplicity_factor_is_identity():
    spec = FactorSpec.build([Factor(1, 1), Factor(2, 0), Factor(3, 0, Kind.DISTINCT)], "x")
    assert expand(spec, 6).coeffs == (1,) * 7


def test_factors_merge_per_part_and_kind():
    spec = FactorSpec.build([Factor(2, 1), Factor(2, 2), Factor(2, 1, Kind.DISTINCT)], "x")
    assert spec.factors == (Factor(2, 3), Factor(2, 1, Kind.DISTINCT))
    assert spec.multiplicity(2) == 3
    assert spec.multiplicity(2, Kind.DISTINCT) == 1
    assert spec.multiplicity(5) == 0


def test_odd_overlined_merges_extra_colors():
    spec = odd_overlined(2, 1, 4)
    assert spec.multiplicity(1) == 3 and spec.multiplicity(2) == 2 and spec.multiplicity(3) == 3


def test_coefficient_access():
    s = expand(uniform(1, 5), 5)
    assert coefficient(s, -3) == 0
    assert coefficient(s, 0) == 1
    assert coefficient(s, 5) == 7
    assert s[5] == 7
    with pytest.raises(TruncationError):
        coefficient(s, 6)


def test_convolve_examples():
    pbar = convolve(expand(uniform(1, 4), 4), expand(distinct(1, 4), 4))
    assert pbar.coeffs == (1, 2, 4, 8, 14)
    a = expand(kcolors(6), 6)
    assert convolve(a, identity_series(6)).coeffs == a.coeffs
    d = expand(distinct(1, 2), 2)
    assert convolve(d, d)[2] == 3


def test_convolve_truncates_to_shorter():
    out = convolve(expand(uniform(1, 8), 8), expand(distinct(1, 4), 4))
    assert out.truncation == 4


def test_table1_row_counts():
    p = expand(uniform(1, 4), 4)
    q = expand(distinct(1, 4), 4)
    assert convolution_terms(p, q, 4) == [2, 2, 2, 3, 5]


def test_series_equal():
    assert series_equal(expand(odd(1, 50), 50), expand(distinct(1, 50), 50))
    assert series_equal(expand(odd(2, 50), 50), expand(distinct(2, 50), 50))
    assert not series_equal(expand(uniform(1, 3), 3), expand(distinct(1, 3), 3))
    with pytest.raises(SeriesError):
        series_equal(expand(uniform(1, 3), 3), expand(uniform(1, 4), 4))


@pytest.mark.parametrize("b", [1, 2, 3])
def test_euler_product_identity(b):
    assert series_equal(expand(odd(b, 200), 200), expand(distinct(b, 200), 200))


@pytest.mark.parametrize("r,s", [(1, 1), (2, 1), (1, 2)])
def test_overpartition_is_convolution(r, s):
    N = 60
    conv = convolve(expand(uniform(r, N), N), expand(distinct(s, N), N))
    assert expand(overpartition(r, s, N), N).coeffs == conv.coeffs
    assert expand(odd_overlined(r, s, N), N).coeffs == conv.coeffs


def test_big_integers_are_exact():
    c = expand(uniform(3, 300), 300).coeffs
    assert c[300] > 2 ** 64
    # c_n = sum over the DP; recompute top coefficient through convolution of lower colors
    two = expand(uniform(2, 300), 300)
    one = expand(uniform(1, 300), 300)
    assert convolve(two, one)[300] == c[300]


def test_json_round_trip():
    s = expand(overpartition(1, 1, 6), 6)
    obj = json.loads(s.dumps())
    assert obj == {"label": "overpartition(1,1)", "truncation": 6,
                   "coeffs": ["1", "2", "4", "8", "14", "24", "40"]}
    assert CoeffSeries.from_json(obj).coeffs == s.coeffs


@pytest.mark.parametrize("text,label", [
    ("uniform:2", "uniform(2)"), ("kcolors", "k-colors"), ("odd:3", "odd(3)"),
    ("distinct:1", "distinct(1)"), ("overpartition:1,2", "overpartition(1,2)"),
    ("oddoverlined:2,1", "oddoverlined(2,1)"), ("uniform", "uniform(1)"),
])
def test_parse_spec(text, label):
    spec = parse_spec(text, 5)
    assert spec.label == label
    assert parse_spec(selector(spec), 5) == spec


@pytest.mark.parametrize("text", ["bogus", "uniform:a", "overpartition:1", "kcolors:2", "odd:-1"])
def test_parse_spec_rejects(text):
    with pytest.raises(SeriesError):
        parse_spec(text, 5)


factor_lists = st.lists(
    st.builds(Factor, st.integers(1, 8), st.integers(0, 3), st.sampled_from(list(Kind))),
    max_size=8,
)


@settings(max_examples=60, deadline=None)
@given(factor_lists, st.integers(0, 25), st.randoms(use_true_random=False))
def test_expand_invariants(factors, N, rnd):
    spec = FactorSpec.build(factors, "random")
    c = expand(spec, N).coeffs
    assert c[0] == 1
    assert all(x >= 0 for x in c)
    shuffled = list(factors)
    rnd.shuffle(shuffled)
    # same multiset in another order, expanded factor by factor without merging
    out = identity_series(N)
    for f in shuffled:
        out = convolve(out, expand(FactorSpec((f,), "one"), N))
    assert out.coeffs == c
