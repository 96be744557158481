from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nipdef.approx import (
    ApproximationNotFound,
    Measure,
    Multiset,
    SearchTooLarge,
    approx_error,
    brute_force_error,
    deviations,
    find_approximation,
    min_approximation_size,
)
from nipdef.setsystem import SetSystem, complement

import oracles
from test_setsystem import intervals, powerset, systems, thresholds


@st.composite
def measures(draw, n):
    raw = draw(st.lists(st.integers(0, 6), min_size=n, max_size=n).filter(any))
    total = sum(raw)
    return Measure(tuple(F(x, total) for x in raw))


# types


def test_measure_validation():
    with pytest.raises(ValueError):
        Measure((F(1, 2), F(1, 3)))
    with pytest.raises(ValueError):
        Measure((F(3, 2), F(-1, 2)))
    mu = Measure.from_strings(["1/3", "2/3"])
    assert mu.to_strings() == ["1/3", "2/3"] and mu.support == (0, 1)


def test_multiset_merges_and_rejects_empty():
    Y = Multiset(((2, 1), (0, 1), (2, 2)))
    assert Y.counts == ((0, 1), (2, 3)) and Y.size == 4 and Y.elements() == [0, 2, 2, 2]
    with pytest.raises(ValueError):
        Multiset(())
    with pytest.raises(ValueError):
        Multiset(((0, 0),))


# approx_error


def test_error_examples():
    S = intervals(5)
    assert approx_error(S, Measure.uniform(5), Multiset.from_indices(range(5))) == 0
    one = SetSystem.from_rows([(1, 1, 1)])
    mu = Measure((F(1, 6), F(1, 2), F(1, 3)))
    assert approx_error(one, mu, Multiset.from_indices([2, 2, 0])) == 0


def test_error_thresholds_against_oracle():
    S = thresholds(4)
    mu = Measure.uniform(4)
    Y = Multiset.from_indices([1, 3])
    got = approx_error(S, mu, Y)
    assert got == oracles.error(S.rows, mu.weights, [1, 3])
    assert got == brute_force_error(S, mu, [1, 3])
    assert got == F(1, 4)


def test_error_rejects_mismatched_input():
    with pytest.raises(ValueError):
        approx_error(thresholds(4), Measure.uniform(3), Multiset.from_indices([0]))
    with pytest.raises(IndexError):
        approx_error(thresholds(4), Measure.uniform(4), Multiset.from_indices([9]))


# find_approximation


def test_eps_one_gives_a_single_point():
    Y = find_approximation(intervals(5), Measure.uniform(5), 1, 8)
    assert Y.size == 1


def test_eps_zero_on_empty_and_full():
    S = SetSystem.from_rows([(0, 0, 0), (1, 1, 1)])
    mu = Measure.uniform(3)
    uniform = Multiset.from_indices(range(3))
    assert approx_error(S, mu, uniform) == 0
    # the search returns the first multiset it finds; any single point is already exact here
    Y = find_approximation(S, mu, 0, 3)
    assert approx_error(S, mu, Y) == 0 and Y.size == 1


def test_intervals_one_third():
    S = intervals(6)
    mu = Measure.uniform(6)
    Y = find_approximation(S, mu, F(1, 3), 6)
    assert Y.size <= 6 and approx_error(S, mu, Y) <= F(1, 3)
    # exhaustive search returns a minimum; the independent oracle agrees
    assert Y.size == oracles.min_approx_size(S.rows, mu.weights, F(1, 3)) == 2


def test_sampling_path_is_seeded_and_verified():
    S = intervals(12)
    mu = Measure.uniform(12)
    a = find_approximation(S, mu, F(1, 5), 64, seed=3, cutoff=0)
    b = find_approximation(S, mu, F(1, 5), 64, seed=3, cutoff=0)
    assert a == b
    assert approx_error(S, mu, a) <= F(1, 5)


def test_not_found_and_bad_arguments():
    S = powerset(3)
    mu = Measure.uniform(3)
    with pytest.raises(ApproximationNotFound):
        find_approximation(S, mu, 0, 2)
    with pytest.raises(ValueError):
        find_approximation(S, mu, F(3, 2), 2)
    with pytest.raises(ValueError):
        find_approximation(S, mu, F(1, 2), 0)


# min_approximation_size


def test_min_size_examples():
    assert min_approximation_size(powerset(3), Measure.uniform(3), 1) == 1
    assert min_approximation_size(powerset(3), Measure.uniform(3), F(1, 6)) == 3


@pytest.mark.parametrize(
    "mu, row, expected",
    [
        ((F(1, 3), F(2, 3)), (1, 0), 3),
        ((F(2, 5), F(1, 5), F(2, 5)), (1, 0, 1), 5),
        ((F(1, 6), F(1, 2), F(1, 3)), (1, 0, 1), 2),
        ((F(1, 6), F(1, 2), F(1, 3)), (1, 1, 0), 3),
    ],
)
def test_min_size_single_row_exact(mu, row, expected):
    S = SetSystem.from_rows([row])
    got = min_approximation_size(S, Measure(mu), 0)
    assert got == expected == oracles.min_approx_size([row], mu, 0)
    assert got % oracles.measure_of(mu, row).denominator == 0


def test_min_size_refuses_large_search():
    with pytest.raises(SearchTooLarge):
        min_approximation_size(powerset(3), Measure.uniform(3), 0, cutoff=5)


def test_thresholds_need_bounded_size():
    # fixed eps, growing universe: the minimum does not grow
    sizes = [min_approximation_size(thresholds(n), Measure.uniform(n), F(1, 4)) for n in range(2, 11)]
    assert sizes == [oracles.min_approx_size(thresholds(n).rows, [F(1, n)] * n, F(1, 4)) for n in range(2, 11)]
    assert max(sizes) == 2


# properties


@settings(max_examples=80, deadline=None)
@given(systems(max_cols=5, max_rows=8), st.data())
def test_complement_symmetry(S, data):
    mu = data.draw(measures(S.ncols))
    Y = Multiset.from_indices(data.draw(st.lists(st.integers(0, S.ncols - 1), min_size=1, max_size=6)))
    d = deviations(S, mu, Y)
    dc = deviations(complement(S), mu, Y)
    assert [abs(x) for x in d] == [abs(x) for x in dc]
    assert approx_error(S, mu, Y) == brute_force_error(S, mu, Y.elements())


@settings(max_examples=60, deadline=None)
@given(systems(max_cols=4, max_rows=8), st.data())
def test_returned_multiset_verifies(S, data):
    mu = data.draw(measures(S.ncols))
    eps = F(data.draw(st.integers(1, 8)), 8)
    Y = find_approximation(S, mu, eps, 16, seed=data.draw(st.integers(0, 5)))
    assert oracles.error(S.rows, mu.weights, Y.elements()) <= eps


@settings(max_examples=40, deadline=None)
@given(systems(max_cols=4, max_rows=6), st.data())
def test_min_size_antitone(S, data):
    mu = Measure.uniform(S.ncols)
    eps = sorted(F(k, 12) for k in data.draw(st.lists(st.integers(0, 12), min_size=2, max_size=4)))
    sizes = [min_approximation_size(S, mu, e) for e in eps]
    assert all(a >= b for a, b in zip(sizes, sizes[1:]))
    assert sizes[0] == oracles.min_approx_size(S.rows, mu.weights, eps[0])
