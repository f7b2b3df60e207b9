import functools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from narayana import arith, linrep
from narayana.logic import compile_query
from narayana.numeration import to_canonical


@pytest.fixture(scope="module")
def count_below():
    return linrep.count_track(arith.lt_automaton("i", "n"), "i")  # f(n) = #{i < n} = n


def test_counts_smaller_values(count_below):
    assert [linrep.evaluate_int(count_below, n) for n in range(300)] == list(range(300))


def test_minimize_identity_rank(count_below):
    m = linrep.minimize(count_below)
    assert m.dim <= count_below.dim
    assert linrep.equal(m, count_below)


@functools.lru_cache(maxsize=None)
def half_count():
    lr = linrep.count_track(compile_query("?msd_nara i<=n & i+i>=n"), "i")  # floor(n/2) + 1
    return lr, linrep.minimize(lr)


@given(st.integers(0, 5000))
def test_minimized_values_agree(n):
    lr, m = half_count()
    assert m(n) == lr(n) == n // 2 + 1


def test_equal_detects_difference(count_below):
    other = linrep.count_track(arith.linear_relation({"i": 1, "n": -1}, "<=", 0), "i")  # n + 1
    assert not linrep.equal(count_below, other)
    assert linrep.minimize(linrep.difference(count_below, other))(7) == Fraction(-1)


def test_infinite_count_is_reported():
    # i > n has infinitely many solutions for every n
    with pytest.raises(linrep.InfiniteCount):
        linrep.count_track(arith.lt_automaton("n", "i"), "i", cap=64)


def test_count_digits():
    # number of i < n whose representation ends in 1
    from narayana.sequences import library
    lr = linrep.count_track(compile_query("?msd_nara i<n & $lastbit1(i)", library()), "i")
    expected = 0
    for n in range(400):
        assert lr(n) == expected
        expected += to_canonical(n).endswith("1")
