import numpy as np
import pytest
from hypothesis import given, strategies as st

from narayana import numeration as nm
from narayana import oracle


def test_initial_values():
    assert [nm.narayana(i) for i in range(-2, 11)] == [1, 1, 1, 2, 3, 4, 6, 9, 13, 19, 28, 41, 60]
    assert nm.narayana(30) == 125491


def test_known_representations():
    assert nm.to_canonical(27) == "10010010"
    assert nm.to_canonical(0) == ""
    assert nm.value("11") == 3
    assert nm.normalize("11") == "100"
    assert nm.normalize("101") == "1000"


@given(st.integers(min_value=0, max_value=10**12))
def test_round_trip(m):
    rep = nm.to_canonical(m)
    assert nm.value(rep) == m
    assert nm.is_canonical(rep)
    assert "11" not in rep and "101" not in rep


@given(st.integers(min_value=0, max_value=10**6))
def test_greedy_matches_naive(m):
    assert nm.to_canonical(m) == oracle.brute_canonical(m)


@given(st.text(alphabet="01", max_size=40))
def test_valid_strings_are_canonical_after_stripping(s):
    if nm.is_valid(s):
        assert nm.to_canonical(nm.value(s)) == s.lstrip("0")


def test_leading_zeros_do_not_change_value():
    assert nm.value("0001001") == nm.value("1001") == 5


@given(st.lists(st.integers(min_value=0, max_value=10**9), min_size=1, max_size=50))
def test_vectorised_helpers(vals):
    mat = nm.digits_matrix(vals)
    assert list(nm.values_from_matrix(mat)) == vals
    for zeros in (1, 2, 3):
        expected = [nm.value(nm.to_canonical(v) + "0" * zeros) if v else 0 for v in vals]
        assert list(nm.shifted_values(vals, zeros)) == expected


@pytest.mark.parametrize("i,expected", [(3, (1, 1, 1)), (13, (6, 4, 3))])
def test_prefix_parikh_examples(i, expected):
    assert nm.prefix_parikh(i) == expected


@given(st.integers(min_value=0, max_value=5000))
def test_prefix_parikh_against_word(i):
    w = oracle.morphic_prefix(i)
    assert nm.prefix_parikh(i) == (w.count("0"), w.count("1"), w.count("2"))


def test_decomposition():
    assert nm.decomposition(27) == [7, 4, 1]
    assert sum(nm.narayana(d) for d in nm.decomposition(10**6)) == 10**6


def test_negative_rejected():
    with pytest.raises(ValueError):
        nm.narayana(-3)
    with pytest.raises(ValueError):
        nm.digits_matrix(np.array([-1]))
