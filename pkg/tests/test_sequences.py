import numpy as np
import pytest
from hypothesis import given, strategies as st

from narayana import oracle
from narayana import sequences as sq


def test_na_prefix_is_the_morphic_word(na_word):
    got = "".join(map(str, sq.na_prefix(len(na_word))))
    assert got == na_word
    assert [sq.na(i) for i in range(50)] == [int(c) for c in na_word[:50]]


def test_aj_against_oracle():
    ref = oracle.brute_aj(5000)
    assert "".join(map(str, sq.aj_prefix(5000))) == ref
    assert all(sq.aj(i) == int(ref[i]) for i in range(0, 5000, 37))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_xk_rule_matches_digit_parity(k):
    pre = sq.xk_prefix(k, 3000)
    assert all(sq.xk_word(k, i) == pre[i] for i in range(3000))


def test_x3_is_the_aj_word():
    assert np.array_equal(sq.xk_prefix(3, 5000), sq.aj_prefix(5000))


def test_h_is_hofstadter():
    ref = np.array(oracle.brute_h(100_000))
    assert np.array_equal(sq.h_values(100_001), ref)
    assert all(sq.h(i) == ref[i] for i in range(0, 100_001, 997))


def test_positions_of_letters(na_word):
    for fn, letters in [(sq.p02, "02"), (sq.p0, "0"), (sq.p1, "1"), (sq.p2, "2")]:
        # 1-indexed positions in the word
        assert [fn(j) for j in range(1, 301)] == oracle.brute_positions(na_word, letters, 300)


def test_positions_are_one_indexed():
    with pytest.raises(ValueError):
        sq.p0(0)


def test_firstocc_and_s():
    H = oracle.brute_h(5000)
    for n in range(1, 1500):
        assert sq.firstocc(n) == H.index(n)
    counts = np.bincount(H)[:1500]
    assert np.array_equal(sq.s_values(1500), counts)
    assert set(counts.tolist()) == {1, 2}
    assert [sq.s(i) for i in range(1, 200)] == counts[1:200].tolist()


def test_a202341_a202342_partition():
    one = sq.a202341_values(500)
    two = sq.a202342_values(500)
    s = sq.s_values(2000)
    assert np.all(s[one] == 1) and np.all(s[two] == 2)
    upto = min(one[-1], two[-1])
    assert sorted(set(one[one <= upto]) | set(two[two <= upto])) == list(range(upto + 1))


def test_zeck_closed_form_matches_definition_and_oracle():
    cols = range(-3, 11)
    ref = oracle.brute_zeck(40, cols)
    for i in range(40):
        row = [sq.zeck(i, j) for j in cols]
        assert row == [sq.zeck_direct(i, j) for j in cols] == ref[i]


@given(st.integers(0, 400), st.integers(0, 8))
def test_zeck_rows_follow_the_recurrence(i, j):
    # z_{i,j+3} = z_{i,j+2} + z_{i,j}
    assert sq.zeck(i, j + 3) == sq.zeck(i, j + 2) + sq.zeck(i, j)


def test_narayana_ext_backwards():
    for i in range(-20, 30):
        assert sq.narayana_ext(i + 3) == sq.narayana_ext(i + 2) + sq.narayana_ext(i)


@pytest.mark.parametrize("name,fn", [("p0", sq.p0), ("p1", sq.p1), ("p2", sq.p2), ("p02", sq.p02)])
def test_synchronized_positions(name, fn):
    js = np.arange(1, 400)
    assert sq.sync_values(name, js).tolist() == [fn(int(j)) for j in js]


def test_synchronized_h():
    i = np.arange(3000)
    assert np.array_equal(sq.sync_values("h", i), sq.h_values(3000))
