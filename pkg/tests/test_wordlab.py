from fractions import Fraction

import numpy as np
import pytest

from narayana import estimates as E
from narayana import oracle
from narayana import sequences as sq
from narayana import wordlab as wl


@pytest.fixture(scope="module")
def prefix():
    return sq.na_prefix(20_000)


def test_word_lookup():
    assert wl.word("na").stem == "nara"
    with pytest.raises(ValueError):
        wl.word("zz")


def test_critical_fractions_increase_to_the_exponent():
    crit = E.critical_exponent()
    seq = [f for n in range(8) for f in wl.critical_fractions(n)]
    assert all(f < crit.lo for f in seq)
    assert seq[-1] > Fraction(287, 100)
    assert crit.lo - seq[-1] < Fraction(1, 10 ** 4)


def test_appearance_closed_form_against_brute(na_word):
    for m in range(2, 300):
        assert wl.appearance_closed_form(m) == oracle.brute_appearance(na_word, m)


def test_palindromes_against_brute(prefix, na_word):
    assert set(wl.palindromes(prefix[:3000], 40)) == oracle.brute_palindromes(na_word[:3000], 40)


def test_abelian_orders_against_brute(prefix, na_word):
    pre = na_word[:4000]
    for power in (2, 3):
        got = wl.abelian_power_orders(prefix[:4000], power, 20)
        ref = [m for m in range(1, 21) if oracle.brute_abelian(pre, power, m) is not None]
        assert got == ref


def test_complexity_against_brute(prefix, na_word):
    assert wl.complexity(prefix[:5000], 30).tolist() == oracle.brute_complexity(na_word[:5000], 30)
    # 2n + 1 for the Narayana word
    assert wl.complexity(prefix, 60).tolist()[1:] == [2 * n + 1 for n in range(1, 61)]


def test_max_exponent_against_brute(na_word):
    pre = na_word[:300]
    top, length, period = wl.max_exponent(sq.na_prefix(300))
    ref, witness = oracle.brute_exponent(pre)
    assert top == ref
    assert Fraction(length, period) == Fraction(len(witness), oracle.smallest_period(witness))


def test_imbalance_of_the_witness_pair():
    u, v = "00120010120010", "12012001012012"
    assert wl.imbalance(u, v) == 3
    assert oracle.brute_balance(oracle.morphic_prefix(10_000), 2, 20) == (False, (u, v))
    assert wl.is_factor(u, sq.na_prefix(2000)) and wl.is_factor(v, sq.na_prefix(2000))


def test_nonmember_families_avoid_brute_sumsets(na_word):
    for kind, letter in (("P1", "1"), ("P2", "2")):
        fam = wl.nonmember_family_values(kind, 4)
        members = oracle.brute_positions(na_word, letter, 3000)
        sums = oracle.brute_sumset(members, 2, max(fam))
        assert not sums & set(fam)
    assert wl.nonmember_family_values("P1", 2) == [9, 37]
    with pytest.raises(ValueError):
        wl.nonmember_family_values("P3", 1)


def test_sup_ratio_on_a_small_relation():
    a = wl.compile_query("?msd_nara 2*m=3*p & p>0")
    rep = wl.sup_ratio(a, 12)
    assert rep.best == Fraction(3, 2)


def test_ftm_and_scans_are_flagged_empirical():
    assert wl.ftm_check(20_000)
    rep = wl.conjecture_scan(4, n_bound=60, prefix_length=20_000)
    assert "not a proof" in rep.note
    assert rep.max_exponent == 5


def test_period_ratio_names():
    assert wl.period_name(wl.word("NA")) == "nara_big_14_5"


SP_TABLE = {
    "SP0": [0, 2, 1, 0, 1, 0, 0, 2, 1, 0, 0, 2, 1, 0, 2, 1, 0, 1, 0, 0],
    "SP1": [1, 0, 0, 2, 1, 0, 2, 1, 0, 1, 0, 0, 2, 1, 0, 1, 0, 0, 2, 1],
}


@pytest.mark.slow
@pytest.mark.parametrize("name", ["SP0", "SP1"])
def test_right_special_words(name, na_word):
    sp = wl.sp_prefix(name, 40)
    assert sp[:20] == SP_TABLE[name]
    for n in range(1, 41):
        # reversed prefixes are the right-special factors ending in the given letter
        f = "".join(map(str, reversed(sp[:n])))
        exts = [c for c in "012" if f + c in oracle.brute_factors(na_word, n + 1)]
        assert f.endswith(name[-1]) and len(exts) >= 2
