from narayana import oracle as o


def test_narayana_numbers():
    assert o.narayana_list(10) == [1, 2, 3, 4, 6, 9, 13, 19, 28, 41]
    assert o.narayana_list(32)[30] == 125491


def test_representations():
    assert o.brute_canonical(27) == "10010010"
    assert o.brute_value("10010010") == 27
    assert all(o.brute_value(o.brute_canonical(m)) == m for m in range(3000))
    assert all("11" not in r and "101" not in r for r in map(o.brute_canonical, range(3000)))


def test_morphic_prefix():
    assert o.morphic_prefix(14) == "01200101201200"


def test_positions_and_h():
    w = o.morphic_prefix(200)
    assert o.brute_positions(w, "1", 4) == [2, 6, 8, 11]
    assert o.brute_h(10) == [0, 1, 1, 2, 3, 4, 4, 5, 5, 6, 7]


def test_exponent_and_periods():
    assert o.smallest_period("abaab") == 3
    assert o.brute_exponent("0101010") == (o.Fraction(7, 2), "0101010")


def test_abelian_and_balance():
    assert o.brute_abelian("012210", 2, 3) == 0
    assert o.brute_abelian("0011", 2, 1) == 0
    assert o.brute_abelian("012", 2, 1) is None
    ok, pair = o.brute_balance("0011", 1)
    assert not ok and pair == ("00", "11")


def test_sumsets_and_classification():
    assert o.brute_sumset([1, 3], 2, 10) == {2, 4, 6}
    a, b = o.brute_ab_classification(10)
    assert sorted(a + b) == list(range(1, 11))
    # 1 -> "1" (t=0), 2 -> "10" (t=1)
    assert 1 in a and 2 in b


def test_zeck_rows():
    rows = o.brute_zeck(2, range(0, 4))
    for row in rows:
        assert row[3] == row[2] + row[0]
