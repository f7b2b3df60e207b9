from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from narayana import estimates as E
from narayana.numeration import TABLE, to_canonical, value

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=1000)


def within(iv, printed: str, digits: int) -> bool:
    """The interval rounds to the printed decimal (half an ulp of slack)."""
    return abs(iv.mid - Fraction(printed)) <= Fraction(1, 2 * 10 ** digits) + iv.width


@given(fracs, fracs, fracs, fracs)
def test_interval_arithmetic_contains_point_results(a, b, c, d):
    x = E.Interval(min(a, b), max(a, b))
    y = E.Interval(min(c, d), max(c, d))
    for p in (x.lo, x.hi, x.mid):
        for q in (y.lo, y.hi, y.mid):
            assert p + q in x + y
            assert p - q in x - y
            assert p * q in x * y
            if 0 not in y:
                assert p / q in x / y


@given(fracs, st.integers(8, 80))
def test_rounding_is_outward(a, bits):
    x = E.Interval.point(a).round(bits)
    assert a in x and x.width <= Fraction(2, 1 << bits)


@given(st.fractions(min_value=0, max_value=100, max_denominator=500))
def test_sqrt_encloses(a):
    r = E.Interval.point(a).sqrt(64)
    assert (r * r).lo <= a <= (r * r).hi


def test_constants():
    alpha = E.root_alpha(256)
    assert (alpha ** 3 - alpha ** 2 - 1).contains(0)
    assert within(alpha, "1.465571231876768", 15)
    assert within(E.beta_abs(), "0.8260313576542", 13)
    assert within(E.c1(), "1.31342305985", 11)
    re, im = E.c2()
    assert within(re, "-0.15671152993", 11) and within(im, "-0.00134033362", 11)
    re3, im3 = E.c3()
    assert re3 == re and im3 == -im
    assert within(E.critical_exponent(), "2.87115675586", 11)
    assert E.critical_exponent() > Fraction(2)
    assert within(E.appearance_slope(), "3.61347026758", 11)


def test_binet_reproduces_the_sequence():
    # N_i = c1 alpha^i + 2 Re(c2 beta^i)
    a = E.root_alpha(256)
    br, bi = E.beta(256)
    cr, ci = E.c2(256)
    pr, pi = E.Interval.point(1), E.Interval.point(0)
    for i in range(40):
        approx = E.c1(256) * a ** i + 2 * (cr * pr - ci * pi)
        assert approx.contains(TABLE[i])
        pr, pi = pr * br - pi * bi, pr * bi + pi * br


def test_k1_window_values():
    r = E.shift_report(1)
    # the printed minimum differs from the exact one in the 12th decimal
    assert within(E.Interval.point(r.finite.lo), "-0.78416375426", 11)
    assert within(E.Interval.point(r.finite.hi), "1.035257875716", 12)
    # printed tail is the exact one truncated at 11 decimals
    assert 0 <= r.tail - Fraction("0.01335706955") < Fraction(1, 10 ** 11)
    # rigorous bounds agree with the printed ones to 11 decimals (those were rounded inward)
    assert abs(r.bounds.lo - Fraction("-0.79752082381")) < Fraction(1, 10 ** 11)
    assert abs(r.bounds.hi - Fraction("1.04861494527")) < Fraction(1, 10 ** 11)


def test_k3_bounds_within_printed_values():
    b = E.shift_bounds(3)
    assert Fraction("-1.10019497962") <= b.lo
    # the printed upper value is the rigorous one truncated at 11 decimals
    assert abs(b.hi - Fraction("1.70593793584")) < Fraction(1, 10 ** 11)


def test_k2_and_k3_finite_parts_coincide():
    # N_{f+3} - alpha^3 N_f = N_{f+2} - alpha^2 N_f
    f2, f3 = E.shift_report(2).finite, E.shift_report(3).finite
    assert abs(f2.lo - f3.lo) < Fraction(1, 10 ** 30) and abs(f2.hi - f3.hi) < Fraction(1, 10 ** 30)
    assert E.shift_report(2).argmax == E.shift_report(3).argmax


def test_k2_printed_upper_bound_is_exceeded():
    # the printed upper bound 1.684304571609 omits the tail; i = 181910 exceeds it
    i = 181910
    a2 = E.root_alpha(256) ** 2
    val = value(to_canonical(i) + "00") - a2 * i
    assert val > Fraction("1.684304571609")
    assert val in E.shift_bounds(2)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_wider_window_tightens(k):
    wide, narrow = E.shift_bounds(k, 35), E.shift_bounds(k, 30)
    assert narrow.lo <= wide.lo and wide.hi <= narrow.hi


@pytest.mark.parametrize("k", [1, 2, 3])
def test_bounds_hold_on_samples(k):
    b = E.shift_bounds(k)
    ak = E.root_alpha(128) ** k
    for i in range(0, 300_000, 101):
        v = value(to_canonical(i) + "0" * k) - ak * i if i else E.Interval.point(0)
        assert b.lo < v.lo and v.hi < b.hi


def test_small_sweeps():
    assert all(r.ok for r in E.verify_km(20_000))
    main, inv = E.verify_cloitre(20_000)
    assert main.ok and inv.ok
    assert main.notes["zeros"] + main.notes["ones"] == 20_000


def test_envelopes_small():
    assert all(r.ok for r in E.check_eq_n_bounds(60))
