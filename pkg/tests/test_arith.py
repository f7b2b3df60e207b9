import numpy as np
import pytest
from hypothesis import given, strategies as st

from narayana import arith
from narayana import automata as fa
from narayana.numeration import narayana, to_canonical

LIMIT = narayana(12) - 1


def cols(*values):
    return arith.representation_columns(*values)


def test_adder_examples():
    add = arith.build_adder()
    assert add.state_count() == 250
    assert add.run(*cols(5, 9, 14))
    assert not add.run(*cols(5, 9, 15))


@given(st.integers(0, LIMIT), st.integers(0, LIMIT))
def test_adder_property(x, y):
    add = arith.build_adder()
    assert add.run(*cols(x, y, x + y))
    assert not add.run(*cols(x, y, x + y + 1))
    if x + y:
        assert not add.run(*cols(x, y, x + y - 1))


def test_incrementer_to_1e5():
    inc = arith.incrementer()
    i = np.arange(100_000)
    assert np.all(fa.accepts_batch(inc, [i, i + 1]))
    assert not np.any(fa.accepts_batch(inc, [i, i + 2]))


def test_lshift_matches_appending_zero():
    rel = arith.lshift_relation()
    for x in range(1, 2000):
        # the relation reads x padded by one zero against y = x0
        rx = "0" + to_canonical(x)
        ry = to_canonical(x) + "0"
        assert rel.run(rx, ry)


def test_rshift_drops_last_digit():
    rel = fa.intersect_valid(arith.rshift_relation())
    for x in range(1, 1500):
        rep = to_canonical(x)
        y = rep[:-1]
        assert rel.run(rep, y.rjust(len(rep), "0"))


def test_two_n_plus_one():
    rel = arith.linear_relation({"y": 1, "x": -2}, "=", 1)
    for x in range(500):
        assert rel.run(*cols(x, 2 * x + 1))
        assert not rel.run(*cols(x, 2 * x + 2))


def test_strict_inequality_5m_14p():
    rel = arith.linear_relation({"m": 5, "p": -14}, ">")
    m, p = (a.ravel() for a in np.meshgrid(np.arange(200), np.arange(80), indexing="ij"))
    assert np.array_equal(fa.accepts_batch(rel, [m, p]), 5 * m > 14 * p)


@pytest.mark.parametrize("coeffs,op,const", [
    ({"x": 1, "y": 1, "z": -1}, "=", 0),
    ({"x": 2, "y": -1}, "<", 3),
    ({"x": 3, "y": -2}, ">=", -1),
    ({"x": 1, "y": -1}, "!=", 2),
])
def test_direct_matches_composition(coeffs, op, const):
    direct = arith.linear_relation(coeffs, op, const)
    composed = arith.adder_by_composition(coeffs, op, const)
    assert fa.equivalent(direct, composed)


def test_adder_certificates():
    assert all(arith.certify_adder().values())


def test_unknown_operator():
    with pytest.raises(ValueError):
        arith.linear_relation({"x": 1}, "~")
