"""Engine operations against naive integer semantics on every input of <= 10 digits."""

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from narayana import arith
from narayana import automata as fa
from narayana.numeration import narayana

SMALL = np.arange(narayana(10))  # every value with at most 10 digits
X, Y = (a.ravel() for a in np.meshgrid(SMALL, SMALL, indexing="ij"))


def verdicts(a, **cols):
    return fa.accepts_batch(a, [cols[t] for t in a.tracks])


@pytest.fixture(scope="module")
def lt():
    return arith.lt_automaton("x", "y")


@pytest.fixture(scope="module")
def double():
    return arith.multiple(2, "y", "x")  # x = 2y


def test_lt_example(lt):
    assert lt.run("001001", "100000")  # 5 < 9


@pytest.mark.parametrize("conn,op", [
    ("and", lambda p, q: p & q), ("or", lambda p, q: p | q), ("xor", lambda p, q: p ^ q),
    ("implies", lambda p, q: ~p | q), ("iff", lambda p, q: ~(p ^ q)),
])
def test_product_connectives(lt, double, conn, op):
    got = verdicts(fa.product(lt, double, conn), x=X, y=Y)
    assert np.array_equal(got, op(X < Y, X == 2 * Y))


def test_complement_is_relative_to_validity(lt):
    comp = fa.complement(lt)
    assert np.array_equal(verdicts(comp, x=X, y=Y), X >= Y)
    assert not comp.run("11", "0")  # malformed input stays rejected


def test_projection(double):
    even = fa.project_exists(double, "y")
    assert np.array_equal(verdicts(even, x=SMALL), SMALL % 2 == 0)


def test_projection_with_leading_zero_witness():
    # x + 1 = y has witnesses with one more digit than x
    succ_exists = fa.project_exists(arith.incrementer("x", "y"), "y")
    assert np.all(verdicts(succ_exists, x=SMALL))


def test_minimize_idempotent_and_text_round_trip(lt):
    m = fa.minimize(lt)
    assert fa.isomorphic(fa.minimize(m), m)
    back = fa.from_text(fa.to_text(m))
    assert fa.equivalent(back, m)
    dot = fa.to_dot(m)
    assert dot.startswith("digraph") and "doublecircle" in dot


def test_dfao_text_round_trip():
    from narayana.sequences import na_dfao

    d = na_dfao()
    back = fa.from_text(fa.to_text(d))
    assert back.is_dfao and fa.equivalent(back, d)


def test_enumerate_and_shortest(double):
    got = fa.enumerate_accepted(double, 6)
    assert got == sorted((2 * y, y) if double.tracks == ("x", "y") else (y, 2 * y)
                         for y in range(narayana(6)) if 2 * y < narayana(6))
    assert fa.shortest_accepted(double) == ("", "")


def test_combine_rejects_overlap(lt):
    from narayana.regex import compile_regex

    a = compile_regex("0*1", ("x",))
    b = compile_regex("(0|1)*1", ("x",))
    with pytest.raises(fa.AutomatonError):
        fa.combine([(a, 1), (b, 2)])


def test_combine_outputs():
    from narayana.regex import compile_regex

    ends1 = fa.intersect_valid(compile_regex("(0|1)*1", ("x",)))
    d = fa.combine([(ends1, 1)])
    from narayana.numeration import to_canonical

    assert [d.run(to_canonical(v)) for v in range(8)] == [int(to_canonical(v).endswith("1")) for v in range(8)]


@given(st.lists(st.integers(0, 3), min_size=1, max_size=6), st.integers(0, 2))
def test_random_transition_tables_minimize_to_same_language(rows, extra):
    n = len(rows)
    rng = np.random.default_rng(sum(rows) * 7 + extra)
    delta = rng.integers(0, n, size=(n, 2))
    acc = np.array([r % 2 == 0 for r in rows])
    a = fa.Automaton(("x",), delta, acc)
    m = fa.minimize(a)
    assert m.n_states <= n
    for length in range(7):
        for word in itertools.product("01", repeat=length):
            w = "".join(word)
            assert a.run(w) == m.run(w)


def test_track_mismatch_errors(lt):
    with pytest.raises(fa.AutomatonError):
        lt.run("1")
    with pytest.raises(fa.AutomatonError):
        fa.project_exists(lt, "z")
