import numpy as np
import pytest

from narayana import arith
from narayana import automata as fa
from narayana.learn import FactorHasher, LearningError, learn_dfao, learn_relation
from narayana.sequences import na_dfao, na_prefix


def test_learns_less_than():
    guess = learn_relation(lambda x, y: x < y, ("x", "y"), depth=6)
    assert fa.equivalent(guess, arith.lt_automaton())


def test_learns_the_word():
    w = na_prefix(1 << 16)
    machines = learn_dfao(lambda n: w[n], "i", depth=6, outputs=(0, 1, 2))
    ref = na_dfao()
    for out, a in machines.items():
        i = np.arange(2000)
        assert np.array_equal(fa.accepts_batch(a, [i]), ref.outputs[ref.run_batch([fa.columns_for([i])[0]])] == out)


def test_tracks_must_be_sorted():
    with pytest.raises(ValueError):
        learn_relation(lambda y, x: x < y, ("y", "x"))


def test_value_guard():
    with pytest.raises(LearningError):
        learn_relation(lambda x: x % 2 == 0, ("x",), depth=6, max_value=10)


def test_factor_hasher_matches_naive():
    rng = np.random.default_rng(7)
    w = na_prefix(3000)
    h = FactorHasher(w)
    i = rng.integers(0, 2000, 4000)
    j = rng.integers(0, 2000, 4000)
    n = rng.integers(0, 900, 4000)
    naive = np.array([np.array_equal(w[a:a + c], w[b:b + c]) for a, b, c in zip(i, j, n)])
    assert np.array_equal(h.equal(i, j, n), naive)
    with pytest.raises(LearningError):
        h.equal([2999], [0], [5])
