"""Guessing automata from data (bounded Myhill-Nerode equivalence).

Two access words ``p`` and ``q`` (strings of columns) are merged when the
oracle agrees on ``p e`` and ``q e`` for every experiment ``e`` of length at
most ``depth``.  The result is only a guess: callers certify it with
queries before trusting it.

Also holds the hashing helper used by the factor-equality oracles.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from itertools import product as cartesian

import numpy as np

from . import automata as fa
from .automata import Automaton
from .config import CONFIG
from .numeration import TABLE

Oracle = Callable[..., np.ndarray]


class LearningError(RuntimeError):
    pass


def _valid_strings(length: int) -> np.ndarray:
    """All digit strings of ``length`` without 11 or 101 (leading zeros allowed)."""
    rows = [r for r in cartesian((0, 1), repeat=length)
            if "11" not in "".join(map(str, r)) and "101" not in "".join(map(str, r))]
    return np.array(rows, dtype=np.int64).reshape(len(rows), length)


class _Experiments:
    """Experiments grouped by length, one digit matrix per track."""

    def __init__(self, k: int, depth: int):
        self.groups = []
        for length in range(depth + 1):
            per_track = _valid_strings(length)
            m = per_track.shape[0]
            idx = np.array(list(cartesian(range(m), repeat=k)), dtype=np.int64).reshape(-1, k)
            digits = [per_track[idx[:, t]] for t in range(k)]
            weights = np.array([TABLE[length - 1 - p] for p in range(length)], dtype=np.int64)
            values = [d @ weights if length else np.zeros(idx.shape[0], dtype=np.int64) for d in digits]
            head = [d[:, :2] if length >= 2 else np.pad(d, ((0, 0), (0, 2 - length)), constant_values=-1)
                    for d in digits]
            self.groups.append((length, values, head))
        self.size = sum(g[1][0].size for g in self.groups)


def _junction_ok(tail: tuple[int, int], head: np.ndarray) -> np.ndarray:
    """Whether tail + head avoids 11 and 101 across the boundary (head may hold -1 padding)."""
    t1, t2 = tail  # last two digits of the access word (-1 if absent)
    h1, h2 = head[:, 0], head[:, 1]
    bad = (t2 == 1) & (h1 == 1)
    bad |= (t2 == 1) & (h1 == 0) & (h2 == 1)
    bad |= (t1 == 1) & (t2 == 0) & (h1 == 1)
    return ~bad


class _Word:
    """An access word: per-track digit lists."""

    __slots__ = ("digits",)

    def __init__(self, digits: tuple[tuple[int, ...], ...]):
        self.digits = digits

    def extend(self, sym: int) -> "_Word":
        return _Word(tuple(d + ((sym >> t) & 1,) for t, d in enumerate(self.digits)))

    def valid(self) -> bool:
        for d in self.digits:
            s = "".join(map(str, d))
            if "11" in s or "101" in s:
                return False
        return True

    def tail(self, t: int) -> tuple[int, int]:
        d = self.digits[t]
        return ((d[-2] if len(d) >= 2 else -1), (d[-1] if d else -1))

    def shifted(self, t: int, zeros: int) -> int:
        d = self.digits[t]
        n = len(d)
        return sum(TABLE[n - 1 - p + zeros] for p, x in enumerate(d) if x)


def _signature(word: _Word, exps: _Experiments, oracle: Oracle, k: int) -> bytes:
    if not word.valid():
        return b"dead"
    parts = []
    for length, values, head in exps.groups:
        ok = np.ones(values[0].size, dtype=bool)
        args = []
        for t in range(k):
            ok &= _junction_ok(word.tail(t), head[t])
            args.append(values[t] + word.shifted(t, length))
        res = np.zeros(ok.size, dtype=bool)
        if ok.any():
            res[ok] = oracle(*(a[ok] for a in args))
        parts.append(res)
    return np.packbits(np.concatenate(parts)).tobytes()


def learn_relation(oracle: Oracle, tracks: Sequence[str], depth: int | None = None,
                   max_states: int = 5000, max_value: int | None = None) -> Automaton:
    """Guess a DFA over ``tracks`` (sorted) whose language matches ``oracle``.

    ``oracle`` receives one int64 array per track and returns a boolean
    array.  ``max_value`` is advisory: a :class:`LearningError` is raised if
    the exploration would query values above it.
    """
    tracks = tuple(tracks)
    depth = CONFIG.learn_depth if depth is None else depth
    if list(tracks) != sorted(tracks):
        raise ValueError("tracks must be sorted")
    k = len(tracks)
    exps = _Experiments(k, depth)
    nsym = 1 << k

    def guarded(*args):
        if max_value is not None and any(int(a.max(initial=0)) > max_value for a in args):
            raise LearningError("oracle table too small for the exploration depth")
        return oracle(*args)

    start = _Word(tuple(() for _ in range(k)))
    sig_index: dict[bytes, int] = {}
    access: list[_Word] = []
    accept: list[bool] = []

    def state_of(word: _Word) -> tuple[int, bool]:
        sig = _signature(word, exps, guarded, k)
        if sig in sig_index:
            return sig_index[sig], False
        if len(access) >= max_states:
            raise LearningError(f"more than {max_states} states")
        sig_index[sig] = len(access)
        access.append(word)
        # the empty experiment comes first, so bit 0 is the verdict on the word itself
        accept.append(sig != b"dead" and bool(np.unpackbits(np.frombuffer(sig, dtype=np.uint8))[0]))
        return sig_index[sig], True

    state_of(start)
    delta: list[list[int]] = []
    i = 0
    while i < len(access):
        row = []
        for sym in range(nsym):
            j, _ = state_of(access[i].extend(sym))
            row.append(j)
        delta.append(row)
        i += 1
    a = Automaton(tracks, np.array(delta, dtype=np.int64), np.array(accept, dtype=bool))
    return fa.minimize(a)


def learn_dfao(oracle: Callable[[np.ndarray], np.ndarray], track: str = "n", depth: int | None = None,
               outputs: Sequence[int] = (0, 1)) -> dict[int, Automaton]:
    """One learned 1-track DFA per output value of a sequence oracle."""
    return {v: learn_relation(lambda n, v=v: oracle(n) == v, (track,), depth) for v in outputs}


# -- factor hashing ------------------------------------------------------------------

_MODS = (2_147_483_629, 2_147_483_587)
_BASE = 1_000_003


class FactorHasher:
    """Polynomial prefix hashes (two moduli) for O(1) factor comparisons."""

    def __init__(self, word: np.ndarray):
        w = np.asarray(word, dtype=np.int64) + 1
        self.length = w.size
        self.prefix = []
        self.powers = []
        for mod in _MODS:
            h = np.zeros(w.size + 1, dtype=np.int64)
            p = np.ones(w.size + 1, dtype=np.int64)
            for t in range(w.size):  # sequential recurrences; done once per word
                h[t + 1] = (h[t] * _BASE + w[t]) % mod
                p[t + 1] = (p[t] * _BASE) % mod
            self.prefix.append(h)
            self.powers.append(p)

    def hash(self, i: np.ndarray, n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        out = []
        for mod, h, p in zip(_MODS, self.prefix, self.powers):
            # the product of two residues stays below 2**62
            out.append((h[i + n] - (h[i] * p[n]) % mod) % mod)
        return out[0], out[1]

    def equal(self, i, j, n) -> np.ndarray:
        i, j, n = (np.asarray(x, dtype=np.int64) for x in (i, j, n))
        if np.any(np.maximum(i, j) + n > self.length):
            raise LearningError("factor runs past the end of the stored prefix")
        a1, a2 = self.hash(i, n)
        b1, b2 = self.hash(j, n)
        return (a1 == b1) & (a2 == b2)
