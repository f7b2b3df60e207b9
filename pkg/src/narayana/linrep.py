"""Linear representations counting accepted completions, with exact minimization.

A representation (u, {M_0, M_1}, v) computes f(n) = u M_{d_1} ... M_{d_t} v
where d_1 ... d_t is the canonical representation of n.  Everything is
over :class:`fractions.Fraction`; floats never appear.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import automata as fa
from .automata import Automaton
from .config import CONFIG
from .numeration import to_canonical

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


class InfiniteCount(ValueError):
    """The counted set is infinite for some n (leading-zero padding never stabilizes)."""


@dataclass(frozen=True)
class LinearRep:
    u: Vector
    mats: tuple[Matrix, Matrix]  # indexed by digit
    v: Vector

    @property
    def dim(self) -> int:
        return len(self.u)

    rank = dim

    def __call__(self, n: int) -> Fraction:
        return evaluate(self, n)


def _vec_mat(x: Sequence[Fraction], m: Matrix) -> list[Fraction]:
    out = [Fraction(0)] * (len(m[0]) if m else 0)
    for i, xi in enumerate(x):
        if xi:
            row = m[i]
            for j, mij in enumerate(row):
                if mij:
                    out[j] += xi * mij
    return out


def _dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(x, y) if a and b), Fraction(0))


def _transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def evaluate(lr: LinearRep, n: int) -> Fraction:
    x = list(lr.u)
    for ch in to_canonical(n):
        x = _vec_mat(x, lr.mats[int(ch)])
    return _dot(x, lr.v)


def evaluate_int(lr: LinearRep, n: int) -> int:
    val = evaluate(lr, n)
    if val.denominator != 1:
        raise ValueError(f"non-integer value {val} at n={n}")
    return int(val)


# -- construction ------------------------------------------------------------------


def count_track(a: Automaton, counted: str, cap: int | None = None) -> LinearRep:
    """f(n) = #{i : a accepts (n, i)} for a 2-track relation with counted track i."""
    if counted not in a.tracks or a.n_tracks != 2:
        raise ValueError("need a 2-track automaton containing the counted track")
    ci = a.tracks.index(counted)
    ni = 1 - ci
    live = fa.coreachable(a) & fa.reachable_mask(a)
    if not live[a.initial]:
        return zero(0)
    idx = -np.ones(a.n_states, dtype=np.int64)
    states = np.flatnonzero(live)
    idx[states] = np.arange(states.size)
    k = states.size
    mats = []
    for d in (0, 1):
        m = [[0] * k for _ in range(k)]
        for row, q in enumerate(states):
            for e in (0, 1):
                r = int(a.delta[q, (d << ni) | (e << ci)])
                if live[r]:
                    m[row][int(idx[r])] += 1
        mats.append(tuple(tuple(Fraction(x) for x in r) for r in m))
    u = [Fraction(0)] * k
    u[int(idx[a.initial])] = Fraction(1)
    v = tuple(Fraction(int(a.accept[q])) for q in states)
    lr = LinearRep(tuple(u), (mats[0], mats[1]), v)
    return _stabilize(lr, CONFIG.stabilization_cap if cap is None else cap)


def _stabilize(lr: LinearRep, cap: int) -> LinearRep:
    """Replace u by u M_0^s once more zero columns no longer change any value."""
    obs = _basis(_transpose_rep(lr))  # rows span {M_w v}
    x = list(lr.u)
    for _ in range(cap):
        y = _vec_mat(x, lr.mats[0])
        diff = [a - b for a, b in zip(y, x)]
        if all(_dot(diff, b) == 0 for b, _ in obs):
            return LinearRep(tuple(y), lr.mats, lr.v)
        x = y
    raise InfiniteCount(f"leading-zero padding did not stabilize within {cap} steps")


def from_function_automaton(a: Automaton, counted: str = "i") -> LinearRep:
    return count_track(a, counted)


def zero(dim: int = 0) -> LinearRep:
    z = tuple(Fraction(0) for _ in range(dim))
    m = tuple(z for _ in range(dim))
    return LinearRep(z, (m, m), z)


# -- minimization ------------------------------------------------------------------


def _basis(lr: LinearRep) -> list[tuple[list[Fraction], int]]:
    """Reduced row-echelon basis of span{u M_w}, as (vector, pivot) pairs."""
    basis: list[tuple[list[Fraction], int]] = []
    queue = [list(lr.u)]
    while queue:
        x = queue.pop(0)
        for b, p in basis:
            if x[p]:
                c = x[p]
                x = [xi - c * bi for xi, bi in zip(x, b)]
        piv = next((j for j, xj in enumerate(x) if xj), None)
        if piv is None:
            continue
        c = x[piv]
        x = [xi / c for xi in x]
        for t, (b, p) in enumerate(basis):
            if b[piv]:
                f = b[piv]
                basis[t] = ([bi - f * xi for bi, xi in zip(b, x)], p)
        basis.append((x, piv))
        for m in lr.mats:
            queue.append(_vec_mat(x, m))
    return basis


def _transpose_rep(lr: LinearRep) -> LinearRep:
    return LinearRep(lr.v, (_transpose(lr.mats[0]), _transpose(lr.mats[1])), lr.u)


def _reduce_left(lr: LinearRep) -> LinearRep:
    if not lr.dim:
        return lr
    basis = _basis(lr)
    pivots = [p for _, p in basis]
    r = len(basis)
    if r == 0:
        return zero(0)
    mats = []
    for m in lr.mats:
        rows = []
        for b, _ in basis:
            img = _vec_mat(b, m)
            rows.append(tuple(img[p] for p in pivots))
        mats.append(tuple(rows))
    u = tuple(lr.u[p] for p in pivots)
    v = tuple(_dot(b, lr.v) for b, _ in basis)
    return LinearRep(u, (mats[0], mats[1]), v)


def minimize(lr: LinearRep) -> LinearRep:
    """Minimal-dimension equivalent representation (left then right reduction)."""
    left = _reduce_left(lr)
    right = _reduce_left(_transpose_rep(left))
    return _transpose_rep(right)


def difference(a: LinearRep, b: LinearRep) -> LinearRep:
    n, m = a.dim, b.dim
    zero_ = Fraction(0)
    mats = []
    for d in (0, 1):
        rows = [tuple(a.mats[d][i]) + (zero_,) * m for i in range(n)]
        rows += [(zero_,) * n + tuple(b.mats[d][i]) for i in range(m)]
        mats.append(tuple(rows))
    return LinearRep(tuple(a.u) + tuple(-x for x in b.u), (mats[0], mats[1]), tuple(a.v) + tuple(b.v))


def equal(a: LinearRep, b: LinearRep) -> bool:
    return minimize(difference(a, b)).dim == 0
