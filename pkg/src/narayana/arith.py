"""Arithmetic relations on Narayana representations as automata.

The workhorse is :func:`linear_relation`, which recognises
``sum(c_v * v) <op> K`` for small integer coefficients by tracking the
running difference in the basis (N_m, N_{m-1}, N_{m-2}).  Reading a
column whose weighted digit sum is ``d`` maps the state (a, b, c) to
(a + b + d, c, a), because N_m = N_{m-1} + N_{m-3}.  After the last column
the difference is a + b + c (using N_0 = N_{-1} = N_{-2} = 1).
"""

from __future__ import annotations

import functools
from collections.abc import Mapping

import numpy as np

from . import automata as fa
from .automata import Automaton
from .numeration import to_canonical

ALPHA = 1.465571231876768  # float estimate, used for search bounds only

_OPS = ("=", "!=", "<", "<=", ">", ">=")


def _sink_bound(dmax: int, const: int) -> float:
    """Threshold on |a*alpha^2 + b*alpha + c| beyond which the sign is settled.

    The expanding coordinate moves by f -> alpha*f + d*alpha^2; past
    dmax*alpha^3/(alpha-1) it can never shrink back.  The other two
    coordinates stay bounded along any path from (0, 0, 0), so a large
    expanding coordinate forces the sign of the final value a + b + c.
    """
    roots = np.roots([1, -1, 0, -1])
    beta = roots[np.argmax(np.abs(roots.imag))]
    alpha = ALPHA
    contraction = dmax * abs(beta) ** 2 / (1 - abs(beta))
    # weight of each coordinate in a + b + c (Lagrange interpolation at 1)
    k_alpha = abs((1 - beta) * (1 - beta.conjugate()) / ((alpha - beta) * (alpha - beta.conjugate())))
    k_beta = abs((1 - alpha) * (1 - beta.conjugate()) / ((beta - alpha) * (beta - beta.conjugate())))
    needed = (abs(const) + 2 * k_beta * contraction + 1) / k_alpha
    spec_bound = dmax * alpha ** 3 / (alpha - 1) + 4
    return 1.5 * max(needed, spec_bound)


def _accepts(op: str, diff: int) -> bool:
    return {"=": diff == 0, "!=": diff != 0, "<": diff < 0, "<=": diff <= 0,
            ">": diff > 0, ">=": diff >= 0}[op]


@functools.lru_cache(maxsize=512)
def _linear_cached(items: tuple[tuple[str, int], ...], op: str, const: int) -> Automaton:
    tracks = tuple(v for v, _ in items)
    coeffs = np.array([c for _, c in items], dtype=np.int64)
    k = len(tracks)
    syms = np.arange(1 << k)
    bits = (syms[:, None] >> np.arange(k)[None, :]) & 1
    dsum = bits @ coeffs if k else np.zeros(1, dtype=np.int64)
    dvals, sym_class = np.unique(dsum, return_inverse=True)
    dmax = int(max(coeffs[coeffs > 0].sum() if (coeffs > 0).any() else 0,
                   -coeffs[coeffs < 0].sum() if (coeffs < 0).any() else 0, 1))
    bound = _sink_bound(dmax, const)
    a2 = ALPHA * ALPHA
    GT, LT = 0, 1  # absorbing sinks
    ids: dict[tuple[int, int, int], int] = {(0, 0, 0): 2}
    queue = [(0, 0, 0)]
    rows: list[list[int]] = [[GT] * len(dvals), [LT] * len(dvals)]
    accept = [_accepts(op, 1), _accepts(op, -1)]
    i = 0
    while i < len(queue):
        a, b, c = queue[i]
        i += 1
        accept.append(_accepts(op, a + b + c - const))
        row = []
        for d in dvals.tolist():
            nxt = (a + b + d, c, a)
            f = nxt[0] * a2 + nxt[1] * ALPHA + nxt[2]
            if f > bound:
                row.append(GT)
                continue
            if f < -bound:
                row.append(LT)
                continue
            j = ids.get(nxt)
            if j is None:
                j = len(queue) + 2
                ids[nxt] = j
                queue.append(nxt)
                fa._check_guard(j)
            row.append(j)
        rows.append(row)
    table = np.array(rows, dtype=np.int64)[:, sym_class.ravel()]
    raw = Automaton(tracks, table, np.array(accept), initial=2)
    return fa.product(fa.minimize(raw), fa.valid_automaton(tracks), "and")


def linear_relation(coeffs: Mapping[str, int], op: str = "=", const: int = 0) -> Automaton:
    """Automaton for ``sum(coeffs[v] * v) <op> const`` over valid representations."""
    if op not in _OPS:
        raise ValueError(f"unknown comparison {op!r}")
    items = tuple(sorted((v, int(c)) for v, c in coeffs.items() if c != 0))
    if not items:
        return fa.constant_automaton((), _accepts(op, -const))
    res = _linear_cached(items, op, int(const))
    return res


def linear_term(lhs: list[tuple[int, str]], rhs: list[tuple[int, str]] = (), op: str = "=",
                lhs_const: int = 0, rhs_const: int = 0) -> Automaton:
    """``c1*x1 + ... + lhs_const <op> d1*y1 + ... + rhs_const``."""
    coeffs: dict[str, int] = {}
    for c, v in lhs:
        coeffs[v] = coeffs.get(v, 0) + c
    for c, v in rhs:
        coeffs[v] = coeffs.get(v, 0) - c
    res = linear_relation(coeffs, op, rhs_const - lhs_const)
    names = {v for _, v in lhs} | {v for _, v in rhs}
    return fa.extend_tracks(res, names)


def canonical_dfa(track: str = "x") -> Automaton:
    """Valid representations (no 11, no 101; leading zeros allowed)."""
    return fa.valid_automaton((track,))


def eq_automaton(x: str = "x", y: str = "y") -> Automaton:
    return linear_relation({x: 1, y: -1}, "=")


def lt_automaton(x: str = "x", y: str = "y") -> Automaton:
    return linear_relation({x: 1, y: -1}, "<")


def incrementer(i: str = "i", j: str = "j") -> Automaton:
    """Accepts (i, j) iff j = i + 1."""
    return linear_relation({j: 1, i: -1}, "=", 1)


def build_adder(x: str = "x", y: str = "y", z: str = "z") -> Automaton:
    """Accepts (x, y, z) iff x + y = z."""
    return linear_relation({x: 1, y: 1, z: -1}, "=", 0)


def constant(c: int, track: str = "x") -> Automaton:
    """Accepts exactly the (padded) representation of ``c``."""
    return linear_relation({track: 1}, "=", c)


def multiple(c: int, x: str = "x", y: str = "y") -> Automaton:
    """Accepts (x, y) iff y = c * x."""
    return linear_relation({y: 1, x: -c}, "=")


@functools.lru_cache(maxsize=None)
def lshift_relation(x: str = "x", y: str = "y") -> Automaton:
    """x = 0z and y = z0 for some z (multiplies the 'exponent' by one place)."""
    from .regex import compile_regex

    return compile_regex("([0,0]|[0,1][1,1]*[1,0])*", (x, y))


@functools.lru_cache(maxsize=None)
def rshift_relation(x: str = "x", y: str = "y") -> Automaton:
    """y is x with its last digit dropped."""
    from .regex import compile_regex

    return compile_regex("([0,0]|[1,0][1,1]*[0,1])*(()|[1,0][1,1]*)", (x, y))


@functools.lru_cache(maxsize=None)
def lastbit1(x: str = "x") -> Automaton:
    from .regex import compile_regex

    return compile_regex("(0|1)*1", (x,))


def adder_by_composition(coeffs: Mapping[str, int], op: str = "=", const: int = 0) -> Automaton:
    """Same relation as :func:`linear_relation`, built only from the 3-track adder.

    Each multiple c*v is expanded into repeated additions, each sum gets a
    fresh variable tied by an adder, and the temporaries are projected out.
    Used as an independent cross-check of the direct construction.
    """
    adder = build_adder("_a", "_b", "_c")
    counter = [0]

    def fresh() -> str:
        counter[0] += 1
        return f"_s{counter[0]}"

    def sum_of(terms: list[str], parts: list[Automaton]) -> str | None:
        if not terms:
            return None
        acc = terms[0]
        for t in terms[1:]:
            out = fresh()
            parts.append(fa.rename(adder, {"_a": acc, "_b": t, "_c": out}))
            acc = out
        return acc

    parts: list[Automaton] = []
    pos = [v for v, c in sorted(coeffs.items()) if c > 0 for _ in range(c)]
    neg = [v for v, c in sorted(coeffs.items()) if c < 0 for _ in range(-c)]
    if const > 0:
        cname = fresh()
        parts.append(constant(const, cname))
        neg.append(cname)
    elif const < 0:
        cname = fresh()
        parts.append(constant(-const, cname))
        pos.append(cname)
    left = sum_of(pos, parts)
    right = sum_of(neg, parts)
    if left is None:
        left = fresh()
        parts.append(constant(0, left))
    if right is None:
        right = fresh()
        parts.append(constant(0, right))
    cmp = {"=": ("=", 1), "!=": ("!=", 1), "<": ("<", 1), "<=": ("<=", 1), ">": (">", 1), ">=": (">=", 1)}[op][0]
    base = {"=": eq_automaton, "<": lt_automaton}
    if cmp in base:
        rel = base[cmp](left, right)
    elif cmp == ">":
        rel = lt_automaton(right, left)
    elif cmp == ">=":
        rel = fa.complement(lt_automaton(left, right))
    elif cmp == "<=":
        rel = fa.complement(lt_automaton(right, left))
    else:
        rel = fa.complement(eq_automaton(left, right))
    parts.append(rel)
    acc = parts[0]
    for p in parts[1:]:
        acc = fa.product(acc, p, "and")
    temps = [t for t in acc.tracks if t.startswith("_")]
    return fa.project_exists(acc, temps)


def representation_columns(*values: int) -> tuple[str, ...]:
    reps = [to_canonical(v) for v in values]
    width = max((len(r) for r in reps), default=0)
    return tuple(r.rjust(width, "0") for r in reps)


# certification of the adder


ADDER_CERTIFICATES = {
    # base: adding 0 is the identity
    "base": "?msd_nara Ax,z $add(x,0,z) <=> x=z",
    # step: x + y = z implies x + (y+1) = z+1
    "step": "?msd_nara Ax,y,z,u,v ($add(x,y,z) & $inc(y,u) & $inc(z,v)) => $add(x,u,v)",
    # converse: every triple with y' > 0 comes from a predecessor triple
    "converse": "?msd_nara Ax,u,v ($add(x,u,v) & u!=0) => Ey,z $inc(y,u) & $inc(z,v) & $add(x,y,z)",
    # at most one sum per pair
    "functional": "?msd_nara Ax,y,z,w ($add(x,y,z) & $add(x,y,w)) => z=w",
}


def certify_adder(adder: Automaton | None = None) -> dict[str, bool]:
    """Run the three inductive certification queries against ``adder``.

    Together they force the relation to be x + y = z by induction on y.
    The successor relation is the incrementer, checked separately by brute force.
    """
    from .logic import Registry, evaluate

    adder = adder if adder is not None else build_adder()
    reg = Registry()
    reg.add_relation("add", fa.reorder(adder, ("x", "y", "z")), ("x", "y", "z"))
    reg.add_relation("inc", incrementer("i", "j"), ("i", "j"))
    return {name: evaluate(q, reg) for name, q in ADDER_CERTIFICATES.items()}


def brute_check_adder(adder: Automaton | None = None, bound: int = 2000) -> tuple[int, int, int] | None:
    """First (x, y, z) in [0, bound]^2 where the adder disagrees with integer addition, or None."""
    adder = adder if adder is not None else build_adder()
    ys = np.arange(bound + 1)
    for x in range(bound + 1):
        xs = np.full(ys.size, x)
        # each row: the true sum must be accepted, and its neighbours rejected
        for shift, expect in ((0, True), (1, False), (-1, False)):
            zs = xs + ys + shift
            ok = zs >= 0
            cols = {"x": xs[ok], "y": ys[ok], "z": zs[ok]}
            got = fa.accepts_batch(adder, [cols[t] for t in adder.tracks])
            bad = np.flatnonzero(got != expect)
            if bad.size:
                i = bad[0]
                return int(cols["x"][i]), int(cols["y"][i]), int(cols["z"][i])
    return None
