"""Multi-track DFA / DFAO engine.

An :class:`Automaton` reads columns of binary digits, one digit per track,
most significant column first.  A column over tracks ``(t_0, ..., t_{k-1})``
is encoded as the integer whose bit ``i`` is the digit on track ``t_i``, so
the transition table is an ``(n_states, 2**k)`` integer array.  Machines are
always complete; state 0 is the initial state once canonicalised.

Relation automata built by this module are closed under prepending all-zero
columns (shorter inputs are padded with leading zeros), and quantified or
complemented machines only ever range over valid Narayana representations.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence

import numpy as np

from ._kernels import refine, subset_construction
from .config import CONFIG
from .numeration import pad


class AutomatonError(Exception):
    pass


class QueryTooLarge(AutomatonError):
    """An intermediate machine exceeded the configured state budget."""


class Automaton:
    """Complete deterministic automaton over binary multi-track columns.

    ``outputs`` is set for DFAOs; for ordinary DFAs only ``accept`` matters.
    """

    __slots__ = ("tracks", "delta", "accept", "outputs", "initial", "_min")

    def __init__(self, tracks: Sequence[str], delta, accept=None, outputs=None, initial: int = 0):
        self.tracks = tuple(tracks)
        self.delta = np.ascontiguousarray(delta, dtype=np.int64)
        n = self.delta.shape[0]
        if self.delta.ndim != 2 or self.delta.shape[1] != 1 << len(self.tracks):
            raise AutomatonError(
                f"transition table shape {self.delta.shape} does not match {len(self.tracks)} tracks")
        if len(set(self.tracks)) != len(self.tracks):
            raise AutomatonError(f"duplicate track names {self.tracks}")
        if outputs is not None:
            self.outputs = np.asarray(outputs, dtype=np.int64)
            self.accept = self.outputs != 0 if accept is None else np.asarray(accept, dtype=bool)
        else:
            self.outputs = None
            self.accept = np.zeros(n, dtype=bool) if accept is None else np.asarray(accept, dtype=bool)
        self.initial = int(initial)
        self._min = False

    # -- basic properties -----------------------------------------------------

    @property
    def n_states(self) -> int:
        return self.delta.shape[0]

    @property
    def n_tracks(self) -> int:
        return len(self.tracks)

    @property
    def is_dfao(self) -> bool:
        return self.outputs is not None

    def labels(self) -> np.ndarray:
        return self.outputs if self.outputs is not None else self.accept.astype(np.int64)

    def dead_states(self) -> np.ndarray:
        """States from which no accepting state is reachable (DFA mode)."""
        return ~coreachable(self)

    def state_count(self) -> int:
        """Number of states, not counting a dead sink (the usual reporting convention)."""
        if self.is_dfao:
            return self.n_states
        return int(self.n_states - np.count_nonzero(self.dead_states()))

    def is_empty(self) -> bool:
        return not bool(self.accept[reachable_mask(self)].any())

    @property
    def verdict(self) -> bool:
        """Truth value of a closed formula (0-track machine)."""
        if self.tracks:
            raise AutomatonError(f"machine has free tracks {self.tracks}")
        return bool(self.accept[self.initial])

    def __repr__(self) -> str:
        kind = "dfao" if self.is_dfao else "dfa"
        return f"<Automaton {kind} tracks={self.tracks} states={self.n_states}>"

    # -- running ----------------------------------------------------------------

    def symbol(self, column: Sequence[int]) -> int:
        sym = 0
        for i, d in enumerate(column):
            if d not in (0, 1):
                raise AutomatonError(f"digit {d!r} outside the binary alphabet")
            sym |= d << i
        return sym

    def final_state(self, inputs: Sequence[str]) -> int:
        if len(inputs) != self.n_tracks:
            raise AutomatonError(f"expected {self.n_tracks} inputs, got {len(inputs)}")
        width = max((len(x) for x in inputs), default=0)
        padded = [pad(x, width) for x in inputs]
        state = self.initial
        for col in range(width):
            sym = 0
            for i, word in enumerate(padded):
                ch = word[col]
                if ch == "1":
                    sym |= 1 << i
                elif ch != "0":
                    raise AutomatonError(f"symbol {ch!r} outside the alphabet")
            state = int(self.delta[state, sym])
        return state

    def run(self, *inputs: str):
        """Verdict (DFA) or output (DFAO) on msd-first digit strings, one per track."""
        q = self.final_state(inputs)
        if self.is_dfao:
            return int(self.outputs[q])
        return bool(self.accept[q])

    def run_batch(self, columns: Sequence[np.ndarray]) -> np.ndarray:
        """Vectorised run: ``columns[t]`` is an (batch, length) 0/1 array for track t.

        Returns final states.  All arrays must share the same shape.
        """
        if len(columns) != self.n_tracks:
            raise AutomatonError("wrong number of tracks")
        if not columns:
            return np.array([self.initial])
        batch, length = columns[0].shape
        state = np.full(batch, self.initial, dtype=np.int64)
        for c in range(length):
            sym = np.zeros(batch, dtype=np.int64)
            for t, arr in enumerate(columns):
                sym |= arr[:, c].astype(np.int64) << t
            state = self.delta[state, sym]
        return state


# -- construction helpers -----------------------------------------------------

def constant_automaton(tracks: Sequence[str], accept: bool) -> Automaton:
    k = len(tracks)
    return Automaton(tracks, np.zeros((1, 1 << k), dtype=np.int64), np.array([accept]))


def _check_guard(n: int) -> None:
    if n > CONFIG.size_guard:
        raise QueryTooLarge(f"intermediate automaton exceeds {CONFIG.size_guard} states (query too large)")


def reachable_mask(a: Automaton) -> np.ndarray:
    seen = np.zeros(a.n_states, dtype=bool)
    seen[a.initial] = True
    frontier = np.array([a.initial])
    while frontier.size:
        succ = np.unique(a.delta[frontier].ravel())
        new = succ[~seen[succ]]
        seen[new] = True
        frontier = new
    return seen


def coreachable(a: Automaton) -> np.ndarray:
    """States that can reach an accepting state."""
    n = a.n_states
    if a.is_dfao:
        return np.ones(n, dtype=bool)
    src = np.repeat(np.arange(n), a.delta.shape[1])
    dst = a.delta.ravel()
    order = np.argsort(dst, kind="stable")
    src_sorted = src[order]
    starts = np.searchsorted(dst[order], np.arange(n + 1))
    live = a.accept.copy()
    frontier = np.flatnonzero(live)
    while frontier.size:
        preds = np.unique(_gather_preds(src_sorted, starts, frontier))
        new = preds[~live[preds]]
        live[new] = True
        frontier = new
    return live


def _gather_preds(src_sorted, starts, frontier):
    lo = starts[frontier]
    hi = starts[frontier + 1]
    lens = hi - lo
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    offs = np.repeat(lo - np.concatenate(([0], np.cumsum(lens)[:-1])), lens)
    return src_sorted[np.arange(total) + offs]


def canonical_order(a: Automaton) -> Automaton:
    """Restrict to reachable states, numbered in BFS order (symbols ascending)."""
    n = a.n_states
    ident = np.full(n, -1, dtype=np.int64)
    ident[a.initial] = 0
    order = [np.array([a.initial])]
    frontier = order[0]
    count = 1
    while frontier.size:
        succ = a.delta[frontier].ravel()
        cand = succ[ident[succ] < 0]
        if cand.size == 0:
            break
        _, first = np.unique(cand, return_index=True)
        new = cand[np.sort(first)]
        ident[new] = np.arange(count, count + new.size)
        count += new.size
        order.append(new)
        frontier = new
    states = np.concatenate(order)
    delta = ident[a.delta[states]]
    out = a.outputs[states] if a.outputs is not None else None
    res = Automaton(a.tracks, delta, a.accept[states], out, 0)
    return res


def minimize(a: Automaton) -> Automaton:
    """Unique minimal complete machine, canonically numbered by BFS.

    Partition refinement: states are split by label, then repeatedly by the
    classes of their successors until the partition is stable.
    """
    if a._min:
        return a
    a = canonical_order(a)
    cls, k = refine(a.delta, a.labels().astype(np.int64))
    reps = np.zeros(k, dtype=np.int64)
    reps[cls[::-1]] = np.arange(a.n_states)[::-1]
    delta = cls[a.delta[reps]]
    out = a.outputs[reps] if a.outputs is not None else None
    res = canonical_order(Automaton(a.tracks, delta, a.accept[reps], out, int(cls[a.initial])))
    res._min = True
    return res


# -- track manipulation -------------------------------------------------------

def _symbol_map(src_tracks: Sequence[str], dst_tracks: Sequence[str]) -> np.ndarray:
    """For each column over ``dst_tracks`` the column over ``src_tracks``.

    Every source track must occur among the destination tracks.
    """
    pos = {t: i for i, t in enumerate(dst_tracks)}
    syms = np.arange(1 << len(dst_tracks), dtype=np.int64)
    out = np.zeros_like(syms)
    for i, t in enumerate(src_tracks):
        out |= ((syms >> pos[t]) & 1) << i
    return out


def rename(a: Automaton, mapping: dict[str, str] | Sequence[str]) -> Automaton:
    """Rename tracks; mapping several tracks to one name identifies them (diagonal).

    The resulting tracks are sorted alphabetically.
    """
    if not isinstance(mapping, dict):
        if len(mapping) != a.n_tracks:
            raise AutomatonError(f"arity mismatch: {len(mapping)} names for {a.n_tracks} tracks")
        mapping = dict(zip(a.tracks, mapping))
    new_names = [mapping.get(t, t) for t in a.tracks]
    tracks = tuple(sorted(set(new_names)))
    pos = {t: i for i, t in enumerate(tracks)}
    syms = np.arange(1 << len(tracks), dtype=np.int64)
    old = np.zeros_like(syms)
    for i, t in enumerate(new_names):
        old |= ((syms >> pos[t]) & 1) << i
    out = a.outputs if a.outputs is not None else None
    res = Automaton(tracks, a.delta[:, old], a.accept, out, a.initial)
    if len(tracks) == a.n_tracks:
        res._min = a._min
        return res
    return minimize(res)


def reorder(a: Automaton, tracks: Sequence[str]) -> Automaton:
    """Same machine, columns re-encoded for a permutation of its tracks."""
    if sorted(tracks) != sorted(a.tracks):
        raise AutomatonError(f"{tracks} is not a permutation of {a.tracks}")
    res = Automaton(tracks, a.delta[:, _symbol_map(a.tracks, tracks)], a.accept, a.outputs, a.initial)
    res._min = a._min
    return res


# -- validity -------------------------------------------------------------------

_VALID_CACHE: dict[int, Automaton] = {}


def valid_automaton(tracks: Sequence[str]) -> Automaton:
    """Accepts tuples whose every track avoids the factors 11 and 101."""
    k = len(tracks)
    if k not in _VALID_CACHE:
        # per track: 0 = clean, 1 = just read 1, 2 = just read 10; 3^k live states + sink
        n_live = 3 ** k
        step = np.array([[0, 1], [2, -1], [0, -1]])
        states = np.arange(n_live)
        digits = np.stack([(states // 3 ** i) % 3 for i in range(k)], axis=1) if k else np.zeros((1, 0), int)
        syms = np.arange(1 << k)
        delta = np.full((n_live + 1, 1 << k), n_live, dtype=np.int64)
        for s in syms:
            bits = [(s >> i) & 1 for i in range(k)]
            nxt = np.zeros(n_live, dtype=np.int64)
            dead = np.zeros(n_live, dtype=bool)
            for i in range(k):
                ns = step[digits[:, i], bits[i]]
                dead |= ns < 0
                nxt += np.where(ns < 0, 0, ns) * 3 ** i
            delta[:n_live, s] = np.where(dead, n_live, nxt)
        accept = np.ones(n_live + 1, dtype=bool)
        accept[n_live] = False
        _VALID_CACHE[k] = minimize(Automaton(tuple(f"#{i}" for i in range(k)), delta, accept))
    base = _VALID_CACHE[k]
    res = Automaton(tuple(tracks), base.delta, base.accept, None, base.initial)
    res._min = True
    return reorder(res, tuple(sorted(tracks))) if list(tracks) != sorted(tracks) else res


def universal(tracks: Sequence[str]) -> Automaton:
    return valid_automaton(tuple(sorted(tracks)))


# -- products -------------------------------------------------------------------

_OPS: dict[str, Callable[[np.ndarray, np.ndarray], np.ndarray]] = {
    "and": lambda x, y: x & y,
    "or": lambda x, y: x | y,
    "xor": lambda x, y: x ^ y,
    "implies": lambda x, y: (~x) | y,
    "iff": lambda x, y: ~(x ^ y),
    "andnot": lambda x, y: x & ~y,
}


def _pair_product(a: Automaton, b: Automaton, tracks: tuple[str, ...]):
    """Reachable part of the synchronous product; returns (delta, a_states, b_states)."""
    pa = _symbol_map(a.tracks, tracks)
    pb = _symbol_map(b.tracks, tracks)
    da = a.delta[:, pa]
    db = b.delta[:, pb]
    nb = b.n_states
    total = a.n_states * nb
    start = a.initial * nb + b.initial
    dense = total <= 20_000_000
    if dense:
        ident = np.full(total, -1, dtype=np.int64)
        ident[start] = 0
    else:
        known_codes = np.array([start], dtype=np.int64)
        known_ids = np.array([0], dtype=np.int64)
    frontier = np.array([start], dtype=np.int64)
    codes_in_order = [frontier]
    rows = []
    count = 1
    while frontier.size:
        fa, fb = np.divmod(frontier, nb)
        succ = da[fa] * nb + db[fb]
        flat = succ.ravel()
        if dense:
            ids = ident[flat]
            cand = flat[ids < 0]
        else:
            idx = np.searchsorted(known_codes, flat)
            idx[idx >= known_codes.size] = 0
            hit = known_codes[idx] == flat
            cand = flat[~hit]
        if cand.size:
            _, first = np.unique(cand, return_index=True)
            new = cand[np.sort(first)]
            new_ids = np.arange(count, count + new.size)
            count += new.size
            _check_guard(count)
            if dense:
                ident[new] = new_ids
            else:
                allc = np.concatenate([known_codes, new])
                alli = np.concatenate([known_ids, new_ids])
                o = np.argsort(allc, kind="stable")
                known_codes, known_ids = allc[o], alli[o]
            codes_in_order.append(new)
        else:
            new = cand
        rows.append(succ)
        frontier = new
    codes = np.concatenate(codes_in_order)
    succ_all = np.concatenate(rows, axis=0)
    if dense:
        delta = ident[succ_all]
    else:
        delta = known_ids[np.searchsorted(known_codes, succ_all)]
    sa, sb = np.divmod(codes, nb)
    return delta, sa, sb


def product(a: Automaton, b: Automaton, connective: str = "and") -> Automaton:
    """Boolean combination of two DFAs; tracks are aligned by name.

    Tracks missing from one operand are unconstrained there.  For every
    connective except ``and`` the result is intersected with validity so
    it never accepts malformed representations.
    """
    if a.is_dfao or b.is_dfao:
        raise AutomatonError("product expects DFAs; use combine for outputs")
    op = _OPS[connective]
    tracks = tuple(sorted(set(a.tracks) | set(b.tracks)))
    delta, sa, sb = _pair_product(a, b, tracks)
    acc = op(a.accept[sa], b.accept[sb])
    res = minimize(Automaton(tracks, delta, acc))
    if connective != "and":
        res = intersect_valid(res)
    return res


def intersect_valid(a: Automaton) -> Automaton:
    v = valid_automaton(a.tracks)
    delta, sa, sb = _pair_product(a, v, a.tracks)
    return minimize(Automaton(a.tracks, delta, a.accept[sa] & v.accept[sb]))


def complement(a: Automaton) -> Automaton:
    """Complement relative to the tuples of valid representations."""
    if a.is_dfao:
        raise AutomatonError("complement of a DFAO is undefined")
    v = valid_automaton(a.tracks)
    delta, sa, sb = _pair_product(a, v, a.tracks)
    return minimize(Automaton(a.tracks, delta, (~a.accept[sa]) & v.accept[sb]))


def extend_tracks(a: Automaton, tracks: Iterable[str]) -> Automaton:
    """Add unconstrained-but-valid tracks."""
    extra = sorted(set(tracks) - set(a.tracks))
    if not extra:
        return a
    return product(a, valid_automaton(extra), "and")


# -- nondeterminism -------------------------------------------------------------

class Nfa:
    """Nondeterministic automaton with optional epsilon moves.

    ``transitions[q]`` maps a column symbol to a collection of successors;
    ``epsilon[q]`` lists epsilon successors.
    """

    def __init__(self, tracks, n_states, initial, accepting, transitions, epsilon=None):
        self.tracks = tuple(tracks)
        self.n_states = n_states
        self.initial = frozenset(initial)
        self.accepting = frozenset(accepting)
        self.transitions = transitions
        self.epsilon = epsilon or [()] * n_states

    @property
    def n_symbols(self) -> int:
        return 1 << len(self.tracks)

    def closure(self, states: Iterable[int]) -> frozenset:
        out = set(states)
        stack = list(out)
        while stack:
            q = stack.pop()
            for r in self.epsilon[q]:
                if r not in out:
                    out.add(r)
                    stack.append(r)
        return frozenset(out)

    def step(self, states: frozenset, sym: int) -> frozenset:
        out = set()
        for q in states:
            out.update(self.transitions[q].get(sym, ()))
        return self.closure(out)

    def start(self) -> frozenset:
        return self.closure(self.initial)

    def is_accepting(self, states: frozenset) -> bool:
        return not self.accepting.isdisjoint(states)


def determinize(n, max_states: int | None = None) -> Automaton:
    """Subset construction followed by minimisation.

    Works for :class:`Nfa` and for any object offering ``tracks``,
    ``n_symbols``, ``start()``, ``step(states, sym)``, ``is_accepting``.
    """
    limit = max_states or CONFIG.size_guard
    start = n.start()
    ids = {start: 0}
    queue = [start]
    delta_rows = []
    accept = []
    nsym = n.n_symbols
    i = 0
    while i < len(queue):
        cur = queue[i]
        i += 1
        accept.append(n.is_accepting(cur))
        row = []
        for s in range(nsym):
            nxt = n.step(cur, s)
            j = ids.get(nxt)
            if j is None:
                j = len(queue)
                ids[nxt] = j
                queue.append(nxt)
                if j >= limit:
                    raise QueryTooLarge(f"subset construction exceeds {limit} states (query too large)")
            row.append(j)
        delta_rows.append(row)
    return minimize(Automaton(n.tracks, np.array(delta_rows, dtype=np.int64).reshape(len(queue), nsym),
                              np.array(accept, dtype=bool)))


def _zero_closure(a: Automaton, zero_syms: np.ndarray, live: np.ndarray) -> np.ndarray:
    """Live states reachable from the initial state on the given columns."""
    seen = np.zeros(a.n_states, dtype=bool)
    if not live[a.initial]:
        return np.empty(0, dtype=np.int64)
    seen[a.initial] = True
    frontier = np.array([a.initial])
    while frontier.size:
        succ = np.unique(a.delta[np.ix_(frontier, zero_syms)].ravel())
        new = succ[live[succ] & ~seen[succ]]
        seen[new] = True
        frontier = new
    return np.flatnonzero(seen)


def project_exists(a: Automaton, tracks: str | Iterable[str]) -> Automaton:
    """Existentially quantify the given tracks away."""
    drop = [tracks] if isinstance(tracks, str) else list(tracks)
    unknown = [t for t in drop if t not in a.tracks]
    if unknown:
        raise AutomatonError(f"unknown track(s) {unknown}")
    if not drop:
        return a
    return _determinize_projection(a, drop)


def _determinize_projection(a: Automaton, drop: Sequence[str]) -> Automaton:
    """Subset construction for the NFA obtained by erasing ``drop``.

    Leading columns that are zero on every kept track may still carry
    digits of the erased tracks, so the start set is the closure of the
    initial state under such columns.
    """
    keep = tuple(t for t in a.tracks if t not in drop)
    kept_map = _symbol_map(keep, a.tracks)
    groups = np.array([np.flatnonzero(kept_map == s) for s in range(1 << len(keep))], dtype=np.int64)
    live = coreachable(a)
    succ = a.delta[:, groups].astype(np.int32)
    succ[~live[succ]] = -1
    start = _zero_closure(a, groups[0], live).astype(np.int32)
    delta, acc, status = subset_construction(succ, start, a.accept, CONFIG.size_guard)
    if status:
        raise QueryTooLarge(f"subset construction exceeds {CONFIG.size_guard} states (query too large)")
    return minimize(Automaton(keep, delta.astype(np.int64), acc))


def pad_closure(a: Automaton) -> Automaton:
    """Make the language closed under removing leading all-zero columns."""
    return _determinize_projection(a, [])


# -- equivalence and combination ------------------------------------------------

def equivalent(a: Automaton, b: Automaton) -> bool:
    if set(a.tracks) != set(b.tracks):
        return False
    if a.is_dfao != b.is_dfao:
        return False
    ma = minimize(a)
    mb = minimize(reorder(b, a.tracks))
    if ma.n_states != mb.n_states:
        return False
    return (np.array_equal(ma.delta, mb.delta) and np.array_equal(ma.accept, mb.accept)
            and (ma.outputs is None or np.array_equal(ma.outputs, mb.outputs)))


def isomorphic(a: Automaton, b: Automaton) -> bool:
    """Identical canonical numbering (use on minimised machines)."""
    return (a.tracks == b.tracks and np.array_equal(a.delta, b.delta)
            and np.array_equal(a.labels(), b.labels()))


def combine(parts: Sequence[tuple[Automaton, int]], default: int | None = 0) -> Automaton:
    """DFAO emitting the output attached to the unique part accepting the input.

    Overlapping parts are an error.  Valid inputs matched by no part get
    ``default``; with ``default=None`` they are an error as well.
    """
    if not parts:
        raise AutomatonError("combine needs at least one part")
    tracks = tuple(sorted(set().union(*(set(p.tracks) for p, _ in parts))))
    cur = Automaton(tracks, np.zeros((1, 1 << len(tracks)), dtype=np.int64), outputs=np.array([-1]))
    for part, out in parts:
        if out < 0:
            raise AutomatonError("outputs must be non-negative")
        delta, sa, sb = _pair_product(cur, part, tracks)
        prev = cur.outputs[sa]
        hit = part.accept[sb]
        if np.any(hit & (prev >= 0)):
            raise AutomatonError(f"combine: part with output {out} overlaps an earlier part")
        cur = minimize(Automaton(tracks, delta, outputs=np.where(hit, out, prev)))
    if default is None:
        v = valid_automaton(tracks)
        delta, sa, sb = _pair_product(cur, v, tracks)
        if np.any((cur.outputs[sa] < 0) & v.accept[sb]):
            raise AutomatonError("combine: parts do not cover every valid input")
        default = 0
    res = Automaton(tracks, cur.delta, outputs=np.where(cur.outputs < 0, default, cur.outputs))
    return minimize(res)


def output_is(dfao: Automaton, value: int, track: str | None = None) -> Automaton:
    """DFA accepting valid inputs on which ``dfao`` outputs ``value``."""
    tracks = dfao.tracks if track is None else (track,)
    base = Automaton(tracks, dfao.delta, dfao.outputs == value, None, dfao.initial)
    return product(minimize(base), valid_automaton(tracks), "and")


# -- enumeration ----------------------------------------------------------------

def enumerate_accepted(a: Automaton, max_digits: int) -> list[tuple[int, ...]]:
    """Values of accepted tuples whose representations fit in ``max_digits``.

    Returned in lexicographic order of the padded tuples.
    """
    from .numeration import value

    live = coreachable(a)
    k = a.n_tracks
    results: list[tuple[int, ...]] = []
    cols = [tuple((s >> t) & 1 for t in range(k)) for s in range(1 << k)]
    order = range(1 << k)

    def rec(q: int, depth: int, words: list[list[str]]):
        if depth == max_digits:
            if a.accept[q]:
                results.append(tuple(value("".join(w)) for w in words))
            return
        for s in order:
            r = int(a.delta[q, s])
            if not live[r]:
                continue
            for t in range(k):
                words[t].append(str(cols[s][t]))
            rec(r, depth + 1, words)
            for t in range(k):
                words[t].pop()

    if live[a.initial]:
        rec(a.initial, 0, [[] for _ in range(k)])
    results.sort()
    return results


def shortest_accepted(a: Automaton) -> tuple[str, ...] | None:
    """Shortest accepted input (BFS), as one digit string per track."""
    if a.accept[a.initial]:
        return tuple("" for _ in a.tracks)
    prev = {a.initial: None}
    frontier = [a.initial]
    while frontier:
        nxt = []
        for q in frontier:
            for s in range(a.delta.shape[1]):
                r = int(a.delta[q, s])
                if r in prev:
                    continue
                prev[r] = (q, s)
                if a.accept[r]:
                    path = []
                    cur = r
                    while prev[cur] is not None:
                        p, sym = prev[cur]
                        path.append(sym)
                        cur = p
                    path.reverse()
                    return tuple("".join(str((sym >> t) & 1) for sym in path) for t in range(a.n_tracks))
                nxt.append(r)
        frontier = nxt
    return None


# -- serialisation ----------------------------------------------------------------

def _sym_text(sym: int, k: int) -> str:
    return "[" + ",".join(str((sym >> t) & 1) for t in range(k)) + "]"


def export(a: Automaton, fmt: str = "text") -> str:
    if fmt == "text":
        return to_text(a)
    if fmt == "dot":
        return to_dot(a)
    raise AutomatonError(f"unknown export format {fmt!r}")


def to_text(a: Automaton) -> str:
    """Plain-text form; see README for the grammar."""
    k = a.n_tracks
    a = canonical_order(a)
    lines = [f"tracks={k} mode={'dfao' if a.is_dfao else 'dfa'}",
             "alphabet " + (",".join(a.tracks) if a.tracks else "-") + " {0,1}"]
    for q in range(a.n_states):
        tag = f"out={int(a.outputs[q])}" if a.is_dfao else ("accept" if a.accept[q] else "")
        lines.append(f"state {q} {tag}".rstrip())
        for s in range(1 << k):
            lines.append(f"  {_sym_text(s, k)} -> {int(a.delta[q, s])}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Automaton:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = dict(part.split("=") for part in lines[0].split())
    k = int(head["tracks"])
    mode = head["mode"]
    names = lines[1].split()[1]
    tracks = () if names == "-" else tuple(names.split(","))
    if len(tracks) != k:
        raise AutomatonError("alphabet line disagrees with header")
    delta: list[list[int]] = []
    labels: list[int] = []
    for ln in lines[2:]:
        if ln.startswith("state"):
            parts = ln.split()
            if int(parts[1]) != len(delta):
                raise AutomatonError("states must be listed in order")
            tag = parts[2] if len(parts) > 2 else ""
            labels.append(int(tag[4:]) if tag.startswith("out=") else int(tag == "accept"))
            delta.append([0] * (1 << k))
        else:
            lhs, rhs = ln.split("->")
            digits = [int(x) for x in lhs.strip()[1:-1].split(",") if x != ""]
            sym = sum(d << t for t, d in enumerate(digits))
            delta[-1][sym] = int(rhs)
    arr = np.array(delta, dtype=np.int64).reshape(len(delta), 1 << k)
    if mode == "dfao":
        return Automaton(tracks, arr, outputs=np.array(labels))
    return Automaton(tracks, arr, np.array(labels, dtype=bool))


def to_dot(a: Automaton, name: str = "A") -> str:
    a = canonical_order(a)
    dead = a.dead_states() if not a.is_dfao else np.zeros(a.n_states, dtype=bool)
    k = a.n_tracks
    out = [f"digraph {name} {{", "  rankdir=LR;", '  node [shape=circle];',
           '  start [shape=point];', "  start -> 0;"]
    for q in range(a.n_states):
        if dead[q]:
            continue
        if a.is_dfao:
            out.append(f'  {q} [label="{q}/{int(a.outputs[q])}"];')
        elif a.accept[q]:
            out.append(f"  {q} [shape=doublecircle];")
    edges: dict[tuple[int, int], list[str]] = {}
    for q in range(a.n_states):
        if dead[q]:
            continue
        for s in range(1 << k):
            r = int(a.delta[q, s])
            if dead[r]:
                continue
            lab = "".join(str((s >> t) & 1) for t in range(k)) if k > 1 else str(s)
            edges.setdefault((q, r), []).append(lab if k else "e")
    for (q, r), labs in edges.items():
        out.append(f'  {q} -> {r} [label="{",".join(labs)}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def columns_for(values_per_track: Sequence[Sequence[int]], length: int | None = None) -> list[np.ndarray]:
    """Digit matrices (padded to a common width) for :meth:`Automaton.run_batch`."""
    from .numeration import digits_matrix

    mats = [digits_matrix(v) for v in values_per_track]
    width = max([m.shape[1] for m in mats] + [length or 0])
    out = []
    for m in mats:
        if m.shape[1] < width:
            m = np.concatenate([np.zeros((m.shape[0], width - m.shape[1]), dtype=np.uint8), m], axis=1)
        out.append(m)
    return out


def accepts_batch(a: Automaton, values_per_track: Sequence[Sequence[int]]) -> np.ndarray:
    return a.accept[a.run_batch(columns_for(values_per_track))]



def function_values(a: Automaton, arg: str, res: str, domain, bound: int) -> np.ndarray:
    """f(i) for each i in ``domain``, where ``a`` accepts (i, f(i)) and f(i) <= bound.

    One forward pass over the automaton for the whole batch; -1 marks inputs
    with no value or several.  Each state keeps a single output prefix: for a
    functional relation two prefixes reaching the same state cannot both
    complete to distinct accepted outputs.
    """
    from .numeration import digits_matrix, value

    ai, ri = a.tracks.index(arg), a.tracks.index(res)
    dom = np.asarray(domain, dtype=np.int64)
    width = digits_matrix([max(bound, int(dom.max(initial=0)))]).shape[1]
    digits = digits_matrix(dom, width).astype(np.int64)
    code = np.full((dom.size, a.n_states), -1, dtype=np.int64)  # output bits so far
    code[:, a.initial] = 0
    for c in range(width):
        new = np.full_like(code, -1)
        for q in np.flatnonzero((code >= 0).any(axis=0)):
            rows = np.flatnonzero(code[:, q] >= 0)
            for e in (0, 1):
                nxt = a.delta[q, (digits[rows, c] << ai) | (e << ri)]
                new[rows, nxt] = 2 * code[rows, q] + e
        code = new
    out = np.full(dom.size, -1, dtype=np.int64)
    hits = code[:, a.accept]
    for k in range(dom.size):
        found = set(hits[k][hits[k] >= 0].tolist())
        if len(found) == 1:
            out[k] = value(format(found.pop(), f"0{width}b"))
    return out
