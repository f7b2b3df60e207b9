"""Sequences attached to Narayana representations.

Numeric closed forms (fast, for sweeps and tables) live next to the
automata that define the same sequences inside the query language.  The
automata are compiled lazily through :func:`library`, a shared registry
pre-loaded with the relevant definitions.

Index conventions: ``p0, p1, p2, p02, a, b`` are 1-indexed (j >= 1);
``na, aj, h, s, a202341, a202342, firstocc`` are 0-indexed.
"""

from __future__ import annotations

import bisect
import functools
import threading

import numpy as np

from . import automata as fa
from .automata import Automaton
from .logic import Registry, run_script
from .numeration import TABLE, digits_matrix, narayana, to_canonical, value

# -- DFAOs -------------------------------------------------------------------------


def na_dfao(track: str = "i") -> Automaton:
    """Narayana word: 1 if (i)_N ends in 1, 2 if it ends in 10, else 0."""
    delta = np.array([[0, 1], [2, 1], [0, 1]])
    return Automaton((track,), delta, outputs=np.array([0, 1, 2]))


def aj_dfao(track: str = "i") -> Automaton:
    """Allouche-Johnson word: parity of the number of 1 digits."""
    delta = np.array([[0, 1], [1, 0]])
    return Automaton((track,), delta, outputs=np.array([0, 1]))


def _run_dfao(dfao: Automaton, values) -> np.ndarray:
    vals = np.asarray(values, dtype=np.int64)
    mat = digits_matrix(vals)
    return dfao.outputs[dfao.run_batch([mat])]


def na(i: int) -> int:
    return na_dfao().run(to_canonical(i))


def na_prefix(length: int) -> np.ndarray:
    return _run_dfao(na_dfao(), np.arange(length))


def aj(i: int) -> int:
    return to_canonical(i).count("1") % 2


def aj_prefix(length: int) -> np.ndarray:
    return digits_matrix(np.arange(length)).sum(axis=1) % 2


# -- the x_k family --------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def xk_lengths(k: int, upto: int = 200) -> tuple[int, ...]:
    """|X_i^k| for i = 0..upto, where |X_i| = |X_{i-1}| + |X_{i-k}| and |X_{-j}| = 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    vals = [1] * k  # X_{-k+1} .. X_0
    while len(vals) < upto + k:
        vals.append(vals[-1] + vals[-k])
    return tuple(vals[k - 1:])


def xk_word(k: int, i: int) -> int:
    """Bit i of x_k: parity of the 1s in the greedy representation over |X_j^k|."""
    if i < 0:
        raise ValueError("index must be >= 0")
    upto = 8
    while xk_lengths(k, upto)[-1] <= i:
        upto *= 2
    lens = xk_lengths(k, upto)
    ones = 0
    rem = i
    j = bisect.bisect_right(lens, rem) - 1
    while rem and j >= 0:
        if lens[j] <= rem:
            rem -= lens[j]
            ones += 1
        j -= 1
    return ones % 2


def xk_prefix(k: int, length: int) -> np.ndarray:
    """Prefix of x_k from the locally catenative rule X_i = X_{i-1} ~X_{i-k}."""
    blocks = [np.zeros(1, dtype=np.uint8)] * k  # X_{-k+1} .. X_0
    while len(blocks[-1]) < length:
        blocks.append(np.concatenate([blocks[-1], 1 - blocks[-k]]))
        blocks = blocks[-k:]
    return blocks[-1][:length]


# -- closed forms ------------------------------------------------------------------


def _shift(j: int, zeros: int) -> int:
    return value(to_canonical(j) + "0" * zeros) if j else 0


def _positive(j: int) -> None:
    if j < 1:
        raise ValueError("this sequence is indexed from 1")


def p02(j: int) -> int:
    _positive(j)
    return _shift(j - 1, 1) + 1


def p0(j: int) -> int:
    _positive(j)
    return _shift(j - 1, 2) + 1


def p1(j: int) -> int:
    _positive(j)
    return _shift(j - 1, 3) + 2


def p2(j: int) -> int:
    _positive(j)
    return _shift(j - 1, 4) + 3


a = p02
b = p1


def h(i: int) -> int:
    """h(i) = [e_1 .. e_{t-1}]_N + e_t; equals Hofstadter's H."""
    rep = to_canonical(i)
    if not rep:
        return 0
    return value(rep[:-1]) + int(rep[-1])


def h_values(count: int) -> np.ndarray:
    mat = digits_matrix(np.arange(count)).astype(np.int64)
    width = mat.shape[1]
    if width == 0:
        return np.zeros(count, dtype=np.int64)
    weights = np.array([TABLE[width - 2 - p] for p in range(width - 1)], dtype=np.int64)
    return mat[:, :-1] @ weights + mat[:, -1]


def firstocc(n: int) -> int:
    """Least x with h(x) = n."""
    lo, hi = 0, 2 * n + 2
    while lo < hi:
        mid = (lo + hi) // 2
        if h(mid) < n:
            lo = mid + 1
        else:
            hi = mid
    return lo


def s(i: int) -> int:
    """A202340: number of x with h(x) = i (always 1 or 2)."""
    return firstocc(i + 1) - firstocc(i)


def s_values(count: int) -> np.ndarray:
    hv = h_values(3 * count + 10)
    counts = np.bincount(hv)
    return counts[:count]


def a202341_values(count: int) -> np.ndarray:
    """i with s(i) = 1, in increasing order (0-indexed sequence)."""
    size = 2 * count + 10
    vals = np.flatnonzero(s_values(size) == 1)
    while vals.size < count:
        size *= 2
        vals = np.flatnonzero(s_values(size) == 1)
    return vals[:count]


def a202342_values(count: int) -> np.ndarray:
    """i with s(i) = 2, in increasing order (0-indexed sequence)."""
    size = 3 * count + 10
    vals = np.flatnonzero(s_values(size) == 2)
    while vals.size < count:
        size *= 2
        vals = np.flatnonzero(s_values(size) == 2)
    return vals[:count]


# -- the 3-Zeckendorf array ----------------------------------------------------------


def narayana_ext(i: int) -> int:
    """N_i for every integer i, running the recurrence backwards below -2."""
    if i >= -2:
        return narayana(i)
    vals = {-2: 1, -1: 1, 0: 1}
    k = -3
    while k >= i:
        vals[k] = vals[k + 3] - vals[k + 2]
        k -= 1
    return vals[i]


def zeck(i: int, j: int) -> int:
    """z_{i,j} by the closed form in p0, p1, p2 (j >= -3)."""
    if i < 0 or j < -3:
        raise ValueError("need i >= 0 and j >= -3")
    n = i + 1
    return (narayana_ext(j - 4) * p0(n) + narayana_ext(j - 5) * p1(n)
            + narayana_ext(j - 3) * p2(n) - narayana_ext(j - 2))


def zeck_direct(i: int, j: int) -> int:
    """z_{i,j} from the array's definition (row start shifted by 0^j, negative columns by differences)."""
    if i < 0 or j < -3:
        raise ValueError("need i >= 0 and j >= -3")
    if j >= 0:
        return _shift(p1(i + 1) - 1, j)
    c0, c1, c2 = (zeck_direct(i, t) for t in (0, 1, 2))
    m1 = c2 - c1
    if j == -1:
        return m1
    if j == -2:
        return c1 - c0
    return c0 - m1


# -- query library -------------------------------------------------------------------

_BASE_SCRIPT = r'''
reg lshift {0,1} {0,1} "([0,0]|[0,1][1,1]*[1,0])*":
reg rshift {0,1} {0,1} "([0,0]|[1,0][1,1]*[0,1])*(()|[1,0][1,1]*)":
reg lastbit1 msd_nara "(0|1)*1":
reg end1 msd_nara "(0+1)*1":
reg end30 {0,1} "(0|1)*1(000)*":
reg end31 {0,1} "(0|1)*1(000)*0":
reg end32 {0,1} "(0|1)*1(000)*00":
reg odd1 {0,1} "0*(10*10*)*10*":
'''

# name -> (query, count variable); compiled on first use
DEFINITIONS: dict[str, tuple[str, str | None]] = {
    "incr": ("?msd_nara j=i+1", None),
    "p0": ("?msd_nara Ex,y $lshift(j-1,x) & $lshift(x,y) & z=y+1", None),
    "p1": ("?msd_nara Ex,y,t $lshift(j-1,x) & $lshift(x,y) & $lshift(y,t) & z=t+2", None),
    "p2": ("?msd_nara Ex,y,t,u $lshift(j-1,x) & $lshift(x,y) & $lshift(y,t) & $lshift(t,u) & z=u+3", None),
    "p02": ("?msd_nara Ex $lshift(j-1,x) & z=x+1", None),
    "a": ("?msd_nara $p02(j,x)", None),
    "b": ("?msd_nara $p1(j,x)", None),
    "h": ("?msd_nara Ex $rshift(i,x) & ((z=x+1 & $lastbit1(i)) | (z=x & ~$lastbit1(i)))", None),
    "firstocc": ("?msd_nara $h(x,n) & ~$h(x-1,n)", None),
    "htwo": ("?msd_nara Ex,y x<y & $h(x,n) & $h(y,n)", None),
    "hone": ("?msd_nara ~$htwo(n)", None),
    "sone": ("?msd_nara S[i]=@1", None),
    "stwo": ("?msd_nara S[i]=@2", None),
    "ja": ("?msd_nara $odd1(n) & n>=0", None),
    "col0": ("?msd_nara $p1(i+1,z+1)", None),
    "col1": ("?msd_nara Ex $col0(i,x) & $lshift(x,z)", None),
    "col2": ("?msd_nara Ex $col1(i,x) & $lshift(x,z)", None),
    "colm1": ("?msd_nara Ex,y $col2(i,x) & $col1(i,y) & z+y=x", None),
    "colm2": ("?msd_nara Ex,y $col1(i,x) & $col0(i,y) & z+y=x", None),
    "colm3": ("?msd_nara Ex,y $col0(i,x) & $colm1(i,y) & z+y=x", None),
    "s02": ("?msd_nara En n>=1 & $p02(n,x)", None),
    "s0": ("?msd_nara En n>=1 & $p0(n,x)", None),
    "s1": ("?msd_nara En n>=1 & $p1(n,x)", None),
    "s2": ("?msd_nara En n>=1 & $p2(n,x)", None),
}

COMBINES: dict[str, list[tuple[str, int]]] = {
    "S": [("htwo", 2), ("hone", 1)],
    "JA": [("ja", 1)],
}

_LIB: Registry | None = None
_LIB_LOCK = threading.Lock()
_EXTENSIONS: list = []


def register_extension(fn) -> None:
    """Let other modules add lazy entries to the shared library."""
    _EXTENSIONS.append(fn)
    if _LIB is not None:
        fn(_LIB)


def add_lazy_definitions(reg: Registry, defs: dict[str, tuple[str, str | None]]) -> None:
    for name, (query, count_var) in defs.items():
        reg.lazy[name] = functools.partial(_define, name=name, query=query, count_var=count_var)


def _define(reg: Registry, name: str, query: str, count_var: str | None) -> None:
    reg.define(name, query, count_var)


def _combine(reg: Registry, name: str, parts) -> None:
    reg.combine(name, parts)


def library() -> Registry:
    """Shared registry with NA, the regular relations and the definitions above."""
    global _LIB
    with _LIB_LOCK:
        if _LIB is None:
            reg = Registry()
            reg.add_sequence("NA", na_dfao())
            run_script(_BASE_SCRIPT, reg)
            add_lazy_definitions(reg, DEFINITIONS)
            for name, parts in COMBINES.items():
                reg.lazy[name] = functools.partial(_combine, name=name, parts=parts)
            reg.lazy["a202341"] = _learn_a202341
            reg.lazy["a202342"] = _learn_a202342
            for fn in _EXTENSIONS:
                fn(reg)
            _LIB = reg
    return _LIB


def synchronized(name: str) -> Automaton:
    """Automaton of a named library relation (tracks in argument order as registered)."""
    return library().relation(name).automaton


def sync_values(name: str, domain) -> np.ndarray:
    """f(i) for a synchronized library relation (i, f(i)); -1 where no unique value exists."""
    rel = library().relation(name)
    arg, res = rel.params
    dom = np.asarray(domain, dtype=np.int64)
    return fa.function_values(rel.automaton, arg, res, dom, 8 * int(dom.max(initial=1)) + 16)


# -- learned synchronized sequences ------------------------------------------------

def _learn_a202341(reg: Registry) -> None:
    _learn_indexed(reg, "a202341", a202341_values, "sone")


def _learn_a202342(reg: Registry) -> None:
    _learn_indexed(reg, "a202342", a202342_values, "stwo")


def _learn_indexed(reg: Registry, name: str, values_fn, member: str) -> None:
    """Guess the (n, x) automaton from data, then certify it with two queries."""
    from .learn import learn_relation
    from .logic import evaluate

    cache = {"table": values_fn(1024)}

    def oracle(n, x):
        table = cache["table"]
        while int(n.max(initial=0)) >= table.size:
            table = cache["table"] = values_fn(2 * table.size)
        return table[n] == x

    guess = learn_relation(oracle, ("n", "x"))
    reg.add_relation(name, guess, ("n", "x"))
    increasing = f"?msd_nara An,x,y (${name}(n,x) & ${name}(n+1,y)) => x<y"
    correct = f"?msd_nara An (Ex ${name}(x,n)) <=> ${member}(n)"
    if not (evaluate(increasing, reg) and evaluate(correct, reg)):
        del reg.relations[name]
        raise RuntimeError(f"learned automaton for {name} failed certification")
