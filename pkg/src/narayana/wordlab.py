"""Analyses of infinite words: factors, periods, appearance, specials, abelian data.

Most results are first-order queries over a word's DFAO, compiled through
the shared :func:`narayana.sequences.library`.  The numeric helpers at the
bottom work on finite prefixes and serve the bounded scans and
cross-checks.
"""

from __future__ import annotations

import functools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import automata as fa
from . import sequences as sq
from ._kernels import longest_periodic
from .automata import Automaton
from .learn import FactorHasher, learn_relation
from .logic import Registry, compile_query, evaluate
from .numeration import TABLE, to_canonical, value
from .regex import compile_regex

# -- the words ------------------------------------------------------------------------


@dataclass(frozen=True)
class WordSpec:
    seq: str  # sequence name in the registry
    stem: str  # prefix of the derived relation names
    factor_eq: str
    alphabet: tuple[int, ...]
    prefix: object = field(compare=False)  # length -> numpy array


WORDS = {
    "NA": WordSpec("NA", "nara", "naraef", (0, 1, 2), sq.na_prefix),
    "S": WordSpec("S", "s", "sef", (1, 2), sq.s_values),
    "JA": WordSpec("JA", "ja", "jaef", (0, 1), sq.aj_prefix),
}


def word(name: str) -> WordSpec:
    try:
        return WORDS[name.upper()]
    except KeyError:
        raise ValueError(f"unknown word {name!r}; expected one of {sorted(WORDS)}") from None


def _factor_eq_query(seq: str) -> str:
    return f"?msd_nara Au,v (u>=i & u<i+m & u+j=v+i) => {seq}[u]={seq}[v]"


def _cascade(w: WordSpec) -> dict[str, tuple[str, str | None]]:
    """Period cascade, novelty and right-special definitions for one word."""
    ef, st, seq = w.factor_eq, w.stem, w.seq
    defs = {
        f"{st}_isaper": (f"?msd_nara p>0 & p<=m & ${ef}(i,i+p,m-p)", None),
        f"{st}_per": (f"?msd_nara ${st}_isaper(i,m,p) & Aq (q<p) => ~${st}_isaper(i,m,q)", None),
        f"{st}_lp": (f"?msd_nara Ei ${st}_per(i,m,p) & Aj,q ${st}_per(j,m,q) => q>=p", None),
        f"{st}_max": (f"?msd_nara ${st}_lp(m,p) & Aq (q>m) => ~${st}_lp(q,p)", None),
        f"{st}_novel": (f"?msd_nara Aj (j<i) => ~${ef}(i,j,n)", "n"),
        f"{st}_rs": (f"?msd_nara ${st}_novel(i,n) & Ej ${ef}(i,j,n) & {seq}[i+n]!={seq}[j+n]", "n"),
    }
    for c in w.alphabet:
        defs[f"{st}_rtspec{c}"] = (
            f"?msd_nara ${st}_novel(x,n) & {seq}[x+n-1]=@{c} & Ej ${ef}(x,j,n) & {seq}[x+n]!={seq}[j+n]", None)
    return defs


def period_name(w: WordSpec, num: int = 14, den: int = 5) -> str:
    return f"{w.stem}_big_{num}_{den}"


# -- library extension -------------------------------------------------------------

NA_DEFINITIONS: dict[str, tuple[str, str | None]] = {
    "has_all": ("?msd_nara Ai Ej j<=x & $naraef(i,j,m)", None),
    "app": ("?msd_nara $has_all(m,x) & Ay $has_all(m,y) => y>=x", None),
    "a2n1": ("?msd_nara i<2*n+1", "n"),
    "a2n": ("?msd_nara (i=0&n=0)|(n>0&i<2*n)", "n"),
    "pcount0": ("?msd_nara (i=0&x=0) | (i>=1 & Ey,z $p0(x,y) & $p0(x+1,z) & i>=y & i<z)", None),
    "pcount1": ("?msd_nara (i=0&x=0) | (i>=1 & Ey,z $p1(x,y) & $p1(x+1,z) & i>=y & i<z)", None),
    "pcount2": ("?msd_nara (i=0&x=0) | (i>=1 & Ey,z $p2(x,y) & $p2(x+1,z) & i>=y & i<z)", None),
    "count0": ("?msd_nara Ex,y $pcount0(i,x) & $pcount0(i+m,y) & z+x=y", None),
    "count1": ("?msd_nara Ex,y $pcount1(i,x) & $pcount1(i+m,y) & z+x=y", None),
    "count2": ("?msd_nara Ex,y $pcount2(i,x) & $pcount2(i+m,y) & z+x=y", None),
    "abeleq": ("?msd_nara Ex,y,z $count0(i,m,x) & $count0(j,m,x) & $count1(i,m,y) & $count1(j,m,y)"
               " & $count2(i,m,z) & $count2(j,m,z)", None),
    "abscube": ("?msd_nara Ei $abeleq(i,i+m,m) & $abeleq(i,i+2*m,m)", None),
    # sumsets; the pair sums state n=x+y explicitly
    "two_P02": ("?msd_nara Ex,y n=x+y & $s02(x) & $s02(y)", None),
    "two_P0": ("?msd_nara Ex,y n=x+y & $s0(x) & $s0(y)", None),
    "two_P1": ("?msd_nara Ex,y n=x+y & $s1(x) & $s1(y)", None),
    "two_P2": ("?msd_nara Ex,y n=x+y & $s2(x) & $s2(y)", None),
    "japer": ("?msd_nara p>0 & p<=n & $jaef(i,i+p,n-p)", None),
    "guess": ("?msd_nara (n=0&i<1)|(n=1&i<2)|(n=2&i<4)|(n=3&i<8)|"
              "(n>=4&$fdiff10(n)&i<10)|(n>=4&$fdiff12(n)&i<12)", "n"),
}

_REGEXES = r'''
reg five msd_nara msd_nara msd_nara msd_nara msd_nara
   "[0,0,0,0,0]*[1,0,0,0,0][0,1,0,0,0][0,0,1,0,0][0,0,0,1,0][0,0,0,0,1][0,0,0,0,0]*":
reg cube_examples msd_nara "0*(100)*1001":
reg cube_counterex msd_nara "0*(100)*00001":
'''


def _extend(reg: Registry) -> None:
    from .logic import run_script

    run_script(_REGEXES, reg)
    defs = dict(NA_DEFINITIONS)
    for w in WORDS.values():
        defs.update(_cascade(w))
        for num, den in ((14, 5), (23, 8)):
            defs[period_name(w, num, den)] = (f"?msd_nara ${w.stem}_max(m,p) & {den}*m>{num}*p", None)
        if w.seq != "JA":
            defs[w.factor_eq] = (_factor_eq_query(w.seq), None)
    sq.add_lazy_definitions(reg, defs)
    for c_name, letter in (("SP0", 0), ("SP1", 1)):
        parts = []
        for c in (0, 1, 2):
            name = f"rtspec{letter}{c}"
            reg.lazy[name] = functools.partial(
                sq._define, name=name, query=f"?msd_nara Ex $nara_rtspec{letter}(m+1,x) & NA[x]=@{c}",
                count_var=None)
            parts.append((name, c))
        reg.lazy[c_name] = functools.partial(sq._combine, name=c_name, parts=parts)
    reg.lazy["jaef"] = _learn_jaef
    reg.lazy["fdiff10"] = functools.partial(_learn_fdiff, value=10)
    reg.lazy["fdiff12"] = functools.partial(_learn_fdiff, value=12)
    reg.lazy["JA"] = lambda r: r.add_sequence("JA", sq.aj_dfao())


sq.register_extension(_extend)


def library() -> Registry:
    return sq.library()


# -- closed claims ------------------------------------------------------------------

# name -> (query, expected verdict)
CLAIMS: dict[str, tuple[str, bool]] = {
    # positions of letters
    "p0_test1": ("?msd_nara Aj,x,y (j>=1 & $p0(j,x) & $p0(j+1,y)) => x<y", True),
    "p0_test2": ("?msd_nara Ax (Ej j>=1 & $p0(j,x)) <=> NA[x-1]=@0", True),
    "p1_test1": ("?msd_nara Aj,x,y (j>=1 & $p1(j,x) & $p1(j+1,y)) => x<y", True),
    "p1_test2": ("?msd_nara Ax (Ej j>=1 & $p1(j,x)) <=> NA[x-1]=@1", True),
    "p1_test3": ("?msd_nara Aj,x,y (j>=1 & $p0(j,x) & $p1(j,y)) => y=x+j", True),
    "p2_test1": ("?msd_nara Aj,x,y (j>=1 & $p2(j,x) & $p2(j+1,y)) => x<y", True),
    "p2_test2": ("?msd_nara Ax (Ej j>=1 & $p2(j,x)) <=> NA[x-1]=@2", True),
    "p2_test3": ("?msd_nara Ax,y,z (Ej j>=1 & $p02(j,x) & $p1(j,y) & $p2(j,z)) => z=x+y", True),
    "p02_test1": ("?msd_nara Aj,x,y (j>=1 & $p02(j,x) & $p02(j+1,y)) => x<y", True),
    "p02_test2": ("?msd_nara Ax (Ej j>=1 & $p02(j,x)) <=> (NA[x-1]=@0 | NA[x-1]=@2)", True),
    # Zeckendorf columns
    "col0_ends_in_1": ("?msd_nara Ax (Ei $col0(i,x)) <=> $end1(x)", True),
    "parta": ("?msd_nara Ai $colm3(i,i)", True),
    "partb": ("?msd_nara Ai,x $colm2(i,x) <=> $p02(i+1,x)", True),
    "partc": ("?msd_nara Ai,x $colm1(i,x) <=> $p0(i+1,x)", True),
    "parte": ("?msd_nara Ai,x $col1(i,x) <=> (Ey $p2(i+1,y) & x+1=y)", True),
    # sumsets
    "two_P02": ("?msd_nara An (n>=4) => $two_P02(n)", True),
    "two_P0": ("?msd_nara An (n>=17) => $two_P0(n)", True),
    "three_P1": ("?msd_nara An (n>=27) => Ex,y,z n=x+y+z & $s1(x) & $s1(y) & $s1(z)", True),
    "three_P2": ("?msd_nara An (n>=140) => Ex,y,z n=x+y+z & $s2(x) & $s2(y) & $s2(z)", True),
    # Kimberling-Moses
    "check_p0": ("?msd_nara Ak (k>=1) => ((Ej j>=1 & $p0(j,k)) <=> $end30(k))", True),
    "check_p1": ("?msd_nara Ak (k>=1) => ((Ej j>=1 & $p1(j,k)) <=> $end31(k))", True),
    "check_p2": ("?msd_nara Ak (k>=1) => ((Ej j>=1 & $p2(j,k)) <=> $end32(k))", True),
    "item_i": ("?msd_nara Aj,x,y,z,w (j>=1 & $a(j,x) & $a(x,y) & $a(y,z) & $b(j,w)) => w=z+1", True),
    "item_ii": ("?msd_nara Aj,x,y,z (j>=1 & $a(j,x) & $a(x,y) & $b(j,z)) => z=y+j", True),
    "item_iii": ("?msd_nara Aj,x,y,z,w (j>=1 & $a(j,x) & $a(x,y) & $a(y,z) & $b(x,w)) => w=z+x", True),
    "item_iv": ("?msd_nara Aj,x,y,z (j>=1 & $a(j,x) & $b(j,y) & $a(y,z)) => z=x+y", True),
    "item_v": ("?msd_nara Aj,x,y,z (j>=1 & $a(j,x) & $b(j,y) & $b(x,z)) => z+1=x+y", True),
    "complementary": ("?msd_nara An (n>=1) => ((Ej j>=1 & $a(j,n)) <=> ~(Ej j>=1 & $b(j,n)))", True),
    # H and relatives
    "hcheck": ("?msd_nara Ai,x,y,z,w (i>=1 & $h(i-1,x) & $h(x,y) & $h(y,z) & $h(i,w)) => i=w+z", True),
    "every": ("?msd_nara An Ex $h(x,n)", True),
    "nothree": ("?msd_nara ~En,x,y,z x<y & y<z & $h(n,x) & $h(n,y) & $h(n,z)", True),
    "increasing1": ("?msd_nara An,x,y ($a202341(n,x) & $a202341(n+1,y)) => x<y", True),
    "correct1": ("?msd_nara An (Ex $a202341(x,n)) <=> $sone(n)", True),
    "increasing2": ("?msd_nara An,x,y ($a202342(n,x) & $a202342(n+1,y)) => x<y", True),
    "correct2": ("?msd_nara An (Ex $a202342(x,n)) <=> $stwo(n)", True),
    "check_a": ("?msd_nara An,x (n>=1) => ($p0(n,x) <=> $a202342(n-1,x))", True),
    "irvine": ("?msd_nara An,x,y (n>=1 & $p0(n,x) & $p1(n,y)) => x+n=y", True),
    "check_same": ("?msd_nara An,x (n>=1) => ($firstocc(n,x) <=> $a(n,x))", True),
    # the Narayana word
    "exist_rs_0": ("?msd_nara An (n>=1) => Ex $nara_rtspec0(n,x)", True),
    "exist_rs_1": ("?msd_nara An (n>=1) => Ex $nara_rtspec1(n,x)", True),
    "rs_suffix_check": ("?msd_nara An,x,y (n>=1 & $nara_rtspec0(n,x) & $nara_rtspec0(n+1,y)) => $naraef(x,y+1,n)",
                        True),
    "appearance_check": ("?msd_nara Am,t,d0,d1,v,w,x,y,z ($five(v,w,x,y,z) & $app(m,t) & d0=((z+2*x)-y)/3 & "
                         "d1=((y+2*w)-x)/3 & d0<m & m<=d1 & m>=2) => t+1=v", True),
    "absquare": ("?msd_nara Am Ei $abeleq(i,i+m,m)", True),
    "bal30": ("?msd_nara Ai,j,n,x,y ($count0(i,n,x) & $count0(j,n,y)) => (x>=y+3|y<=x+3)", True),
    "bal31": ("?msd_nara Ai,j,n,x,y ($count1(i,n,x) & $count1(j,n,y)) => (x>=y+3|y<=x+3)", True),
    "bal32": ("?msd_nara Ai,j,n,x,y ($count2(i,n,x) & $count2(j,n,y)) => (x>=y+3|y<=x+3)", True),
    # Allouche-Johnson
    "jaef_correct1": ("?msd_nara Ai,j $jaef(i,j,0)", True),
    "jaef_correct2": ("?msd_nara Ai,j,n $jaef(i,j,n) => ($jaef(i,j,n+1) <=> JA[i+n]=JA[j+n])", True),
    "jaef_correct3": ("?msd_nara Ai,j,n $jaef(i,j,n+1) => $jaef(i,j,n)", True),
    "jack0": ("?msd_nara Ai,p,n (p>0 & n>=4*p & $japer(i,n,p)) => p=1", True),
    "jack1": ("?msd_nara ~Ei,n,p $japer(i,n,p) & n>2*p+2", True),
    "jack2": ("?msd_nara ~Ei,n,p $japer(i,n,p) & n>2*p+1", False),
    "jack3": ("?msd_nara Am Ei,n,p (n>m) & $japer(i,n,p) & n=2*p+2", True),
    "j0_sum": ("?msd_nara An (n>=10) => Ei,j n=i+j & JA[i]=@0 & JA[j]=@0", True),
    "j1_sum": ("?msd_nara An (n>=2) => Ei,j n=i+j & JA[i]=@1 & JA[j]=@1", True),
}

CLAIM_GROUPS: dict[str, list[str]] = defaultdict(list)
for _name in CLAIMS:
    _group = ("positions" if _name.startswith(("p0", "p1", "p2")) else
              "zeckendorf" if _name.startswith(("col0", "part")) else
              "sumsets" if _name.startswith(("two", "three")) else
              "kimberling" if _name.startswith(("check_p", "item", "compl")) else
              "allouche" if _name.startswith(("ja", "j0", "j1")) else
              "balance" if _name.startswith("bal") else
              "hofstadter" if _name in ("hcheck", "every", "nothree", "increasing1", "correct1",
                                        "increasing2", "correct2", "check_a", "irvine", "check_same") else
              "narayana")
    CLAIM_GROUPS[_group].append(_name)


@dataclass
class ClaimResult:
    name: str
    verdict: bool
    expected: bool

    @property
    def ok(self) -> bool:
        return self.verdict == self.expected


def check_claim(name: str, reg: Registry | None = None) -> ClaimResult:
    query, expected = CLAIMS[name]
    return ClaimResult(name, evaluate(query, reg or library()), expected)


def relation(name: str) -> Automaton:
    return library().relation(name).automaton


# -- factor equality, learned for JA -----------------------------------------------------


class _PrefixCache:
    """Growing prefix of a word with factor hashes."""

    def __init__(self, generate, start: int = 1 << 12):
        self.generate = generate
        self.size = 0
        self.grow(start)

    def grow(self, need: int) -> None:
        if need <= self.size:
            return
        size = max(need, 2 * self.size)
        self.word = np.asarray(self.generate(size))
        self.hasher = FactorHasher(self.word)
        self.size = size


def _learn_jaef(reg: Registry) -> None:
    """Guess the JA factor-equality automaton and certify it by induction on n."""
    cache = _PrefixCache(sq.aj_prefix)

    def oracle(i, j, n):
        cache.grow(int(np.max(np.maximum(i, j) + n, initial=0)) + 1)
        return cache.hasher.equal(i, j, n)

    guess = learn_relation(oracle, ("i", "j", "n"))
    reg.add_relation("jaef", guess, ("i", "j", "n"), source="learned")
    if not all(check_claim(c, reg).ok for c in ("jaef_correct1", "jaef_correct2", "jaef_correct3")):
        del reg.relations["jaef"]
        raise RuntimeError("learned jaef failed certification")


def _learn_fdiff(reg: Registry, value: int) -> None:
    """n with rho(n+1) - rho(n) = value for JA (n >= 4), learned from counts."""
    cache: dict[str, np.ndarray] = {"d": complexity_differences(sq.aj_prefix, 64)}

    def oracle(n):
        while int(n.max(initial=0)) >= cache["d"].size:
            cache["d"] = complexity_differences(sq.aj_prefix, 2 * cache["d"].size)
        return (n >= 4) & (cache["d"][n] == value)

    reg.add_relation(f"fdiff{value}", learn_relation(oracle, ("n",)), ("n",), source="learned")


# -- word-level analyses -------------------------------------------------------------


def factor_eq(name: str) -> Automaton:
    return relation(word(name).factor_eq)


@dataclass
class PeriodChain:
    isaper: Automaton
    per: Automaton
    lp: Automaton
    maxp: Automaton
    bignm: Automaton


def period_chain(name: str, ratio: tuple[int, int] = (14, 5)) -> PeriodChain:
    w = word(name)
    st = w.stem
    return PeriodChain(relation(f"{st}_isaper"), relation(f"{st}_per"), relation(f"{st}_lp"),
                       relation(f"{st}_max"), relation(period_name(w, *ratio)))


@dataclass
class RatioReport:
    best: Fraction
    witness: tuple[int, int]
    running: list[tuple[int, Fraction]]  # (digits, best ratio with at most that many digits)


def sup_ratio(pairs: Automaton, digit_bound: int, num: str = "m", den: str = "p") -> RatioReport:
    """Largest num/den over accepted pairs with at most ``digit_bound`` digits."""
    if set(pairs.tracks) != {num, den}:
        raise ValueError(f"expected tracks {num!r} and {den!r}")
    live = fa.coreachable(pairs)
    ti, tj = pairs.tracks.index(num), pairs.tracks.index(den)
    # frontier: state -> set of (num, den) digit strings read so far, packed as ints
    frontier = {pairs.initial: {(0, 0)}} if live[pairs.initial] else {}
    best_by_len: list[tuple[int, Fraction]] = []
    best, witness = None, None
    for length in range(1, digit_bound + 1):
        nxt: dict[int, set] = defaultdict(set)
        for q, vals in frontier.items():
            for s in range(pairs.delta.shape[1]):
                r = int(pairs.delta[q, s])
                if not live[r]:
                    continue
                di, dj = (s >> ti) & 1, (s >> tj) & 1
                nxt[r].update(((x << 1) | di, (y << 1) | dj) for x, y in vals)
        frontier = nxt
        for q, vals in frontier.items():
            if not pairs.accept[q]:
                continue
            for x, y in vals:
                m, p = _value(x, length), _value(y, length)
                if p > 0:
                    f = Fraction(m, p)
                    if best is None or f > best:
                        best, witness = f, (m, p)
        if best is not None:
            best_by_len.append((length, best))
    if best is None:
        raise ValueError("no accepted pair with a nonzero denominator")
    return RatioReport(best, witness, best_by_len)


def _value(bits: int, length: int) -> int:
    return sum(TABLE[length - 1 - p] for p in range(length) if (bits >> (length - 1 - p)) & 1)


def bignm_families() -> Automaton:
    """The four (m, p) families observed for the Narayana word's maximal repetitions."""
    pattern = ("[0,0]*[1,0][0,0][0,1][1,0][0,0]^7([1,0][0,0]^3)*"
               "(()|[0,0]|[0,0][1,0]|[0,0][1,0][0,0])")
    return fa.intersect_valid(compile_regex(pattern, ("m", "p")))


def critical_fractions(n: int) -> list[Fraction]:
    """The four simplified fractions (index n) approaching the critical exponent from below."""
    N = TABLE
    return [Fraction(N[4 * n + 14] + N[4 * n + 13] + 5 * N[4 * n + 12] - 4, 3 * N[4 * n + 12]),
            Fraction(N[4 * n + 15] + N[4 * n + 14] + 5 * N[4 * n + 13] - 5, 3 * N[4 * n + 13]),
            Fraction(N[4 * n + 16] + N[4 * n + 15] + 5 * N[4 * n + 14] - 4, 3 * N[4 * n + 14]),
            Fraction(N[4 * n + 17] + N[4 * n + 16] + 5 * N[4 * n + 15] - 5, 3 * N[4 * n + 15])]


# appearance


@dataclass
class AppearanceReport:
    closed_query: bool
    values: dict[int, int]  # m -> A_m from the automaton
    max_ratio: Fraction
    argmax: int


def appearance_values(ms) -> dict[int, int]:
    """A_m read off the synchronized automaton ``app``."""
    ms = np.asarray(list(ms), dtype=np.int64)
    vals = fa.function_values(relation("app"), "m", "x", ms, 4 * int(ms.max(initial=1)) + 32)
    return dict(zip(ms.tolist(), vals.tolist()))


def appearance(m_max: int = 500, run_closed: bool = True) -> AppearanceReport:
    ms = range(2, m_max + 1)
    vals = appearance_values(ms)
    ratios = {m: Fraction(v, m) for m, v in vals.items()}
    arg = max(ratios, key=ratios.get)
    closed = check_claim("appearance_check").ok if run_closed else False
    return AppearanceReport(closed, vals, ratios[arg], arg)


def appearance_closed_form(m: int) -> int:
    """A_m = N_{i+4} - 1 where D_i < m <= D_{i+1} (m >= 2)."""
    N = TABLE

    def D(i):
        return (N[i] - N[i + 1] + 2 * N[i + 2]) // 3

    i = 0
    while not (D(i) < m <= D(i + 1)):
        i += 1
    return N[i + 4] - 1


# palindromes and right-special factors


def palindromes(prefix: np.ndarray, max_len: int) -> list[str]:
    """Distinct nonempty palindromic factors of length <= max_len in ``prefix``."""
    w = "".join(map(str, np.asarray(prefix)))
    found = set()
    for n in range(1, max_len + 1):
        for i in range(len(w) - n + 1):
            f = w[i:i + n]
            if f == f[::-1]:
                found.add(f)
    return sorted(found, key=lambda s: (len(s), s))


def sp_prefix(name: str, length: int) -> list[int]:
    dfao = library().sequence(name)
    return [dfao.run(to_canonical(j)) for j in range(length)]


# abelian structure and balance


def cube_orders(bound: int) -> tuple[list[int], list[int]]:
    """Orders below ``bound`` with / without abelian cubes, from the automaton (expensive)."""
    a = relation("abscube")
    ok = fa.accepts_batch(a, [np.arange(1, bound)])
    orders = list(range(1, bound))
    return [m for m, y in zip(orders, ok) if y], [m for m, y in zip(orders, ok) if not y]


def letter_counts(prefix: np.ndarray, alphabet=(0, 1, 2)) -> np.ndarray:
    """Prefix sums: counts[c][i] = occurrences of letter c in prefix[:i]."""
    w = np.asarray(prefix)
    return np.stack([np.concatenate([[0], np.cumsum(w == c)]) for c in alphabet])


def abelian_power_orders(prefix: np.ndarray, power: int, max_order: int, alphabet=(0, 1, 2)) -> list[int]:
    """Orders m <= max_order for which the prefix has an abelian power-th power of order m."""
    counts = letter_counts(prefix, alphabet)
    n = len(prefix)
    found = []
    for m in range(1, max_order + 1):
        starts = np.arange(0, n - power * m + 1)
        if starts.size == 0:
            break
        ok = np.ones(starts.size, dtype=bool)
        for c in range(len(alphabet)):
            first = counts[c][starts + m] - counts[c][starts]
            for t in range(1, power):
                blk = counts[c][starts + (t + 1) * m] - counts[c][starts + t * m]
                ok &= blk == first
        if ok.any():
            found.append(m)
    return found


@dataclass
class BalanceReport:
    k: int
    balanced: dict[int, bool]  # letter -> verdict
    witness: tuple[str, str] | None = None


def balance_query(letter: int, k: int) -> str:
    return (f"?msd_nara Ai,j,n,x,y ($count{letter}(i,n,x) & $count{letter}(j,n,y)) "
            f"=> (x>=y+{k}|y<=x+{k})")


def balance_check(k: int) -> BalanceReport:
    """k-balance of the Narayana word per letter, with a shortest counterexample pair."""
    rep = BalanceReport(k, {})
    for c in (0, 1, 2):
        rep.balanced[c] = evaluate(balance_query(c, k), library())
        if not rep.balanced[c] and rep.witness is None:
            bad = compile_query(f"?msd_nara Ex,y $count{c}(i,n,x) & $count{c}(j,n,y) & y>x+{k}", library())
            tup = fa.shortest_accepted(bad)
            vals = dict(zip(bad.tracks, (value(s) for s in tup)))
            pre = sq.na_prefix(max(vals["i"], vals["j"]) + vals["n"] + 1)
            rep.witness = ("".join(map(str, pre[vals["i"]:vals["i"] + vals["n"]])),
                           "".join(map(str, pre[vals["j"]:vals["j"] + vals["n"]])))
    return rep


def is_factor(pattern: str, prefix: np.ndarray) -> bool:
    return pattern in "".join(map(str, np.asarray(prefix)))


def imbalance(u: str, v: str, alphabet="012") -> int:
    return max(abs(u.count(c) - v.count(c)) for c in alphabet)


# sumsets


def nonmember_family_values(kind: str, count: int) -> list[int]:
    """[(100)^i 100000]_N (i >= 0) for P1+P1, [1 (00)^i 1]_N (i >= 1) for P2+P2."""
    if kind == "P1":
        return [value("100" * i + "100000") for i in range(count)]
    if kind == "P2":
        return [value("1" + "00" * i + "1") for i in range(1, count + 1)]
    raise ValueError(kind)


def nonmember_family_disjoint(kind: str) -> bool:
    """Whole family (all i) avoids the sumset: regex intersect automaton is empty."""
    pattern = {"P1": "0*(100)*100000", "P2": "0*100(00)*1"}[kind]
    fam = fa.intersect_valid(compile_regex(pattern, ("n",)))
    two = relation(f"two_{kind}")
    return fa.product(fam, two, "and").is_empty()


# complexity and periodicity scans on prefixes


def factor_keys(prefix: np.ndarray, n: int, hasher: FactorHasher | None = None) -> np.ndarray:
    h = hasher or FactorHasher(prefix)
    starts = np.arange(0, len(prefix) - n + 1)
    a, b = h.hash(starts, np.full(starts.size, n))
    return (a << 31) | b


def complexity(prefix: np.ndarray, n_max: int) -> np.ndarray:
    """rho(n) for 0 <= n <= n_max as seen in ``prefix`` (a lower bound for the infinite word)."""
    h = FactorHasher(prefix)
    out = np.zeros(n_max + 1, dtype=np.int64)
    out[0] = 1
    for n in range(1, n_max + 1):
        out[n] = np.unique(factor_keys(prefix, n, h)).size
    return out


def complexity_differences(generate, n_max: int, factor: int = 60) -> np.ndarray:
    """d(n) = rho(n+1) - rho(n) for n < n_max, with a prefix long enough to be stable."""
    size = factor * (n_max + 2)
    rho = complexity(generate(size), n_max)
    rho2 = complexity(generate(2 * size), n_max)
    if not np.array_equal(rho, rho2):
        return complexity_differences(generate, n_max, 4 * factor)
    return np.diff(rho)


@dataclass
class ScanReport:
    k: int
    prefix_length: int
    max_exponent: Fraction
    exponent_witness: tuple[int, int]  # (length, period)
    long_factor: tuple[int, int] | None  # a factor with length >= 2p + k, if any
    differences: set[int]
    note: str = "bounded empirical evidence, not a proof"


def periodicity_profile(prefix: np.ndarray, max_period: int | None = None) -> np.ndarray:
    w = np.asarray(prefix, dtype=np.int64)
    top = max_period or len(w) // 2
    return longest_periodic(w, top)


def conjecture_scan(k: int, n_bound: int = 200, prefix_length: int = 100_000) -> ScanReport:
    w = sq.xk_prefix(k, prefix_length)
    best = periodicity_profile(w)
    ps = np.arange(1, best.size)
    ratios = [Fraction(int(best[p]), int(p)) for p in ps if best[p]]
    top = max(ratios)
    p_top = next(int(p) for p in ps if best[p] and Fraction(int(best[p]), int(p)) == top)
    long = next(((int(best[p]), int(p)) for p in ps if best[p] >= 2 * p + k), None)
    d = complexity_differences(lambda n: sq.xk_prefix(k, n), n_bound + 1)
    diffs = {int(x) for x in d[k + 2:n_bound + 1]}
    return ScanReport(k, prefix_length, top, (int(best[p_top]), p_top), long, diffs)


def ftm_check(prefix_length: int = 100_000) -> bool:
    """No factor of length 2n+2 with period n in a prefix of the k = 2 word."""
    best = periodicity_profile(sq.xk_prefix(2, prefix_length))
    return not any(best[p] >= 2 * p + 2 for p in range(1, best.size))


def max_exponent(prefix: np.ndarray) -> tuple[Fraction, int, int]:
    """Largest length/period over factors of the prefix, with (length, period)."""
    best = periodicity_profile(prefix)
    top, arg = Fraction(0), (0, 1)
    for p in range(1, best.size):
        if best[p]:
            f = Fraction(int(best[p]), p)
            if f > top:
                top, arg = f, (int(best[p]), p)
    return top, arg[0], arg[1]


# counting through linear representations


def counting_rep(name: str, reg: Registry | None = None):
    """Minimized linear representation of n -> #{i : rel(i, n)} for a counted definition."""
    from . import linrep

    rel = (reg or library()).relation(name)
    if rel.count_var is None:
        raise ValueError(f"{name} was not defined with a counting variable")
    counted = next(t for t in rel.automaton.tracks if t != rel.count_var)
    return linrep.minimize(linrep.count_track(rel.automaton, counted))


def same_counts(first: str, second: str) -> tuple[bool, int, int]:
    """(equal?, rank of first, rank of second) for two counted definitions."""
    from . import linrep

    a, b = counting_rep(first), counting_rep(second)
    return linrep.equal(a, b), a.dim, b.dim
