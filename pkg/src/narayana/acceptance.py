"""The sixteen acceptance checks, runnable from pytest or the command line.

Each check returns a :class:`Outcome`.  Soft state-count comparisons go
into ``warnings`` and never flip the verdict; everything else does.
"""

from __future__ import annotations

import os
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from . import arith, estimates, oracle
from . import automata as fa
from . import sequences as sq
from . import wordlab as wl
from .numeration import TABLE, digits_matrix, shifted_values, values_from_matrix


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool = True
    details: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    seconds: float = 0.0
    skipped: bool = False

    def require(self, cond: bool, what: str) -> None:
        self.details.append(f"{'ok  ' if cond else 'FAIL'} {what}")
        self.passed &= bool(cond)

    def soft(self, got: int, expected: int, what: str) -> None:
        self.details.append(f"info {what}: {got} (reference {expected})")
        if got != expected:
            self.warnings.append(f"{what}: {got} states, reference count {expected}")

    def line(self) -> str:
        verdict = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        warn = f" [{len(self.warnings)} warning(s)]" if self.warnings else ""
        return f"[{verdict}] {self.number:2d}. {self.title} ({self.seconds:.1f}s){warn}"


CHECKS: dict[int, tuple[str, Callable[[Outcome, str], None]]] = {}


def check(number: int, title: str):
    def deco(fn):
        CHECKS[number] = (title, fn)
        return fn
    return deco


def _claims(out: Outcome, names) -> None:
    for name in names:
        res = wl.check_claim(name)
        out.require(res.ok, f"{name} = {res.verdict} (expected {res.expected})")


# -- 1 ---------------------------------------------------------------------------------


@check(1, "numeration round-trip and uniqueness")
def _numeration(out: Outcome, profile: str) -> None:
    top = 10 ** 6
    m = np.arange(top + 1)
    mat = digits_matrix(m)
    out.require(np.array_equal(values_from_matrix(mat), m), f"value(to_canonical(m)) = m for m <= {top}")
    no11 = not np.any(mat[:, 1:] & mat[:, :-1])
    no101 = not np.any(mat[:, 2:] & mat[:, :-2] & (1 - mat[:, 1:-1]))
    out.require(no11 and no101, "every representation avoids 11 and 101")
    # uniqueness: valid strings of length t are exactly N_t in number, one per value below N_t
    counts = [sum(1 for bits in product("01", repeat=t) if "11" not in "".join(bits) and "101" not in "".join(bits))
              for t in range(17)]
    out.require(counts == [TABLE[t] for t in range(17)], "#valid strings of length t = N_t (t <= 16)")
    sample = range(0, 20001)
    out.require(all(oracle.brute_canonical(k) == "".join(map(str, r)).lstrip("0")
                    for k, r in zip(sample, digits_matrix(np.array(sample)))),
                "agrees with the naive greedy expansion for m <= 20000")


# -- 2 ---------------------------------------------------------------------------------


@check(2, "adder: brute force and inductive certification")
def _adder(out: Outcome, profile: str) -> None:
    adder = arith.build_adder()
    bad = arith.brute_check_adder(adder, 2000)
    out.require(bad is None, f"x + y = z exactly for 0 <= x, y <= 2000 (first disagreement: {bad})")
    for name, ok in arith.certify_adder(adder).items():
        out.require(ok, f"certificate '{name}'")
    out.soft(adder.state_count(), 250, "minimized adder")


# -- 3 ---------------------------------------------------------------------------------


@check(3, "factor equality automaton for the Narayana word")
def _naraef(out: Outcome, profile: str) -> None:
    a = wl.relation("naraef")
    out.soft(a.state_count(), 71, "naraef")
    w = np.frombuffer(oracle.morphic_prefix(400).encode(), dtype=np.uint8)
    i, j, m = np.meshgrid(np.arange(301), np.arange(301), np.arange(51), indexing="ij")
    i, j, m = i.ravel(), j.ravel(), m.ravel()
    # expected: w[i:i+m] == w[j:j+m], via the first mismatch offset
    mism = np.full(i.size, 10 ** 6)
    for t in range(50, -1, -1):
        diff = w[np.minimum(i + t, 399)] != w[np.minimum(j + t, 399)]
        mism[diff] = t
    expected = mism >= m
    cols = {"i": i, "j": j, "m": m}
    got = fa.accepts_batch(a, [cols[t] for t in a.tracks])
    out.require(np.array_equal(got, expected), "semantics on all (i, j, m) <= (300, 300, 50)")


# -- 4 ---------------------------------------------------------------------------------


@check(4, "appearance function")
def _appearance(out: Outcome, profile: str) -> None:
    _claims(out, ["appearance_check"])
    w = oracle.morphic_prefix(6000)
    brute = {m: oracle.brute_appearance(w, m) for m in range(2, 501)}
    auto = wl.appearance_values(range(2, 501))
    out.require(brute == auto, "automaton A_m equals the brute scan for 2 <= m <= 500")
    bound = Fraction("3.61348")
    ratios = {m: Fraction(v, m) for m, v in brute.items()}
    worst = max(ratios, key=ratios.get)
    out.require(all(r <= bound for r in ratios.values()),
                f"A_m / m <= 3.61348 (max {float(ratios[worst]):.6f} at m = {worst})")
    slope = estimates.appearance_slope()
    out.require(slope.hi <= bound, f"alpha^2 + alpha enclosure {slope} lies below 3.61348")


# -- 5 ---------------------------------------------------------------------------------


def _critical_checks(out: Outcome, name: str) -> None:
    chain = wl.period_chain(name)
    out.require(not chain.bignm.is_empty(), f"{name}: pairs with m/p > 14/5 exist")
    rep = wl.sup_ratio(chain.bignm, 40)
    out.require(Fraction("2.8706") <= rep.best <= Fraction("2.8712"),
                f"{name}: max m/p over <= 40-digit pairs = {float(rep.best):.10f} at {rep.witness}")
    crit = estimates.critical_exponent()
    out.require(rep.best < crit.lo, f"{name}: approaches (alpha^2 + alpha + 5)/3 from below")
    above = wl.relation(wl.period_name(wl.word(name), 23, 8))
    out.require(above.is_empty(), f"{name}: no pairs with m/p > 23/8 (exponent <= 2.875)")


def _family_checks(out: Outcome) -> None:
    """The 14/5 pairs of NA are exactly four regular families with closed-form ratios."""
    fam = wl.bignm_families()
    big = wl.period_chain("NA").bignm
    same = fa.product(big, fam, "xor").is_empty()
    out.require(same, "NA: pairs with m/p > 14/5 are exactly the four families")
    ratios = {Fraction(m, p) for m, p in fa.enumerate_accepted(fam, 40)}
    closed = {f for n in range(6) for f in wl.critical_fractions(n)}
    crit = estimates.critical_exponent()
    out.require(closed <= ratios and all(r < crit.lo for r in ratios),
                f"NA: family ratios include the closed forms for n <= 5, all below the exponent")


@check(5, "critical exponent of the Narayana word")
def _critical(out: Outcome, profile: str) -> None:
    crit = estimates.critical_exponent()
    printed = Fraction("2.871156755860")
    out.require(abs(crit.mid - printed) < Fraction(1, 10 ** 12),
                f"(alpha^2 + alpha + 5)/3 in {crit} rounds to 2.871156755860")
    _critical_checks(out, "NA")
    _family_checks(out)
    out.soft(wl.relation("nara_isaper").state_count(), 882, "nara_isaper")


# -- 6 ---------------------------------------------------------------------------------


@check(6, "subword complexity 2n+1")
def _complexity(out: Outcome, profile: str) -> None:
    equal, r1, r2 = wl.same_counts("nara_novel", "a2n1")
    out.require(equal and r1 == r2 == 12, f"novel-factor count and 2n+1 agree (ranks {r1}, {r2})")
    w = oracle.morphic_prefix(4000)
    counts = oracle.brute_complexity(w, 200)
    out.require(all(counts[n] == 2 * n + 1 for n in range(201)), "brute factor count = 2n+1 for n <= 200")


# -- 7 ---------------------------------------------------------------------------------


@check(7, "palindromes")
def _palindromes(out: Outcome, profile: str) -> None:
    expected = {"0", "1", "2", "00", "010", "101"}
    got = set(wl.palindromes(sq.na_prefix(10 ** 4), 12))
    out.require(got == expected, f"palindromic factors of length <= 12: {sorted(got, key=len)}")
    out.require(oracle.brute_palindromes(oracle.morphic_prefix(10 ** 4), 12) == expected, "naive scan agrees")


# -- 8 ---------------------------------------------------------------------------------

TABLE_POSITIONS = {
    "p0": [1, 4, 5, 7, 10, 13, 14, 17, 18, 20, 23, 24, 26, 29, 32, 33, 35, 38],
    "p1": [2, 6, 8, 11, 15, 19, 21, 25, 27, 30, 34, 36, 39, 43, 47, 49, 52, 56],
    "p2": [3, 9, 12, 16, 22, 28, 31, 37, 40, 44, 50, 53, 57, 63, 69, 72, 76, 82],
    "p02": [1, 3, 4, 5, 7, 9, 10, 12, 13, 14, 16, 17, 18, 20, 22, 23, 24, 26],
}


@check(8, "positions of letters")
def _positions(out: Outcome, profile: str) -> None:
    fns = {"p0": sq.p0, "p1": sq.p1, "p2": sq.p2, "p02": sq.p02}
    letters = {"p0": "0", "p1": "1", "p2": "2", "p02": "02"}
    w = oracle.morphic_prefix(200)
    for name, row in TABLE_POSITIONS.items():
        out.require([fns[name](j) for j in range(1, 19)] == row, f"{name}(1..18) matches the table")
        out.require(oracle.brute_positions(w, letters[name], 18) == row, f"{name}: naive positions agree")
    _claims(out, ["p0_test1", "p0_test2", "p1_test1", "p1_test2",
                  "p2_test1", "p2_test2", "p02_test1", "p02_test2"])


# -- 9 ---------------------------------------------------------------------------------


@check(9, "3-Zeckendorf array")
def _zeckendorf(out: Outcome, profile: str) -> None:
    rows = range(0, 1001)
    P0 = {i: sq.p0(i + 1) for i in rows}
    P1 = {i: sq.p1(i + 1) for i in rows}
    P2 = {i: sq.p2(i + 1) for i in rows}
    P02 = {i: sq.p02(i + 1) for i in rows}
    props = {
        "a": (-3, lambda i: i),
        "b": (-2, lambda i: P02[i]),
        "c": (-1, lambda i: P0[i]),
        "d": (0, lambda i: P1[i] - 1),
        "e": (1, lambda i: P2[i] - 1),
        "f": (2, lambda i: P0[i] + P2[i] - 1),
        "g": (3, lambda i: P0[i] + P1[i] + P2[i] - 2),
        "h": (4, lambda i: P0[i] + P1[i] + 2 * P2[i] - 3),
        "i": (5, lambda i: 2 * P0[i] + P1[i] + 3 * P2[i] - 4),
        "j": (6, lambda i: 3 * P0[i] + 2 * P1[i] + 4 * P2[i] - 6),
        "k": (7, lambda i: 4 * P0[i] + 3 * P1[i] + 6 * P2[i] - 9),
    }
    for part, (j, f) in props.items():
        out.require(all(sq.zeck_direct(i, j) == f(i) for i in rows), f"({part}) column {j} for i <= 1000")
    cols = range(-3, 11)
    closed = all(sq.zeck(i, j) == sq.zeck_direct(i, j) for i in rows for j in cols)
    out.require(closed, "closed form equals the array for -3 <= j <= 10, i <= 1000")
    brute = oracle.brute_zeck(60, cols)
    out.require(brute == [[sq.zeck(i, j) for j in cols] for i in range(60)], "naive array agrees (60 rows)")
    _claims(out, ["col0_ends_in_1", "parta", "partb", "partc", "parte"])


# -- 10 --------------------------------------------------------------------------------


@check(10, "additive number theory on positions")
def _sumsets(out: Outcome, profile: str) -> None:
    _claims(out, ["two_P02", "two_P0", "three_P1", "three_P2"])
    for kind in ("P1", "P2"):
        out.require(wl.nonmember_family_disjoint(kind), f"no member of the {kind} family lies in {kind}+{kind}")
    limit = 10 ** 6
    j = np.arange(400_000)
    members = {"P1": shifted_values(j, 3) + 2, "P2": shifted_values(j, 4) + 3}
    for kind in ("P1", "P2"):
        fam = [n for n in wl.nonmember_family_values(kind, 7) if n <= limit]
        mem = members[kind]
        naive = [bool(np.isin(n - mem[mem <= n], mem).any()) for n in fam]
        auto = fa.accepts_batch(wl.relation(f"two_{kind}"), [np.array(fam)])
        out.require(not any(naive) and not auto.any(),
                    f"{kind} family i <= 6 ({fam}) rejected by the automaton and the naive sumset")
    # thresholds are sharp
    p02 = [sq.p02(j) for j in range(1, 60)]
    p0 = [sq.p0(j) for j in range(1, 60)]
    out.require(3 not in oracle.brute_sumset(p02, 2, 100), "3 is not in P02 + P02")
    out.require(16 not in oracle.brute_sumset(p0, 2, 100), "16 is not in P0 + P0")


# -- 11 --------------------------------------------------------------------------------


@check(11, "Kimberling-Moses")
def _km(out: Outcome, profile: str) -> None:
    _claims(out, ["item_i", "item_ii", "item_iii", "item_iv", "item_v"])
    for rep in estimates.verify_km(10 ** 6):
        out.require(rep.ok, " ".join(rep.lines()))
    a_list, b_list = oracle.brute_ab_classification(3000)
    out.require(a_list[:100] == [sq.a(j) for j in range(1, 101)] and
                b_list[:100] == [sq.b(j) for j in range(1, 101)], "a and b agree with the suffix rule")


# -- 12 --------------------------------------------------------------------------------


@check(12, "abelian squares and cubes")
def _abelian(out: Outcome, profile: str) -> None:
    _claims(out, ["absquare"])
    w = oracle.morphic_prefix(10 ** 5)
    for order in (3, 4, 5, 6, 7):
        out.require(oracle.brute_abelian(w, 3, order) is not None, f"abelian cube of order {order} in a 10^5 prefix")
    if profile == "extended":
        from .config import CONFIG

        saved = CONFIG.size_guard
        CONFIG.size_guard = 10 ** 9
        try:
            yes, no = wl.cube_orders(17)
        finally:
            CONFIG.size_guard = saved
        out.require(yes[:8] == [3, 4, 5, 6, 7, 9, 10, 13] and no[:7] == [1, 2, 8, 11, 12, 14, 16],
                    f"membership automaton orders: with {yes}, without {no}")
    else:
        out.details.append("info abscube membership automaton runs in the extended profile only")


# -- 13 --------------------------------------------------------------------------------


@check(13, "balance")
def _balance(out: Outcome, profile: str) -> None:
    _claims(out, ["bal30", "bal31", "bal32"])
    rep = wl.balance_check(2)
    out.require(not all(rep.balanced.values()), "the word is not 2-balanced")
    pair = ("00120010120010", "12012001012012")
    out.require(rep.witness is not None and wl.imbalance(*rep.witness) > 2, f"witness {rep.witness}")
    w = oracle.morphic_prefix(10 ** 4)
    out.require(pair[0] in w and pair[1] in w and wl.imbalance(*pair) == 3, "the reference pair is a witness")
    ok, brute = oracle.brute_balance(w[:3000], 2, 30)
    out.require(not ok and set(brute) == set(pair), f"naive shortest witness {brute}")


# -- 14 --------------------------------------------------------------------------------


@check(14, "Hofstadter H and A202340")
def _hofstadter(out: Outcome, profile: str) -> None:
    top = 10 ** 6
    out.require(np.array_equal(sq.h_values(top + 1), np.array(oracle.brute_h(top))), "h = H for i <= 10^6")
    for rep in estimates.verify_cloitre(top):
        out.require(rep.ok, " ".join(rep.lines()))
    _claims(out, ["irvine"])
    rho = wl.complexity(sq.s_values(200_000), 1000)
    out.require(all(rho[n] == 2 * n for n in range(1, 1001)), "S has 2n factors of length n, 1 <= n <= 1000")
    _critical_checks(out, "S")


# -- 15 --------------------------------------------------------------------------------


@check(15, "Allouche-Johnson word")
def _ja(out: Outcome, profile: str) -> None:
    _claims(out, ["jaef_correct1", "jaef_correct2", "jaef_correct3", "jack0", "jack1", "jack2", "jack3"])
    d = wl.complexity_differences(sq.aj_prefix, 201)
    diffs = {int(x) for x in d[4:201]}
    out.require(diffs <= {10, 12}, f"rho(n+1) - rho(n) in {{10, 12}} for 4 <= n <= 200 (seen {sorted(diffs)})")
    _claims(out, ["j0_sum", "j1_sum"])
    w = oracle.brute_aj(200)
    j0 = [i for i, c in enumerate(w) if c == "0"]
    j1 = [i for i, c in enumerate(w) if c == "1"]
    out.require(9 not in oracle.brute_sumset(j0, 2, 50), "9 is not in J0 + J0 (threshold 10 is sharp)")
    out.require(1 not in oracle.brute_sumset(j1, 2, 50), "1 is not in J1 + J1 (threshold 2 is sharp)")


# -- 16 --------------------------------------------------------------------------------


@check(16, "x_k conjecture scans (evidence, not proof)")
def _scans(out: Outcome, profile: str) -> None:
    k1 = wl.conjecture_scan(1, 200)
    out.require(k1.differences <= {2, 4}, f"k=1: differences {sorted(k1.differences)}")
    out.require(wl.ftm_check(10 ** 5), "k=2: no factor of length 2n+2 and period n in a 10^5 prefix")
    k4 = wl.conjecture_scan(4, 200)
    out.require(k4.max_exponent <= 5, f"k=4: max exponent {k4.max_exponent} at (length, period) {k4.exponent_witness}")
    out.require(k4.long_factor is None, "k=4: no factor of length >= 2p + 4")
    out.details.append(f"info k=4 first differences {sorted(k4.differences)}; {k4.note}")


# -- driver ----------------------------------------------------------------------------


def run(number: int, profile: str | None = None) -> Outcome:
    profile = profile or os.environ.get("NARAYANA_PROFILE", "quick")
    title, fn = CHECKS[number]
    out = Outcome(number, title)
    start = time.perf_counter()
    fn(out, profile)
    out.seconds = time.perf_counter() - start
    return out


def run_all(profile: str = "quick", numbers=None, echo: Callable[[str], None] | None = None) -> list[Outcome]:
    results = []
    for n in numbers or sorted(CHECKS):
        res = run(n, profile)
        results.append(res)
        if echo:
            echo(res.line())
            for d in res.details:
                echo("      " + d)
            for w in res.warnings:
                echo("      warning: " + w)
    return results
