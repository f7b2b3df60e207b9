"""Naive reference implementations used to cross-check everything else.

Nothing here imports the rest of the package: each function recomputes
its answer straight from the definitions, trading speed for independence.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def narayana_list(count: int) -> list[int]:
    """[N_0, N_1, ..., N_{count-1}]."""
    ext = [1, 1, 1]
    while len(ext) < count + 2:
        ext.append(ext[-1] + ext[-3])
    return ext[2:count + 2]


def brute_canonical(m: int) -> str:
    """Greedy representation (the canonical one)."""
    ns = narayana_list(2)
    while ns[-1] <= m:
        ns = narayana_list(len(ns) + 1)
    out = []
    for w in reversed(ns[:-1]):
        if w <= m:
            out.append("1")
            m -= w
        else:
            out.append("0")
    return "".join(out).lstrip("0")


def brute_value(digits: str) -> int:
    ns = narayana_list(len(digits))
    return sum(ns[len(digits) - 1 - p] for p, ch in enumerate(digits) if ch == "1")


def morphic_prefix(length: int) -> str:
    """Prefix of the fixed point of 0 -> 01, 1 -> 2, 2 -> 0."""
    image = {"0": "01", "1": "2", "2": "0"}
    w = "0"
    while len(w) < length:
        w = "".join(image[c] for c in w)
    return w[:length]


def brute_aj(length: int) -> str:
    """Parity of the number of 1s in each canonical representation."""
    return "".join(str(brute_canonical(i).count("1") % 2) for i in range(length))


def brute_positions(word: str, letters: str, count: int) -> list[int]:
    """1-indexed positions of the first ``count`` occurrences of any of ``letters``."""
    out = [i + 1 for i, c in enumerate(word) if c in letters]
    if len(out) < count:
        raise ValueError("prefix too short")
    return out[:count]


def brute_factors(prefix: str, n: int) -> set[str]:
    return {prefix[i:i + n] for i in range(len(prefix) - n + 1)}


def brute_first_occurrences(prefix: str, n: int) -> dict[str, int]:
    seen: dict[str, int] = {}
    for i in range(len(prefix) - n + 1):
        seen.setdefault(prefix[i:i + n], i)
    return seen


def brute_appearance(prefix: str, m: int) -> int:
    """Largest first-occurrence position among the length-m factors of the prefix."""
    return max(brute_first_occurrences(prefix, m).values())


def smallest_period(f: str) -> int:
    for p in range(1, len(f) + 1):
        if all(f[t] == f[t + p] for t in range(len(f) - p)):
            return p
    return len(f)


def brute_exponent(prefix: str, max_len: int | None = None) -> tuple[Fraction, str]:
    """Largest |f| / per(f) over factors f (length <= max_len), with a witness factor."""
    best, witness = Fraction(0), ""
    top = max_len or len(prefix)
    for n in range(1, top + 1):
        for f in brute_factors(prefix, n):
            e = Fraction(n, smallest_period(f))
            if e > best:
                best, witness = e, f
    return best, witness


def brute_palindromes(prefix: str, max_len: int) -> set[str]:
    return {f for n in range(1, max_len + 1) for f in brute_factors(prefix, n) if f == f[::-1]}


def parikh(f: str, alphabet: str = "012") -> tuple[int, ...]:
    return tuple(f.count(c) for c in alphabet)


def brute_abelian(prefix: str, power: int, order: int, alphabet: str = "012") -> int | None:
    """First position of an abelian ``power``-power with blocks of length ``order``."""
    span = power * order
    for i in range(len(prefix) - span + 1):
        blocks = [parikh(prefix[i + t * order:i + (t + 1) * order], alphabet) for t in range(power)]
        if all(b == blocks[0] for b in blocks):
            return i
    return None


def brute_balance(prefix: str, k: int, max_len: int | None = None,
                  alphabet: str = "012") -> tuple[bool, tuple[str, str] | None]:
    """Whether equal-length factors differ by at most k in every letter count.

    The witness is a pair from the shortest failing length.
    """
    top = max_len or len(prefix) // 2
    for n in range(1, top + 1):
        fs = sorted(brute_factors(prefix, n))
        for u, v in combinations(fs, 2):
            if any(abs(x - y) > k for x, y in zip(parikh(u, alphabet), parikh(v, alphabet))):
                return False, (u, v)
    return True, None


def brute_complexity(prefix: str, n_max: int) -> list[int]:
    return [len(brute_factors(prefix, n)) for n in range(n_max + 1)]


def brute_h(i_max: int) -> list[int]:
    """H(0) = 0, H(i) = i - H(H(H(i - 1)))."""
    H = [0] * (i_max + 1)
    for i in range(1, i_max + 1):
        H[i] = i - H[H[H[i - 1]]]
    return H


def brute_ab_classification(k_max: int) -> tuple[list[int], list[int]]:
    """Split 1..k_max by whether (k)_N ends in 1 0^t with t = 0 or 2 (mod 3)."""
    a_list, b_list = [], []
    for k in range(1, k_max + 1):
        rep = brute_canonical(k)
        t = len(rep) - len(rep.rstrip("0"))
        (a_list if t % 3 in (0, 2) else b_list).append(k)
    return a_list, b_list


def brute_sumset(members: list[int], parts: int, limit: int) -> set[int]:
    """All n <= limit that are sums of ``parts`` elements (repetition allowed)."""
    sums = {0}
    for _ in range(parts):
        sums = {x + y for x in sums for y in members if x + y <= limit}
    return sums


def brute_zeck(rows: int, cols: range) -> list[list[int]]:
    """3-Zeckendorf array: row i lists the column-shifts of the i-th number ending in 1.

    Columns with j < 0 are obtained by running z_{j} = z_{j+3} - z_{j+2} backwards.
    """
    enders = []
    k = 1
    while len(enders) < rows:
        if brute_canonical(k).endswith("1"):
            enders.append(k)
        k += 1
    hi = max(cols.stop, 3)
    out = []
    for x in enders:
        rep = brute_canonical(x)
        row = {j: brute_value(rep + "0" * j) for j in range(hi)}
        for j in range(-1, cols.start - 1, -1):
            row[j] = row[j + 3] - row[j + 2]
        out.append([row[j] for j in cols])
    return out
