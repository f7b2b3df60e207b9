"""Narayana numbers and the canonical Narayana numeration system.

Representations are plain strings over ``"01"``, most significant digit
first.  The empty string represents 0.
"""

from __future__ import annotations

import bisect
import threading

import numpy as np

Representation = str


class NarayanaTable:
    """Growable cache of N_i for i >= -2 (arbitrary precision)."""

    def __init__(self, upto: int = 120):
        self._lock = threading.Lock()
        self._values = [1, 1, 1]  # N_{-2}, N_{-1}, N_0
        self.extend(upto)

    def extend(self, upto: int) -> None:
        if upto + 2 < len(self._values):
            return
        with self._lock:
            vals = list(self._values)
            while len(vals) <= upto + 2:
                vals.append(vals[-1] + vals[-3])
            self._values = vals

    def __getitem__(self, i: int) -> int:
        if i < -2:
            raise ValueError(f"Narayana index must be >= -2, got {i}")
        if i + 2 >= len(self._values):
            self.extend(max(i, 2 * len(self._values)))
        return self._values[i + 2]

    def nonnegative(self) -> list[int]:
        return self._values[2:]


TABLE = NarayanaTable()


def narayana(i: int) -> int:
    """Return N_i, with N_{-2} = N_{-1} = N_0 = 1 and N_i = N_{i-1} + N_{i-3}."""
    return TABLE[i]


def value(digits: Representation) -> int:
    """Weighted digit sum of ``digits``; leading zeros and non-canonical input allowed."""
    t = len(digits)
    if t:
        TABLE.extend(t)
    vals = TABLE.nonnegative()
    total = 0
    for pos, ch in enumerate(digits):
        if ch == "1":
            total += vals[t - 1 - pos]
        elif ch != "0":
            raise ValueError(f"not a binary digit string: {digits!r}")
    return total


def to_canonical(m: int) -> Representation:
    """Greedy (canonical) representation of ``m``."""
    if m < 0:
        raise ValueError("only non-negative integers have representations")
    if m == 0:
        return ""
    while TABLE[len(TABLE.nonnegative()) - 1] <= m:
        TABLE.extend(2 * len(TABLE.nonnegative()))
    vals = TABLE.nonnegative()
    top = bisect.bisect_right(vals, m) - 1
    digits = ["0"] * (top + 1)
    rem = m
    j = top
    while rem:
        j = bisect.bisect_right(vals, rem, 0, j + 1) - 1
        digits[top - j] = "1"
        rem -= vals[j]
    return "".join(digits)


def is_canonical(digits: Representation) -> bool:
    """True iff ``digits`` is the canonical representation of its value."""
    if digits.startswith("0"):
        return False
    return is_valid(digits)


def is_valid(digits: Representation) -> bool:
    """Canonical up to leading zeros: no factor 11 and no factor 101."""
    return "11" not in digits and "101" not in digits


def normalize(digits: Representation) -> Representation:
    return to_canonical(value(digits))


def pad(digits: Representation, length: int) -> Representation:
    if len(digits) > length:
        raise ValueError(f"{digits!r} is longer than {length}")
    return "0" * (length - len(digits)) + digits


def prefix_parikh(i: int) -> tuple[int, int, int]:
    """Letter counts of the length-``i`` prefix of the Narayana word.

    Uses the representation of ``i`` directly: with (i)_N = e_1 ... e_j,
    the number of 0s is [e_1 .. e_{j-2}] + e_{j-1} + e_j, and similarly for
    1s and 2s with the window shifted one and two places left.
    """
    rep = to_canonical(i)
    j = len(rep)

    def e(k: int) -> int:
        return 1 if 1 <= k <= j and rep[k - 1] == "1" else 0

    def head(upto: int) -> int:
        return value(rep[: max(upto, 0)])

    zeros = head(j - 2) + e(j - 1) + e(j)
    ones = head(j - 3) + e(j - 2) + e(j - 1)
    twos = head(j - 4) + e(j - 3) + e(j - 2)
    return zeros, ones, twos


def decomposition(i: int) -> list[int]:
    """Indices d_1 > d_2 > ... with i = sum N_{d_k} (canonical)."""
    rep = to_canonical(i)
    t = len(rep)
    return [t - 1 - pos for pos, ch in enumerate(rep) if ch == "1"]


# -- vectorised helpers -------------------------------------------------------

def digits_matrix(values, length: int | None = None) -> np.ndarray:
    """Canonical digits of many values as an (n, length) uint8 array, msd first."""
    vals = np.asarray(values, dtype=np.int64)
    if vals.size and vals.min() < 0:
        raise ValueError("negative value")
    top = int(vals.max()) if vals.size else 0
    width = 0
    while TABLE[width] <= top:
        width += 1
    if length is None:
        length = width
    if length < width:
        raise ValueError(f"values need {width} digits, only {length} requested")
    out = np.zeros((vals.size, length), dtype=np.uint8)
    rem = vals.copy()
    for j in range(width - 1, -1, -1):
        nj = TABLE[j]
        take = rem >= nj
        out[take, length - 1 - j] = 1
        rem[take] -= nj
    return out


def values_from_matrix(digits: np.ndarray) -> np.ndarray:
    """Inverse of :func:`digits_matrix` (any digit strings, int64 result)."""
    length = digits.shape[1]
    weights = np.array([TABLE[length - 1 - p] for p in range(length)], dtype=np.int64)
    return digits.astype(np.int64) @ weights


def shifted_values(values, zeros: int) -> np.ndarray:
    """[(v)_N 0^zeros]_N for each v (vectorised)."""
    mat = digits_matrix(values)
    width = mat.shape[1]
    weights = np.array([TABLE[width - 1 - p + zeros] for p in range(width)], dtype=np.int64)
    return mat.astype(np.int64) @ weights
