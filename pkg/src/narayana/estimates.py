"""Exact interval numerics around alpha, the real root of X^3 - X^2 - 1.

Every enclosure is a pair of :class:`fractions.Fraction` endpoints rounded
outward to dyadic rationals, so verdicts never depend on floating point.
Comparisons that cannot be decided at the current precision are retried
with twice as many bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .config import CONFIG
from .numeration import TABLE, shifted_values
from .sequences import h_values

Number = int | Fraction


def _floor_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.floor(x * (1 << bits)), 1 << bits)


def _ceil_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.ceil(x * (1 << bits)), 1 << bits)


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] of rationals."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Number | str) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @staticmethod
    def _lift(x) -> "Interval":
        return x if isinstance(x, Interval) else Interval.point(x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def round(self, bits: int) -> "Interval":
        """Outward rounding to multiples of 2^-bits (keeps denominators small)."""
        return Interval(_floor_dyadic(self.lo, bits), _ceil_dyadic(self.hi, bits))

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        x = Fraction(x) if not isinstance(x, float) else Fraction(str(x))
        return self.lo <= x <= self.hi

    __contains__ = contains

    def __add__(self, other):
        o = self._lift(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other):
        return self._lift(other) * self.reciprocal()

    def __pow__(self, n: int):
        if n < 0:
            return (self ** -n).reciprocal()
        if n % 2 == 0 and self.lo < 0 < self.hi:
            return Interval(0, max(self.lo ** n, self.hi ** n))
        a, b = self.lo ** n, self.hi ** n
        return Interval(min(a, b), max(a, b))

    def abs(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(0, max(-self.lo, self.hi))

    def sqrt(self, bits: int) -> "Interval":
        if self.lo < 0:
            raise ValueError("square root of a negative interval")
        scale = 1 << (2 * bits)
        lo = math.isqrt(math.floor(self.lo * scale))
        hi = math.isqrt(math.ceil(self.hi * scale))
        if hi * hi < self.hi * scale:
            hi += 1
        return Interval(Fraction(lo, 1 << bits), Fraction(hi, 1 << bits))

    def __lt__(self, other) -> bool:
        """Certainly less: every point of self is below every point of other."""
        return self.hi < self._lift(other).lo

    def __gt__(self, other) -> bool:
        return self.lo > self._lift(other).hi

    def __repr__(self) -> str:
        return f"Interval({float(self.lo):.15g}, {float(self.hi):.15g}; width {float(self.width):.3g})"


# -- the constants ------------------------------------------------------------------


@lru_cache(maxsize=None)
def root_alpha(precision_bits: int = 128) -> Interval:
    """Enclosure of alpha of width 2^-precision_bits, by integer bisection."""
    if precision_bits < 64:
        raise ValueError("need at least 64 bits")
    b = precision_bits
    one = 1 << b

    def sign(p: int) -> int:  # sign of (p/2^b)^3 - (p/2^b)^2 - 1, scaled by 2^3b
        return p ** 3 - p * p * one - one ** 3

    lo, hi = one, 2 * one  # p(1) = -1, p(2) = 3
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if sign(mid) < 0:
            lo = mid
        else:
            hi = mid
    return Interval(Fraction(lo, one), Fraction(hi, one))


def alpha_power(k: int, bits: int) -> Interval:
    return (root_alpha(bits) ** k).round(bits + 8)


def beta_abs(bits: int = 128) -> Interval:
    """|beta| = |gamma| = alpha^(-1/2), since beta * gamma = 1/alpha."""
    return root_alpha(bits).reciprocal().sqrt(bits)


def beta(bits: int = 128) -> tuple[Interval, Interval]:
    """(Re, Im) of the complex root with positive imaginary part.

    alpha + 2 Re(beta) = 1 (sum of roots) and Re^2 + Im^2 = 1/alpha.
    """
    a = root_alpha(bits)
    re = (1 - a) / 2
    im2 = a.reciprocal() - re ** 2
    return re.round(bits), im2.sqrt(bits)


def _cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _cdiv(x, y):
    den = y[0] ** 2 + y[1] ** 2
    num = _cmul(x, (y[0], -y[1]))
    return (num[0] / den, num[1] / den)


def c1(bits: int = 128) -> Interval:
    a = root_alpha(bits)
    return (a ** 5 / (a ** 3 + 2)).round(bits)


def c2(bits: int = 128) -> tuple[Interval, Interval]:
    """beta^5 / (beta^3 + 2) as (Re, Im) enclosures."""
    bt = beta(bits)
    b2 = _cmul(bt, bt)
    b3 = _cmul(b2, bt)
    b5 = _cmul(b3, b2)
    re, im = _cdiv(b5, (b3[0] + 2, b3[1]))
    return re.round(bits), im.round(bits)


def c3(bits: int = 128) -> tuple[Interval, Interval]:
    """gamma^5 / (gamma^3 + 2), the complex conjugate of c2."""
    re, im = c2(bits)
    return re, -im


def c2_abs(bits: int = 128) -> Interval:
    """|c2| from real quantities only.

    |beta^3 + 2|^2 = (beta gamma)^3 + 2 (beta^3 + gamma^3) + 4, with
    beta gamma = 1/alpha and beta^3 + gamma^3 = 4 - alpha^3 (Newton's identities).
    """
    a = root_alpha(bits)
    den2 = a ** -3 + 2 * (4 - a ** 3) + 4
    return (beta_abs(bits) ** 5 / den2.sqrt(bits)).round(bits)


def tail_coefficient(k: int, bits: int = 128) -> Interval:
    """C_k with |N_{i+k} - alpha^k N_i| < C_k |beta|^i for all i >= 0."""
    return (2 * c2_abs(bits) * (beta_abs(bits) ** k + root_alpha(bits) ** k)).round(bits)


def critical_exponent(bits: int = 128) -> Interval:
    """(alpha^2 + alpha + 5) / 3."""
    a = root_alpha(bits)
    return ((a ** 2 + a + 5) / 3).round(bits)


def appearance_slope(bits: int = 128) -> Interval:
    """alpha^2 + alpha, the limit of A_m / m."""
    a = root_alpha(bits)
    return (a ** 2 + a).round(bits)


# -- window bounds ---------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftReport:
    k: int
    window: int
    finite: Interval  # encloses [min, max] of the finite sums
    argmin: int
    argmax: int
    tail: Fraction  # upper bound on the contribution of positions >= window
    bits: int

    @property
    def bounds(self) -> Interval:
        return Interval(self.finite.lo - self.tail, self.finite.hi + self.tail)


def _scaled_extremes(ints: np.ndarray, fracs: np.ndarray, a: Interval, bits: int):
    """Enclose min/max over t of ints[t] - A * fracs[t] for A in a (fracs >= 0)."""
    q = 1 << bits
    plo = math.floor(a.lo * q)
    phi = math.ceil(a.hi * q)
    s = ints.astype(object) * q
    f = fracs.astype(object)
    low = s - f * phi  # lower envelope
    high = s - f * plo
    i_min = int(np.argmin(low))
    i_max = int(np.argmax(high))
    return Fraction(int(low[i_min]), q), Fraction(int(high[i_max]), q), i_min, i_max, low, high


@lru_cache(maxsize=None)
def shift_report(k: int, window: int = 30, bits: int | None = None) -> ShiftReport:
    """Min/max of [(i)_N 0^k]_N - alpha^k i over all suffixes of ``window`` digits.

    Every canonical string of length <= window (leading zeros allowed) is
    the representation of some i < N_window, so the finite part is an
    exhaustive sweep; positions beyond the window are covered by the tail
    sum C_k sum_{f >= window} |beta|^f.
    """
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    if window < 3:
        raise ValueError("window must be at least 3")
    bits = bits or CONFIG.precision_bits
    count = TABLE[window]
    i = np.arange(count, dtype=np.int64)
    shifted = shifted_values(i, k)
    shifted[0] = 0
    ak = root_alpha(bits) ** k
    lo_min, hi_max, i_min, i_max, low, high = _scaled_extremes(shifted, i, ak, bits)
    # the true min lies in [min(low), min(high)]; likewise for the max
    finite = Interval(lo_min, hi_max)
    rho = beta_abs(bits)
    tail = (tail_coefficient(k, bits) * rho ** window / (1 - rho)).round(bits).hi
    return ShiftReport(k, window, finite, i_min, i_max, tail, bits)


def shift_bounds(k: int, window: int = 30) -> Interval:
    """Interval guaranteed to contain [(i)_N 0^k]_N - alpha^k i for every i >= 0."""
    return shift_report(k, window).bounds


# -- sweeps ------------------------------------------------------------------------------


@dataclass
class SweepReport:
    name: str
    range_max: int
    ok: bool
    observed: Interval | None = None  # encloses [min, max] of the swept quantity
    witness: int | None = None
    bits: int = 0
    notes: dict = field(default_factory=dict)

    def lines(self) -> list[str]:
        out = [f"{self.name}: {'OK' if self.ok else 'VIOLATED'} for 1 <= i <= {self.range_max}"]
        if self.observed is not None:
            out.append(f"  observed range [{float(self.observed.lo):.10f}, {float(self.observed.hi):.10f}]")
        if self.witness is not None:
            out.append(f"  witness i = {self.witness}")
        out.extend(f"  {k}: {v}" for k, v in self.notes.items())
        return out


def _classify(low: np.ndarray, high: np.ndarray, lower: Fraction, upper: Fraction):
    """Entries certainly inside (lower, upper), and entries certainly outside.

    low/high hold integers, so x > F iff x > floor(F) and x < F iff x < ceil(F).
    """
    lf, uc = math.floor(lower), math.ceil(upper)
    fine = ((low > lf) & (high < uc)).astype(bool)
    bad = ((high <= lf) | (low >= uc)).astype(bool)
    return fine, bad


def _check_strict_bounds(name: str, ints: np.ndarray, fracs: np.ndarray, k: int,
                         lower: Fraction, upper: Fraction, range_max: int) -> SweepReport:
    """Decide lower < ints[t] - alpha^k fracs[t] < upper for all t, refining as needed."""
    bits = CONFIG.precision_bits
    pending = np.arange(ints.size)
    observed = None
    while True:
        a = root_alpha(bits) ** k
        lo_min, hi_max, _, _, low, high = _scaled_extremes(ints[pending], fracs[pending], a, bits)
        q = 1 << bits
        if observed is None:
            observed = Interval(lo_min, hi_max)
        # certainly fine: lower < low and high < upper
        fine, bad = _classify(low, high, lower * q, upper * q)
        if bad.any():
            w = int(pending[np.flatnonzero(bad)[0]])
            return SweepReport(name, range_max, False, observed, w + 1, bits)
        pending = pending[~fine]
        if pending.size == 0:
            return SweepReport(name, range_max, True, observed, None, bits)
        bits *= 2


def verify_km(range_max: int | None = None) -> list[SweepReport]:
    """Kimberling-Moses bounds for a(i) = p02(i) and b(i) = p1(i), 1 <= i <= range_max."""
    range_max = range_max or CONFIG.sweep_max
    j = np.arange(range_max, dtype=np.int64)  # j = i - 1
    i = j + 1
    a = shifted_values(j, 1) + 1
    b = shifted_values(j, 3) + 2
    return [
        _check_strict_bounds("a(i) - alpha i", a, i, 1,
                             Fraction("-1.2630921"), Fraction("0.58304372"), range_max),
        _check_strict_bounds("b(i) - alpha^3 i", b, i, 3,
                             Fraction("-2.2480941"), Fraction("0.558039"), range_max),
    ]


def _floors(i: np.ndarray, bits: int) -> tuple[np.ndarray, np.ndarray]:
    """floor(i / alpha) where decided, with a mask of the undecided entries."""
    a = root_alpha(bits)
    q = 1 << bits
    plo = math.floor(a.lo * q)
    phi = math.ceil(a.hi * q)
    iq = i.astype(object) * q
    f_lo = iq // phi  # i / alpha >= i q / phi
    f_hi = iq // plo
    return f_lo.astype(np.int64), f_lo != f_hi


def verify_cloitre(range_max: int | None = None) -> list[SweepReport]:
    """H(i) - floor(i / alpha) in {0, 1}, plus the bounds on h(i) - i / alpha it rests on."""
    range_max = range_max or CONFIG.sweep_max
    i = np.arange(1, range_max + 1, dtype=np.int64)
    hv = h_values(range_max + 1)[1:]
    bits = CONFIG.precision_bits
    floors, undecided = _floors(i, bits)
    while undecided.any():  # i / alpha is never an integer, so this terminates
        bits *= 2
        idx = np.flatnonzero(undecided)
        f2, u2 = _floors(i[idx], bits)
        floors[idx] = f2
        undecided[idx] = u2
    diff = hv - floors
    bad = np.flatnonzero((diff != 0) & (diff != 1))
    ok = bad.size == 0
    main = SweepReport("H(i) - floor(i / alpha) in {0, 1}", range_max, ok,
                       witness=int(i[bad[0]]) if not ok else None, bits=bits,
                       notes={"zeros": int(np.sum(diff == 0)), "ones": int(np.sum(diff == 1))})
    # h(i) - i / alpha: alpha^{-1} = alpha^2 - alpha, so use k-free form h - (alpha^2 - alpha) i
    inv = _check_inverse_bounds(hv, i, range_max)
    return [main, inv]


def _check_inverse_bounds(hv: np.ndarray, i: np.ndarray, range_max: int) -> SweepReport:
    lower, upper = Fraction("-0.7154992"), Fraction("0.86184283")
    bits = CONFIG.precision_bits
    pending = np.arange(i.size)
    observed = None
    while True:
        inv = root_alpha(bits).reciprocal()
        lo_min, hi_max, _, _, low, high = _scaled_extremes(hv[pending], i[pending], inv, bits)
        q = 1 << bits
        if observed is None:
            observed = Interval(lo_min, hi_max)
        fine, bad = _classify(low, high, lower * q, upper * q)
        if bad.any():
            return SweepReport("h(i) - i / alpha", range_max, False, observed,
                               int(i[pending[np.flatnonzero(bad)[0]]]), bits)
        pending = pending[~fine]
        if pending.size == 0:
            return SweepReport("h(i) - i / alpha", range_max, True, observed, None, bits)
        bits *= 2


# printed envelope constants (coefficient, ratio) for k = 1, 2, 3
ENVELOPES = {
    1: (Fraction("0.71826736534411"), Fraction("0.8260313576542")),
    2: (Fraction("0.887090800406"), Fraction("0.8260313576542")),
    3: (Fraction("1.16331950440432"), Fraction("0.8260313576542")),
}


def check_eq_n_bounds(i_max: int = 200, ks=(1, 2, 3)) -> list[SweepReport]:
    """|N_{i+k} - alpha^k N_i| < C_k rho^i for 0 <= i <= i_max with the printed constants."""
    reports = []
    for k in ks:
        coeff, rho = ENVELOPES[k]
        worst = None
        witness = None
        bits = CONFIG.precision_bits
        for i in range(i_max + 1):
            rhs = coeff * rho ** i
            while True:
                lhs = (TABLE[i + k] - root_alpha(bits) ** k * TABLE[i]).abs()
                if lhs.hi < rhs or lhs.lo >= rhs:
                    break
                bits *= 2
            ratio = lhs.hi / rhs
            if worst is None or ratio > worst:
                worst = ratio
            if lhs.lo >= rhs:
                witness = i
                break
        reports.append(SweepReport(f"|N_(i+{k}) - alpha^{k} N_i| envelope", i_max, witness is None,
                                   witness=witness, bits=bits,
                                   notes={"max lhs/rhs": f"{float(worst):.6f}"}))
    return reports
