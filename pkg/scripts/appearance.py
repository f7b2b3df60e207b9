"""Appearance function of the Narayana word: automaton values, closed form and A_m / m."""

import argparse
from fractions import Fraction

from narayana import estimates as E
from narayana import wordlab as wl


def main(m_max: int) -> None:
    vals = wl.appearance_values(range(2, m_max + 1))
    mismatch = [m for m, v in vals.items() if v != wl.appearance_closed_form(m)]
    best = max(vals, key=lambda m: Fraction(vals[m], m))
    print(f"m in [2, {m_max}]: closed form mismatches {mismatch or 'none'}")
    print(f"max A_m/m = {vals[best]}/{best} = {vals[best] / best:.6f}; limsup slope {float(E.appearance_slope().mid):.8f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=500)
    main(ap.parse_args().max)
