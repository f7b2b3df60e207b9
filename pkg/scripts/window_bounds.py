"""Window bounds on [(i)_N 0^k]_N - alpha^k i, across window sizes.

Also recomputes the largest k = 2 value found at i = 181910 at 256 bits
and compares it with the bare finite maximum of the 30-digit window.
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from narayana import estimates as E
from narayana.numeration import to_canonical, value


@dataclass
class Params:
    windows: tuple[int, ...] = (20, 25, 30, 35)
    ks: tuple[int, ...] = (1, 2, 3)
    witness: int = 181910


def fmt(x: Fraction) -> str:
    return f"{float(x):+.12f}"


def main(p: Params) -> None:
    print("k window  finite_lo        finite_hi        tail            lower            upper")
    for k in p.ks:
        for w in p.windows:
            r = E.shift_report(k, w)
            b = r.bounds
            print(f"{k} {w:6d}  {fmt(r.finite.lo)}  {fmt(r.finite.hi)}  {float(r.tail):.3e}  {fmt(b.lo)}  {fmt(b.hi)}")
    i = p.witness
    val = value(to_canonical(i) + "00") - E.root_alpha(256) ** 2 * i
    finite_hi = E.shift_report(2, 30).finite.hi
    print(f"\nk=2 at i={i}: {fmt(val.lo)} (30-digit finite max {fmt(finite_hi)}, excess {float(val.lo - finite_hi):.3e})")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--windows", type=int, nargs="+", default=list(Params.windows))
    args = ap.parse_args()
    main(Params(windows=tuple(args.windows)))
