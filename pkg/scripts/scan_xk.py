"""Bounded scans of the x_k family: exponents, long periodic factors, complexity differences.

Evidence only; nothing here proves a statement about the infinite words.
"""

import argparse
from dataclasses import dataclass

from narayana import wordlab as wl


@dataclass
class Params:
    ks: tuple[int, ...] = (1, 2, 3, 4, 5, 6)
    prefix_length: int = 100_000
    n_bound: int = 200


def main(p: Params) -> None:
    print("k  max_exp  (len, per)   factor>=2p+k   rho differences")
    for k in p.ks:
        r = wl.conjecture_scan(k, p.n_bound, p.prefix_length)
        print(f"{k}  {str(r.max_exponent):7s}  {str(r.exponent_witness):11s}  {str(r.long_factor):13s}  {sorted(r.differences)}")
    print(f"\nno factor of length 2n+2 with period n in x_2 (prefix {p.prefix_length}): {wl.ftm_check(p.prefix_length)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, nargs="+", default=list(Params.ks))
    ap.add_argument("--prefix", type=int, default=Params.prefix_length)
    ap.add_argument("--n-bound", type=int, default=Params.n_bound)
    a = ap.parse_args()
    main(Params(tuple(a.k), a.prefix, a.n_bound))
