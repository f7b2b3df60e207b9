"""Numeric sweeps: position-sequence bounds, the {0, 1} theorem for H, and the error envelopes."""

import argparse
import time
from dataclasses import dataclass

from narayana import estimates as E


@dataclass
class Params:
    range_max: int = 1_000_000
    envelope_max: int = 200


def main(p: Params) -> int:
    bad = 0
    for label, fn in (("position bounds", lambda: E.verify_km(p.range_max)),
                      ("H vs floor(i / alpha)", lambda: E.verify_cloitre(p.range_max)),
                      ("error envelopes", lambda: E.check_eq_n_bounds(p.envelope_max))):
        t = time.perf_counter()
        reports = fn()
        print(f"== {label} ({time.perf_counter() - t:.1f}s)")
        for r in reports:
            print("\n".join(r.lines()))
            bad += not r.ok
    return bad


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=Params.range_max)
    ap.add_argument("--envelope-max", type=int, default=Params.envelope_max)
    a = ap.parse_args()
    raise SystemExit(main(Params(a.max, a.envelope_max)))
