"""Run the acceptance criteria and print one line per criterion.

    python3 scripts/run_acceptance.py                 # all, quick profile
    python3 scripts/run_acceptance.py 5 14 --profile extended
"""

import argparse
import sys

from narayana import acceptance


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("numbers", nargs="*", type=int)
    ap.add_argument("--profile", choices=("quick", "extended"), default="quick")
    ap.add_argument("--quiet", action="store_true", help="only the verdict lines")
    args = ap.parse_args()
    echo = print if not args.quiet else None
    results = acceptance.run_all(args.profile, args.numbers or None, echo)
    if args.quiet:
        for r in results:
            print(r.line())
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed" + (f"; failed: {failed}" if failed else ""))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
