"""Command-line front end.

Exit codes: 0 for success or TRUE, 1 for FALSE or a violated check (the
witness is printed), 2 for usage and compile errors.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import automata as fa
from .config import CONFIG

OK, FALSE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _range(text: str) -> range:
    """'a..b' (inclusive) or a single integer."""
    lo, sep, hi = text.partition("..")
    try:
        return range(int(lo), int(hi) + 1) if sep else range(int(lo), int(lo) + 1)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected a..b") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _registry():
    from . import wordlab

    return wordlab.library()


def _write_rows(header, rows, as_csv: bool) -> None:
    if as_csv:
        w = csv.writer(sys.stdout)
        w.writerow(header)
        w.writerows(rows)
    else:
        for row in rows:
            print(" ".join(str(x) for x in row))


# -- subcommands ---------------------------------------------------------------------


def cmd_convert(args) -> int:
    from .numeration import is_canonical, to_canonical, value

    if args.from_digits is not None:
        digits = args.from_digits
        if set(digits) - {"0", "1"}:
            raise UsageError("digits must be 0/1")
        print(value(digits))
        if not is_canonical(digits.lstrip("0")):
            print("note: input is not canonical; canonical form is " + to_canonical(value(digits)),
                  file=sys.stderr)
        return OK
    if args.m is None:
        raise UsageError("convert needs <m> or --from-digits")
    print(to_canonical(args.m) or "0")
    return OK


def _word_prefix(name: str, length: int, k: int | None) -> np.ndarray:
    from . import sequences as sq

    key = name.upper()
    if key == "NA":
        return sq.na_prefix(length)
    if key in ("JA", "AJ"):
        return sq.aj_prefix(length)
    if key == "S":
        return sq.s_values(length)
    if key == "XK":
        return sq.xk_prefix(k or 1, length)
    raise UsageError(f"unknown word {name!r} (NA, S, JA, xk)")


def cmd_word(args) -> int:
    w = _word_prefix(args.name, args.prefix, args.k)
    print("".join(map(str, w)))
    return OK


def cmd_seq(args) -> int:
    from . import sequences as sq

    if args.name == "zeck":
        cols = _range(args.cols or "-3..7")
        rows = range(args.rows or 8)
        _write_rows(["i"] + [f"j={j}" for j in cols],
                    [[i] + [sq.zeck(i, j) for j in cols] for i in rows], args.csv)
        return OK
    fns = {"p0": sq.p0, "p1": sq.p1, "p2": sq.p2, "p02": sq.p02, "a": sq.a, "b": sq.b,
           "h": sq.h, "firstocc": sq.firstocc, "s": sq.s, "na": sq.na, "aj": sq.aj,
           "narayana": sq.narayana_ext}
    if args.name in fns:
        r = _range(args.range or "1..18")
        _write_rows(["n", args.name], [[j, fns[args.name](j)] for j in r], args.csv)
        return OK
    if args.name in ("a202341", "a202342"):
        r = _range(args.range or "0..17")
        vals = (sq.a202341_values if args.name == "a202341" else sq.a202342_values)(r.stop)
        _write_rows(["n", args.name], [[j, int(vals[j])] for j in r], args.csv)
        return OK
    raise UsageError(f"unknown sequence {args.name!r}")


def _verdict_or_machine(a, out: str | None) -> int:
    if a.tracks:
        _emit(fa.to_text(a), out)
        print(f"# {a.state_count()} states, free variables {','.join(a.tracks)}", file=sys.stderr)
        return OK
    print("TRUE" if a.verdict else "FALSE")
    return OK if a.verdict else FALSE


def cmd_eval(args) -> int:
    from .logic import compile_query

    return _verdict_or_machine(compile_query(args.query, _registry()), args.out)


def cmd_def(args) -> int:
    rel = _registry().define(args.name, args.query, args.count, replace=True)
    print(f"{args.name}: {rel.automaton.state_count()} states, tracks {','.join(rel.params)}")
    if args.out:
        _emit(fa.to_text(rel.automaton), args.out)
    return OK


def cmd_reg(args) -> int:
    rel = _registry().define_regex(args.name, args.regex, args.arity, replace=True)
    print(f"{args.name}: {rel.automaton.state_count()} states")
    return OK


def cmd_script(args) -> int:
    from .logic import run_script

    results = run_script(Path(args.file).read_text(), _registry(), replace=True)
    code = OK
    for r in results:
        if r.command == "eval" and r.verdict is not None:
            print(f"eval {r.name}: {'TRUE' if r.verdict else 'FALSE'}")
            if not r.verdict and args.strict:
                code = FALSE
        else:
            print(f"{r.command} {r.name}: {r.states} states")
    return code


def cmd_build(args) -> int:
    from . import arith, sequences as sq

    builders = {
        "adder": arith.build_adder,
        "incrementer": arith.incrementer,
        "lshift": arith.lshift_relation,
        "rshift": arith.rshift_relation,
        "canonical": arith.canonical_dfa,
        "na": sq.na_dfao,
        "aj": sq.aj_dfao,
    }
    if args.machine not in builders:
        raise UsageError(f"unknown machine {args.machine!r}; choose from {sorted(builders)}")
    a = builders[args.machine]()
    _emit(fa.export(a, args.format), args.out)
    return OK


def cmd_check(args) -> int:
    from . import arith

    if args.machine != "adder":
        raise UsageError("only 'check adder' is supported")
    adder = arith.build_adder()
    bad = arith.brute_check_adder(adder, args.range)
    print(f"brute force 0 <= x, y <= {args.range}: {'OK' if bad is None else f'MISMATCH at {bad}'}")
    certs = arith.certify_adder(adder)
    for name, ok in certs.items():
        print(f"certificate {name}: {'TRUE' if ok else 'FALSE'}")
    print(f"states: {adder.state_count()}")
    return OK if bad is None and all(certs.values()) else FALSE


def cmd_analyze(args) -> int:
    from . import estimates, sequences as sq, wordlab as wl

    w = args.word.upper()
    topic = args.topic
    if topic == "critical-exponent":
        chain = wl.period_chain(w)
        rep = wl.sup_ratio(chain.bignm, args.digits)
        _write_rows(["digits", "best_ratio", "float"],
                    [[d, str(f), f"{float(f):.12f}"] for d, f in rep.running], args.csv)
        crit = estimates.critical_exponent()
        print(f"# witness (m, p) = {rep.witness}; (alpha^2+alpha+5)/3 = {float(crit.mid):.15f}", file=sys.stderr)
        return OK if rep.best < crit.lo else FALSE
    if topic == "appearance":
        if w != "NA":
            raise UsageError("appearance is implemented for NA")
        rep = wl.appearance(args.upto)
        _write_rows(["m", "A_m"], sorted(rep.values.items()), args.csv)
        print(f"# closed query {'TRUE' if rep.closed_query else 'FALSE'}; max A_m/m = "
              f"{float(rep.max_ratio):.6f} at m = {rep.argmax}", file=sys.stderr)
        return OK if rep.closed_query else FALSE
    if topic == "complexity":
        rho = wl.complexity(_word_prefix(w, 60 * (args.upto + 2), None), args.upto)
        _write_rows(["n", "rho"], [[n, int(r)] for n, r in enumerate(rho)], args.csv)
        return OK
    if topic == "palindromes":
        pals = wl.palindromes(_word_prefix(w, 10 ** 4, None), args.upto)
        _write_rows(["palindrome"], [[p] for p in pals], args.csv)
        return OK
    if topic == "balance":
        if w != "NA":
            raise UsageError("balance is implemented for NA")
        ok3 = wl.balance_check(3)
        rep2 = wl.balance_check(2)
        print(f"3-balanced: {all(ok3.balanced.values())}")
        print(f"2-balanced: {all(rep2.balanced.values())}; witness {rep2.witness}")
        return OK if all(ok3.balanced.values()) else FALSE
    if topic == "abelian":
        prefix = sq.na_prefix(10 ** 5)
        for power in (2, 3):
            print(f"abelian {power}-powers, orders <= {args.upto}: "
                  f"{wl.abelian_power_orders(prefix, power, args.upto)}")
        return OK
    if topic == "sumsets":
        names = wl.CLAIM_GROUPS["sumsets" if w == "NA" else "allouche"]
        names = [n for n in names if "sum" in n or w == "NA"]
        code = OK
        for n in names:
            res = wl.check_claim(n)
            print(f"{n}: {'TRUE' if res.verdict else 'FALSE'}")
            code = code if res.ok else FALSE
        return code
    raise UsageError(f"unknown analysis {topic!r}")


def cmd_complexity(args) -> int:
    args.topic = "complexity"
    return cmd_analyze(args)


def cmd_linrep_rank(args) -> int:
    from . import linrep

    reg = _registry()
    text = Path(args.file).read_text().strip() if Path(args.file).exists() else args.file
    rel = reg.define("_linrep_tmp", text, args.count, replace=True)
    counted = next(t for t in rel.automaton.tracks if t != args.count)
    lr = linrep.minimize(linrep.count_track(rel.automaton, counted))
    print(lr.dim)
    return OK


def cmd_verify(args) -> int:
    from . import estimates, wordlab as wl

    what = args.what
    if what == "acceptance":
        from . import acceptance

        results = acceptance.run_all(args.profile, echo=print)
        return OK if all(r.passed for r in results) else FALSE
    if what in ("km", "cloitre", "envelopes"):
        reports = {"km": lambda: estimates.verify_km(args.max),
                   "cloitre": lambda: estimates.verify_cloitre(args.max),
                   "envelopes": lambda: estimates.check_eq_n_bounds(args.max or 200)}[what]()
        for r in reports:
            print("\n".join(r.lines()))
        return OK if all(r.ok for r in reports) else FALSE
    if what in wl.CLAIMS or what in wl.CLAIM_GROUPS or what == "claims":
        names = (list(wl.CLAIMS) if what == "claims" else
                 wl.CLAIM_GROUPS[what] if what in wl.CLAIM_GROUPS else [what])
        code = OK
        for n in names:
            res = wl.check_claim(n)
            flag = "ok" if res.ok else "MISMATCH"
            print(f"{n}: {'TRUE' if res.verdict else 'FALSE'} ({flag})")
            code = code if res.ok else FALSE
        return code
    raise UsageError(f"unknown verification {what!r}")


def cmd_bounds(args) -> int:
    from . import estimates

    rep = estimates.shift_report(args.k, args.window)
    print(f"k={args.k} window={args.window}")
    print(f"finite part: [{float(rep.finite.lo):.13f}, {float(rep.finite.hi):.13f}] "
          f"(argmin {rep.argmin}, argmax {rep.argmax})")
    print(f"tail < {float(rep.tail):.11f}")
    print(f"bounds: ({float(rep.bounds.lo):.11f}, {float(rep.bounds.hi):.11f})")
    return OK


def cmd_scan(args) -> int:
    from . import wordlab as wl

    if args.family != "xk":
        raise UsageError("only 'scan xk' is available")
    rep = wl.conjecture_scan(args.k, args.n_bound, args.bound)
    print(f"k={rep.k} prefix={rep.prefix_length} ({rep.note})")
    print(f"max exponent {rep.max_exponent} (length, period) = {rep.exponent_witness}")
    print(f"factor with length >= 2p+{rep.k}: {rep.long_factor}")
    print(f"first differences of complexity (n > {rep.k + 1}): {sorted(rep.differences)}")
    expected = {4 * rep.k - 2, 4 * rep.k}
    return OK if rep.long_factor is None and rep.max_exponent <= rep.k + 1 and rep.differences <= expected else FALSE


def cmd_oracle(args) -> int:
    from . import oracle

    p = args.params
    name = args.name

    def need(n: int) -> list[int]:
        if len(p) < n:
            raise UsageError(f"oracle {name} needs {n} integer argument(s)")
        return [int(x) for x in p[:n]]

    if name == "morphic":
        print(oracle.morphic_prefix(*need(1)))
    elif name == "canonical":
        print(oracle.brute_canonical(*need(1)) or "0")
    elif name == "value":
        print(oracle.brute_value(p[0]))
    elif name == "factors":
        length, n = need(2)
        fs = sorted(oracle.brute_factors(oracle.morphic_prefix(length), n))
        print(len(fs))
        print(" ".join(fs))
    elif name == "complexity":
        length, n = need(2)
        print(" ".join(map(str, oracle.brute_complexity(oracle.morphic_prefix(length), n))))
    elif name == "palindromes":
        length, n = need(2)
        print(" ".join(sorted(oracle.brute_palindromes(oracle.morphic_prefix(length), n), key=lambda s: (len(s), s))))
    elif name == "exponent":
        length, n = need(2)
        e, wit = oracle.brute_exponent(oracle.morphic_prefix(length), n)
        print(f"{e} {wit}")
    elif name == "abelian":
        length, power, order = need(3)
        print(oracle.brute_abelian(oracle.morphic_prefix(length), power, order))
    elif name == "balance":
        length, k = need(2)
        ok, wit = oracle.brute_balance(oracle.morphic_prefix(length), k, 40)
        print(ok, *(wit or ()))
        return OK if ok else FALSE
    elif name == "h":
        print(" ".join(map(str, oracle.brute_h(*need(1)))))
    elif name == "ab":
        a, b = oracle.brute_ab_classification(*need(1))
        print("a:", " ".join(map(str, a)))
        print("b:", " ".join(map(str, b)))
    elif name == "appearance":
        length, m = need(2)
        print(oracle.brute_appearance(oracle.morphic_prefix(length), m))
    elif name == "aj":
        print(oracle.brute_aj(*need(1)))
    else:
        raise UsageError(f"unknown oracle {name!r}")
    return OK


def cmd_export_dot(args) -> int:
    reg = _registry()
    name = args.name
    if name in ("NA", "JA", "S", "SP0", "SP1") or (name.isupper() and reg.known(name)):
        a = reg.sequence(name)
    else:
        a = reg.relation(name).automaton
    _emit(fa.to_dot(a, name), args.out)
    return OK


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="narayana", description="Narayana numeration, automata and word analyses")
    p.add_argument("--config", help="key=value file (size_guard, precision_bits, sweep_max, ...)")
    sub = p.add_subparsers(dest="command", metavar="command")

    s = sub.add_parser("convert", help="integer <-> canonical representation")
    s.add_argument("m", nargs="?", type=int)
    s.add_argument("--from-digits", dest="from_digits")
    s.set_defaults(fn=cmd_convert)

    s = sub.add_parser("word", help="print a prefix of NA, S, JA or xk")
    s.add_argument("name")
    s.add_argument("--prefix", type=int, default=60)
    s.add_argument("--k", type=int)
    s.set_defaults(fn=cmd_word)

    s = sub.add_parser("seq", help="print sequence values")
    s.add_argument("name")
    s.add_argument("--range")
    s.add_argument("--rows", type=int)
    s.add_argument("--cols")
    s.add_argument("--csv", action="store_true")
    s.set_defaults(fn=cmd_seq)

    s = sub.add_parser("eval", help="evaluate a query; closed queries print TRUE/FALSE")
    s.add_argument("query")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("def", help="define a named relation")
    s.add_argument("name")
    s.add_argument("query")
    s.add_argument("--count")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_def)

    s = sub.add_parser("reg", help="define a relation by a regular expression")
    s.add_argument("name")
    s.add_argument("regex")
    s.add_argument("--arity", type=int, default=1)
    s.set_defaults(fn=cmd_reg)

    s = sub.add_parser("script", help="run a file of def/eval/reg/combine commands")
    s.add_argument("file")
    s.add_argument("--strict", action="store_true", help="exit 1 if any eval is FALSE")
    s.set_defaults(fn=cmd_script)

    s = sub.add_parser("build", help="emit a base machine")
    s.add_argument("machine")
    s.add_argument("--format", choices=("text", "dot"), default="text")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_build)

    s = sub.add_parser("check", help="brute-force and inductive certification of the adder")
    s.add_argument("machine")
    s.add_argument("--range", type=int, default=2000)
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("analyze", help="word analyses")
    s.add_argument("word")
    s.add_argument("topic", choices=("critical-exponent", "appearance", "complexity", "palindromes",
                                     "balance", "abelian", "sumsets"))
    s.add_argument("--upto", type=int, default=100)
    s.add_argument("--digits", type=int, default=40)
    s.add_argument("--csv", action="store_true")
    s.set_defaults(fn=cmd_analyze)

    s = sub.add_parser("complexity", help="(n, rho(n)) pairs from a prefix")
    s.add_argument("word")
    s.add_argument("--upto", type=int, default=100)
    s.add_argument("--csv", action="store_true")
    s.set_defaults(fn=cmd_complexity)

    s = sub.add_parser("linrep-rank", help="rank of the minimized counting representation")
    s.add_argument("file", help="file holding a query, or the query itself")
    s.add_argument("--count", default="n")
    s.set_defaults(fn=cmd_linrep_rank)

    s = sub.add_parser("verify", help="km | cloitre | envelopes | acceptance | claims | <claim or group>")
    s.add_argument("what")
    s.add_argument("--max", type=int)
    s.add_argument("--profile", choices=("quick", "extended"), default="quick")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("bounds", help="window bounds on [(i)_N 0^k] - alpha^k i")
    s.add_argument("--k", type=int, choices=(1, 2, 3), default=1)
    s.add_argument("--window", type=int, default=30)
    s.set_defaults(fn=cmd_bounds)

    s = sub.add_parser("scan", help="bounded conjecture scans")
    s.add_argument("family")
    s.add_argument("--k", type=int, default=4)
    s.add_argument("--bound", type=int, default=100_000, help="prefix length")
    s.add_argument("--n-bound", dest="n_bound", type=int, default=200)
    s.set_defaults(fn=cmd_scan)

    s = sub.add_parser("oracle", help="naive reference computations")
    s.add_argument("name")
    s.add_argument("params", nargs="*")
    s.set_defaults(fn=cmd_oracle)

    s = sub.add_parser("export-dot", help="DOT graph of a library relation or sequence")
    s.add_argument("name")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_export_dot)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    if not getattr(args, "fn", None):
        parser.print_usage(sys.stderr)
        return USAGE
    from .logic import CompileError, QuerySyntaxError
    from .regex import RegexError

    try:
        if args.config:
            CONFIG.load(args.config)
        return args.fn(args)
    except (UsageError, QuerySyntaxError, CompileError, RegexError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
