"""Regular expressions over multi-track digit columns.

Syntax (close to the query tool's ``reg`` command):

* a symbol is a single digit ``0``/``1`` (one track) or a column ``[d1,d2,...]``;
* ``|`` and ``+`` both denote union, juxtaposition is concatenation;
* postfix ``*`` is the Kleene star, ``^n`` repeats the preceding atom n times;
* ``()`` is the empty word.

Patterns are compiled via a Thompson NFA and the subset construction.
"""

from __future__ import annotations

from collections.abc import Sequence

from . import automata as fa
from .automata import Automaton, Nfa


class RegexError(ValueError):
    pass


class _Builder:
    def __init__(self):
        self.trans: list[dict[int, list[int]]] = []
        self.eps: list[list[int]] = []

    def new(self) -> int:
        self.trans.append({})
        self.eps.append([])
        return len(self.trans) - 1


class _Parser:
    """Recursive descent; every method returns a fragment (start, end)."""

    def __init__(self, text: str, k: int, builder: _Builder):
        self.text = text
        self.pos = 0
        self.k = k
        self.b = builder

    def error(self, msg: str) -> RegexError:
        return RegexError(f"{msg} at position {self.pos} in {self.text!r}")

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        frag = self.union()
        if self.peek():
            raise self.error("unexpected character")
        return frag

    def union(self):
        frags = [self.concat()]
        while self.peek() in ("|", "+"):
            self.pos += 1
            frags.append(self.concat())
        if len(frags) == 1:
            return frags[0]
        s, e = self.b.new(), self.b.new()
        for fs, fe in frags:
            self.b.eps[s].append(fs)
            self.b.eps[fe].append(e)
        return s, e

    def concat(self):
        s = e = self.b.new()
        while self.peek() not in ("", "|", "+", ")"):
            fs, fe = self.repeat()
            self.b.eps[e].append(fs)
            e = fe
        return s, e

    def repeat(self):
        start = self.pos
        frag = self.atom()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                s, e = self.b.new(), self.b.new()
                self.b.eps[s] += [frag[0], e]
                self.b.eps[frag[1]] += [frag[0], e]
                frag = (s, e)
            elif ch == "^":
                self.pos += 1
                j = self.pos
                while j < len(self.text) and self.text[j].isdigit():
                    j += 1
                if j == self.pos:
                    raise self.error("expected a repetition count")
                count = int(self.text[self.pos:j])
                end = j
                # re-parse the atom text count times to get independent copies
                atom_text = self.text[start:self._atom_end]
                s = e = self.b.new()
                for _ in range(count):
                    sub = _Parser(atom_text, self.k, self.b)
                    fs, fe = sub.repeat_free()
                    self.b.eps[e].append(fs)
                    e = fe
                frag = (s, e)
                self.pos = end
            else:
                return frag

    def repeat_free(self):
        frag = self.atom()
        if self.peek():
            raise self.error("bad repeated atom")
        return frag

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            if self.peek() == ")":
                self.pos += 1
                n = self.b.new()
                self._atom_end = self.pos
                return n, n
            frag = self.union()
            if self.peek() != ")":
                raise self.error("missing ')'")
            self.pos += 1
            self._atom_end = self.pos
            return frag
        if ch == "[":
            end = self.text.find("]", self.pos)
            if end < 0:
                raise self.error("missing ']'")
            body = self.text[self.pos + 1:end]
            try:
                digits = [int(x) for x in body.split(",")]
            except ValueError:
                raise self.error("bad column") from None
            self.pos = end + 1
        elif ch in ("0", "1"):
            digits = [int(ch)]
            self.pos += 1
        else:
            raise self.error(f"unexpected {ch!r}" if ch else "unexpected end")
        if len(digits) != self.k:
            raise self.error(f"column of width {len(digits)} in a {self.k}-track pattern")
        if any(d not in (0, 1) for d in digits):
            raise self.error("digit outside {0,1}")
        sym = sum(d << i for i, d in enumerate(digits))
        s, e = self.b.new(), self.b.new()
        self.b.trans[s][sym] = [e]
        self._atom_end = self.pos
        return s, e


def regex_nfa(pattern: str, tracks: Sequence[str]) -> Nfa:
    b = _Builder()
    s, e = _Parser(pattern, len(tracks), b).parse()
    return Nfa(tracks, len(b.trans), [s], [e], b.trans, b.eps)


def compile_regex(pattern: str, tracks: Sequence[str] = ("x",)) -> Automaton:
    """DFA for ``pattern`` read column by column, msd first.

    Tracks are given in the pattern's column order; the result has its
    tracks sorted by name like every other relation.
    """
    tracks = tuple(tracks)
    a = fa.determinize(regex_nfa(pattern, tracks))
    if list(tracks) != sorted(tracks):
        a = fa.minimize(fa.reorder(a, tuple(sorted(tracks))))
    return a


def matches(pattern: str, *words: str) -> bool:
    """Direct membership test, mainly for tests and quick checks."""
    tracks = tuple(f"t{i}" for i in range(len(words)))
    n = regex_nfa(pattern, tracks)
    width = max((len(w) for w in words), default=0)
    if any(len(w) != width for w in words):
        raise RegexError("words must have equal length")
    cur = n.start()
    for col in range(width):
        sym = sum(int(w[col]) << i for i, w in enumerate(words))
        cur = n.step(cur, sym)
    return n.is_accepting(cur)

