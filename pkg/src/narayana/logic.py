"""First-order queries over Narayana representations.

The accepted syntax follows the query tool used throughout the literature
on automatic sequences::

    ?msd_nara Au,v (u>=i & u<i+m & u+j=v+i) => NA[u]=NA[v]

Quantifiers ``A``/``E`` take a comma-separated variable list and scope over
the rest of the enclosing expression.  Connectives by decreasing binding
strength: ``~``, ``&``, ``|``, ``^``, ``=>`` (right associative), ``<=>``.
Atoms are comparisons of linear terms, sequence lookups ``NAME[t]=@c`` or
``NAME[t]=NAME[s]``, and relation calls ``$name(t, ...)``.

A formula compiles to an :class:`~narayana.automata.Automaton` whose tracks
are its free variables in alphabetical order.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Union

from . import automata as fa
from .arith import linear_relation
from .automata import Automaton, AutomatonError

HEADER = "?msd_nara"


class QuerySyntaxError(ValueError):
    def __init__(self, msg: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} (line {line}, column {col})")
        self.line, self.column = line, col


class CompileError(ValueError):
    pass


# -- AST --------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Sub:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    coeff: int
    term: "Term"


@dataclass(frozen=True)
class Div:
    term: "Term"
    divisor: int


Term = Union[Var, Num, Add, Sub, Mul, Div]


@dataclass(frozen=True)
class Bool:
    value: bool


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Binary:
    op: str  # and, or, xor, implies, iff
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Quant:
    kind: str  # "A" or "E"
    variables: tuple[str, ...]
    body: "Formula"


@dataclass(frozen=True)
class Compare:
    op: str
    left: Term
    right: Term


@dataclass(frozen=True)
class SeqAt:
    name: str
    index: Term


@dataclass(frozen=True)
class Out:
    value: int


@dataclass(frozen=True)
class SeqCompare:
    op: str
    left: Union[SeqAt, Out]
    right: Union[SeqAt, Out]


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple[Term, ...]


Formula = Union[Bool, Not, Binary, Quant, Compare, SeqCompare, Call]

_NEG_OP = {"=": "!=", "!=": "=", "<": ">=", ">=": "<", ">": "<=", "<=": ">"}


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Num):
        return set()
    if isinstance(t, (Add, Sub)):
        return term_vars(t.left) | term_vars(t.right)
    return term_vars(t.term)


def free_vars(f) -> set[str]:
    if isinstance(f, Bool):
        return set()
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, Binary):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Quant):
        return free_vars(f.body) - set(f.variables)
    if isinstance(f, Compare):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, SeqCompare):
        return set().union(*(term_vars(s.index) for s in (f.left, f.right) if isinstance(s, SeqAt)))
    if isinstance(f, Call):
        return set().union(set(), *(term_vars(a) for a in f.args))
    raise TypeError(f)


# -- tokenizer --------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<header>\?[A-Za-z_]+)
  | (?P<call>\$[A-Za-z0-9_]+)
  | (?P<out>@-?\d+)
  | (?P<num>\d+)
  | (?P<op><=>|=>|<=|>=|!=|[=<>&|^~+\-*/(),\[\]])
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)


@dataclass
class Token:
    kind: str  # quant, var, seq, call, out, num, op, end
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise QuerySyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        tok = m.group()
        if kind == "word":
            nxt = text[m.end():].lstrip()[:1]
            if tok[0].isupper() and nxt == "[":
                tokens.append(Token("seq", tok, pos))
            elif tok[0] in "AE" and (len(tok) == 1 or not tok[1:2].isupper()):
                # quantifier glued to its first variable, as in "Au,v"
                tokens.append(Token("quant", tok[0], pos))
                if len(tok) > 1:
                    tokens.append(Token("var", tok[1:], pos + 1))
            elif tok[0].islower() or tok[0] == "_":
                tokens.append(Token("var", tok, pos))
            else:
                raise QuerySyntaxError(f"unexpected identifier {tok!r}", text, pos)
        elif kind != "ws":
            tokens.append(Token(kind, tok, pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# -- parser -----------------------------------------------------------------------

_REL = ("=", "!=", "<", ">", "<=", ">=")


class _Backtrack(Exception):
    pass


class Parser:
    def __init__(self, text: str):
        self.text = text
        body = text.strip()
        if body.startswith("?"):
            head = body.split(None, 1)[0]
            if head != HEADER:
                raise QuerySyntaxError(f"unsupported header {head!r}; only {HEADER} is available",
                                       text, text.find(head))
        self.tokens = tokenize(text)
        if self.tokens[0].kind == "header":
            self.tokens.pop(0)
        self.i = 0

    def peek(self, k: int = 0) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, msg: str, tok: Token | None = None) -> QuerySyntaxError:
        tok = tok or self.peek()
        return QuerySyntaxError(msg, self.text, tok.pos)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind not in ("op",):
            raise self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def accept_op(self, *ops: str) -> str | None:
        tok = self.peek()
        if tok.kind == "op" and tok.text in ops:
            self.i += 1
            return tok.text
        return None

    def parse(self):
        f = self.formula()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return f

    # formulas, loosest first
    def formula(self):
        left = self.implies()
        while self.accept_op("<=>"):
            left = Binary("iff", left, self.implies())
        return left

    def implies(self):
        left = self.xor()
        if self.accept_op("=>"):
            return Binary("implies", left, self.implies())
        return left

    def xor(self):
        left = self.disj()
        while self.accept_op("^"):
            left = Binary("xor", left, self.disj())
        return left

    def disj(self):
        left = self.conj()
        while self.accept_op("|"):
            left = Binary("or", left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.accept_op("&"):
            left = Binary("and", left, self.unary())
        return left

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "~":
            self.i += 1
            return Not(self.unary())
        if tok.kind == "quant":
            self.i += 1
            names = [self.variable()]
            while self.accept_op(","):
                names.append(self.variable())
            if len(set(names)) != len(names):
                raise self.error("variable repeated in quantifier", tok)
            return Quant(tok.text, tuple(names), self.formula())
        return self.primary()

    def variable(self) -> str:
        tok = self.peek()
        if tok.kind != "var":
            raise self.error("expected a variable name")
        self.i += 1
        return tok.text

    def primary(self):
        tok = self.peek()
        if tok.kind == "call":
            self.i += 1
            self.expect("(")
            args = [self.term()]
            while self.accept_op(","):
                args.append(self.term())
            self.expect(")")
            return Call(tok.text[1:], tuple(args))
        if tok.kind in ("seq", "out"):
            left = self.seq_operand()
            op = self.accept_op(*_REL)
            if op is None:
                raise self.error("expected a comparison after a sequence value")
            right = self.seq_operand()
            if isinstance(left, Out) and isinstance(right, Out):
                raise self.error("comparison between two output constants")
            return SeqCompare(op, left, right)
        if tok.kind == "var" and tok.text in ("true", "false") and self.peek(1).text not in _REL:
            self.i += 1
            return Bool(tok.text == "true")
        # a comparison of terms, or a parenthesised formula
        start = self.i
        inner = None
        try:
            left = self.term()
            op = self.accept_op(*_REL)
            if op is None:
                raise _Backtrack
            return Compare(op, left, self.term())
        except _Backtrack:
            self.i = start
        except QuerySyntaxError as exc:
            self.i, inner = start, exc
        if inner is not None and tok.text != "(":
            raise inner
        if self.accept_op("("):
            f = self.formula()
            self.expect(")")
            return f
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")

    def seq_operand(self):
        tok = self.peek()
        if tok.kind == "out":
            self.i += 1
            return Out(int(tok.text[1:]))
        if tok.kind == "seq":
            self.i += 1
            self.expect("[")
            idx = self.term()
            self.expect("]")
            return SeqAt(tok.text, idx)
        raise self.error("expected NAME[...] or @value")

    # terms
    def term(self):
        left = self.product()
        while True:
            op = self.accept_op("+", "-")
            if op is None:
                return left
            right = self.product()
            left = Add(left, right) if op == "+" else Sub(left, right)

    def product(self):
        tok = self.peek()
        if tok.kind == "num" and self.peek(1).text == "*":
            self.i += 2
            return Mul(int(tok.text), self.product())
        base = self.factor()
        while True:
            op = self.accept_op("*", "/")
            if op is None:
                return base
            n = self.peek()
            if n.kind != "num":
                raise self.error("multiplication and division need a constant")
            self.i += 1
            base = Mul(int(n.text), base) if op == "*" else Div(base, int(n.text))
            if op == "/" and int(n.text) == 0:
                raise self.error("division by zero", n)

    def factor(self):
        tok = self.peek()
        if tok.kind == "var":
            self.i += 1
            return Var(tok.text)
        if tok.kind == "num":
            self.i += 1
            return Num(int(tok.text))
        if tok.kind == "op" and tok.text == "(":
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        raise self.error("expected a term")


def parse(text: str):
    """Parse a query into a formula AST."""
    return Parser(text).parse()


# -- registry ---------------------------------------------------------------------

@dataclass
class Relation:
    automaton: Automaton
    params: tuple[str, ...]  # track names in argument order
    count_var: str | None = None
    source: str = ""


@dataclass
class Registry:
    """Named relations (``$name``) and sequences (``NAME[...]``).

    ``lazy`` maps a name to a zero-argument builder invoked on first use,
    so large libraries of definitions only pay for what a query touches.
    """

    relations: dict[str, Relation] = field(default_factory=dict)
    sequences: dict[str, Automaton] = field(default_factory=dict)
    lazy: dict[str, object] = field(default_factory=dict)

    def _force(self, name: str) -> None:
        builder = self.lazy.pop(name, None)
        if builder is not None:
            builder(self)

    def relation(self, name: str) -> Relation:
        if name not in self.relations:
            self._force(name)
        if name not in self.relations:
            raise CompileError(f"unknown relation ${name}")
        return self.relations[name]

    def sequence(self, name: str) -> Automaton:
        if name not in self.sequences:
            self._force(name)
        if name not in self.sequences:
            raise CompileError(f"unknown sequence {name}")
        return self.sequences[name]

    def known(self, name: str) -> bool:
        return name in self.relations or name in self.sequences or name in self.lazy

    def _check_new(self, name: str, replace: bool) -> None:
        if not replace and (name in self.relations or name in self.sequences):
            raise CompileError(f"{name!r} is already defined")

    def add_relation(self, name: str, a: Automaton, params=None, count_var=None, source="",
                     replace: bool = False) -> Relation:
        self._check_new(name, replace)
        params = tuple(a.tracks) if params is None else tuple(params)
        rel = Relation(a, params, count_var, source)
        self.relations[name] = rel
        return rel

    def add_sequence(self, name: str, dfao: Automaton, replace: bool = False) -> None:
        self._check_new(name, replace)
        if dfao.n_tracks != 1 or not dfao.is_dfao:
            raise CompileError("sequences must be 1-track DFAOs")
        self.sequences[name] = dfao

    def define(self, name: str, query: str, count_var: str | None = None,
               replace: bool = False) -> Relation:
        """Compile ``query`` and register it under ``name``."""
        self._check_new(name, replace)
        a = compile_query(query, self)
        if count_var is not None and count_var not in a.tracks:
            raise CompileError(f"{count_var!r} is not free in the definition of {name}")
        return self.add_relation(name, a, None, count_var, query, replace)

    def define_regex(self, name: str, pattern: str, arity: int = 1, replace: bool = False) -> Relation:
        from .regex import compile_regex

        self._check_new(name, replace)
        params = tuple(f"#{i}" for i in range(arity))
        a = fa.intersect_valid(compile_regex(pattern, params))
        return self.add_relation(name, a, params, None, pattern, replace)

    def combine(self, name: str, parts: list[tuple[str, int]], replace: bool = False) -> Automaton:
        self._check_new(name, replace)
        machines = []
        for part, out in parts:
            rel = self.relation(part)
            if rel.automaton.n_tracks != 1:
                raise CompileError(f"combine: {part} must have exactly one free variable")
            machines.append((fa.rename(rel.automaton, ["#0"]), out))
        dfao = fa.combine(machines)
        self.add_sequence(name, dfao, replace)
        return dfao

    def copy(self) -> "Registry":
        return Registry(dict(self.relations), dict(self.sequences), dict(self.lazy))


def default_registry() -> Registry:
    """Registry holding the Narayana word NA."""
    from .sequences import na_dfao

    reg = Registry()
    reg.add_sequence("NA", na_dfao())
    return reg


# -- compiler ---------------------------------------------------------------------

@dataclass
class _Linear:
    coeffs: dict[str, int]
    const: int
    sides: list[Automaton]
    fresh: list[str]


class Compiler:
    def __init__(self, registry: Registry):
        self.registry = registry
        self._fresh = itertools.count()

    def fresh(self) -> str:
        return f"_{next(self._fresh)}"

    # terms become linear forms plus side conditions
    def linear(self, t: Term) -> _Linear:
        if isinstance(t, Var):
            return _Linear({t.name: 1}, 0, [], [])
        if isinstance(t, Num):
            return _Linear({}, t.value, [], [])
        if isinstance(t, Mul):
            inner = self.linear(t.term)
            return _Linear({v: c * t.coeff for v, c in inner.coeffs.items()}, inner.const * t.coeff,
                           inner.sides, inner.fresh)
        if isinstance(t, (Add, Sub)):
            a, b = self.linear(t.left), self.linear(t.right)
            sign = 1 if isinstance(t, Add) else -1
            coeffs = dict(a.coeffs)
            for v, c in b.coeffs.items():
                coeffs[v] = coeffs.get(v, 0) + sign * c
            out = _Linear(coeffs, a.const + sign * b.const, a.sides + b.sides, a.fresh + b.fresh)
            if sign < 0:
                # natural-number subtraction: defined only when the result is >= 0
                out.sides.append(self.relation_of(coeffs, ">=", -out.const))
            return out
        if isinstance(t, Div):
            inner = self.linear(t.term)
            q = self.fresh()
            c = t.divisor
            lo = dict(inner.coeffs)
            lo[q] = lo.get(q, 0) - c
            sides = inner.sides + [self.relation_of(lo, ">=", -inner.const),
                                   self.relation_of(lo, "<=", c - 1 - inner.const)]
            return _Linear({q: 1}, 0, sides, inner.fresh + [q])
        raise TypeError(t)

    @staticmethod
    def relation_of(coeffs: dict[str, int], op: str, const: int) -> Automaton:
        names = [v for v in coeffs]
        return fa.extend_tracks(linear_relation(coeffs, op, const), names)

    def as_variable(self, t: Term) -> tuple[str, list[Automaton], list[str]]:
        """Name a term: a plain variable stays, anything else gets a fresh one."""
        if isinstance(t, Var):
            return t.name, [], []
        lin = self.linear(t)
        v = self.fresh()
        coeffs = dict(lin.coeffs)
        coeffs[v] = coeffs.get(v, 0) - 1
        eq = self.relation_of(coeffs, "=", -lin.const)
        return v, lin.sides + [eq], lin.fresh + [v]

    # formulas
    def compile(self, f, bound: frozenset = frozenset()) -> Automaton:
        if isinstance(f, Bool):
            return fa.constant_automaton((), f.value)
        if isinstance(f, Compare):
            return self.compare(f)
        if isinstance(f, SeqCompare):
            return self.seq_compare(f)
        if isinstance(f, Call):
            return self.call(f)
        if isinstance(f, Not):
            pushed = _push_not(f.body)
            if pushed is not None:
                return self.compile(pushed, bound)
            return fa.complement(self.compile(f.body, bound))
        if isinstance(f, Binary):
            if f.op == "and":
                return self.conjunction(_flatten_and(f), set(), bound)
            return fa.product(self.compile(f.left, bound), self.compile(f.right, bound), f.op)
        if isinstance(f, Quant):
            clash = set(f.variables) & bound
            if clash:
                raise CompileError(f"variable(s) {sorted(clash)} bound twice")
            inner = bound | set(f.variables)
            if f.kind == "E":
                return self.exists(f.variables, f.body, inner)
            neg = _push_not(f.body)
            body = neg if neg is not None else Not(f.body)
            return fa.complement(self.exists(f.variables, body, inner))
        raise TypeError(f)

    def exists(self, variables, body, bound) -> Automaton:
        if isinstance(body, Binary) and body.op == "or":
            return fa.product(self.exists(variables, body.left, bound),
                              self.exists(variables, body.right, bound), "or")
        parts = _flatten_and(body) if isinstance(body, Binary) and body.op == "and" else [body]
        return self.conjunction(parts, set(variables), bound)

    def conjunction(self, parts, project: set[str], bound) -> Automaton:
        machines = [self.compile(p, bound) for p in parts]
        return schedule(machines, project)

    def compare(self, f: Compare) -> Automaton:
        a, b = self.linear(f.left), self.linear(f.right)
        coeffs = dict(a.coeffs)
        for v, c in b.coeffs.items():
            coeffs[v] = coeffs.get(v, 0) - c
        main = self.relation_of({v: c for v, c in coeffs.items() if c}, f.op, b.const - a.const)
        names = term_vars(f.left) | term_vars(f.right)
        res = schedule([main] + a.sides + b.sides, set(a.fresh + b.fresh))
        return fa.extend_tracks(res, names)

    def seq_compare(self, f: SeqCompare) -> Automaton:
        ops = {"=": lambda x, y: x == y, "!=": lambda x, y: x != y, "<": lambda x, y: x < y,
               ">": lambda x, y: x > y, "<=": lambda x, y: x <= y, ">=": lambda x, y: x >= y}
        test = ops[f.op]
        parts: list[Automaton] = []
        project: list[str] = []
        sides = []
        for side in (f.left, f.right):
            if isinstance(side, Out):
                sides.append((None, None, [side.value]))
                continue
            dfao = self.registry.sequence(side.name)
            var, extra, fresh = self.as_variable(side.index)
            parts += extra
            project += fresh
            sides.append((dfao, var, sorted(set(dfao.outputs.tolist()))))
        options = []
        for x in sides[0][2]:
            for y in sides[1][2]:
                if test(x, y):
                    options.append((x, y))
        acc = None
        for x, y in options:
            pieces = [fa.rename(fa.output_is(d, val), [var])
                      for (d, var, _), val in zip(sides, (x, y)) if d is not None]
            m = pieces[0] if len(pieces) == 1 else fa.product(pieces[0], pieces[1], "and")
            acc = m if acc is None else fa.product(acc, m, "or")
        names = sorted({v for d, v, _ in sides if d is not None})
        if acc is None:
            acc = fa.constant_automaton((), False)
        acc = fa.extend_tracks(acc, names)
        res = schedule([acc] + parts, set(project))
        return fa.extend_tracks(res, free_vars(f))

    def call(self, f: Call) -> Automaton:
        rel = self.registry.relation(f.name)
        if len(f.args) != len(rel.params):
            raise CompileError(f"${f.name} takes {len(rel.params)} arguments, got {len(f.args)}")
        if rel.automaton.is_dfao:
            raise CompileError(f"${f.name} is a sequence; index it with {f.name}[...]")
        mapping: dict[str, str] = {}
        extra: list[Automaton] = []
        project: list[str] = []
        for param, arg in zip(rel.params, f.args):
            var, sides, fresh = self.as_variable(arg)
            mapping[param] = var
            extra += sides
            project += fresh
        a = rel.automaton
        # parameters missing from the machine (dropped constant tracks) stay unconstrained
        a = fa.extend_tracks(a, [p for p in rel.params if p not in a.tracks])
        renamed = fa.rename(a, mapping)
        if len(set(mapping.values())) < len(mapping):
            renamed = fa.intersect_valid(renamed)
        res = schedule([renamed] + extra, set(project))
        return fa.extend_tracks(res, free_vars(f))


def _flatten_and(f) -> list:
    if isinstance(f, Binary) and f.op == "and":
        return _flatten_and(f.left) + _flatten_and(f.right)
    return [f]


def _total_term(t: Term) -> bool:
    """True when the term is defined for every assignment (no - or /)."""
    if isinstance(t, (Var, Num)):
        return True
    if isinstance(t, Add):
        return _total_term(t.left) and _total_term(t.right)
    if isinstance(t, Mul):
        return _total_term(t.term)
    return False


def _push_not(f):
    """Negation pushed one level down where that is sound, else None."""
    if isinstance(f, Not):
        return f.body
    if isinstance(f, Bool):
        return Bool(not f.value)
    if isinstance(f, Binary):
        if f.op == "implies":
            return Binary("and", f.left, Not(f.right))
        if f.op == "or":
            return Binary("and", Not(f.left), Not(f.right))
        if f.op == "xor":
            return Binary("iff", f.left, f.right)
        if f.op == "iff":
            return Binary("xor", f.left, f.right)
        return None
    if isinstance(f, Compare) and _total_term(f.left) and _total_term(f.right):
        return Compare(_NEG_OP[f.op], f.left, f.right)
    if isinstance(f, SeqCompare):
        if all(isinstance(s, Out) or _total_term(s.index) for s in (f.left, f.right)):
            return SeqCompare(_NEG_OP[f.op], f.left, f.right)
    if isinstance(f, Quant):
        return Quant("A" if f.kind == "E" else "E", f.variables, Not(f.body))
    return None


def schedule(parts: list[Automaton], project: set[str]) -> Automaton:
    """Conjunction of ``parts`` with the variables in ``project`` quantified away.

    Variables are eliminated as soon as only one part mentions them; otherwise
    the cheapest pair of parts sharing a variable is merged first.
    """
    parts = list(parts)
    project = set(project)
    if not parts:
        return fa.constant_automaton((), True)
    while True:
        changed = True
        while changed:
            changed = False
            for v in sorted(project):
                holders = [k for k, p in enumerate(parts) if v in p.tracks]
                if not holders:
                    project.discard(v)
                    changed = True
                elif len(holders) == 1:
                    # one variable at a time: far fewer subsets than a joint projection
                    k = holders[0]
                    parts[k] = fa.project_exists(parts[k], [v])
                    project.discard(v)
                    changed = True
                    break
        if len(parts) == 1:
            return parts[0]
        best = None
        for x, y in itertools.combinations(range(len(parts)), 2):
            shared = set(parts[x].tracks) & set(parts[y].tracks)
            useful = bool(shared & project) if project else bool(shared)
            cost = parts[x].n_states * parts[y].n_states
            key = (not useful, cost)
            if best is None or key < best[0]:
                best = (key, x, y)
        _, x, y = best
        merged = fa.product(parts[x], parts[y], "and")
        parts = [p for k, p in enumerate(parts) if k not in (x, y)] + [merged]
        if merged.is_empty():
            # the conjunction is unsatisfiable; keep the track set honest
            tracks = set().union(*(set(p.tracks) for p in parts)) - project
            return fa.constant_automaton(tuple(sorted(tracks)), False)


def compile_formula(f, registry: Registry | None = None) -> Automaton:
    registry = registry if registry is not None else default_registry()
    free = free_vars(f)
    a = Compiler(registry).compile(f)
    return fa.extend_tracks(a, free) if set(a.tracks) != free else a


def compile_query(text: str, registry: Registry | None = None) -> Automaton:
    """Parse and compile ``text``; closed queries give a 0-track machine."""
    try:
        return compile_formula(parse(text), registry)
    except AutomatonError as exc:
        if isinstance(exc, fa.QueryTooLarge):
            raise
        raise CompileError(str(exc)) from exc


def evaluate(text: str, registry: Registry | None = None) -> bool:
    a = compile_query(text, registry)
    if a.tracks:
        raise CompileError(f"query has free variables {list(a.tracks)}")
    return a.verdict


# -- scripts ----------------------------------------------------------------------

@dataclass
class ScriptResult:
    command: str
    name: str
    verdict: bool | None = None
    states: int | None = None


_ALPHABET = re.compile(r"\{[^}]*\}|msd_nara|msd_fib|[A-Za-z_]+")


def _split_statements(text: str) -> list[str]:
    """Split on ':'/';' outside quotes; drop '#' comments outside quotes."""
    out, cur, quoted = [], [], False
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            j = text.find("\n", i)
            i = len(text) if j < 0 else j
            continue
        elif ch in ":;" and not quoted:
            stmt = "".join(cur).strip()
            if stmt:
                out.append(stmt)
            cur = []
            i += 1
            continue
        cur.append(ch)
        i += 1
    tail = "".join(cur).strip()
    if tail:
        out.append(tail)
    return out


def run_script(text: str, registry: Registry | None = None, replace: bool = False) -> list[ScriptResult]:
    """Execute def/eval/reg/combine commands in the query tool's script style."""
    registry = registry if registry is not None else default_registry()
    results = []
    for stmt in _split_statements(text):
        m = re.match(r'(\w+)\s+(\w+)\s*(.*)$', stmt, re.S)
        if not m:
            raise QuerySyntaxError(f"cannot parse command {stmt!r}")
        cmd, name, rest = m.groups()
        quoted = re.search(r'"(.*)"', rest, re.S)
        if cmd in ("def", "eval", "reg") and not quoted:
            raise QuerySyntaxError(f"{cmd} {name}: missing quoted argument")
        if cmd == "def":
            pre = rest[:quoted.start()].split()
            rel = registry.define(name, quoted.group(1), pre[0] if pre else None, replace=replace)
            results.append(ScriptResult(cmd, name, states=rel.automaton.state_count()))
        elif cmd == "eval":
            a = compile_query(quoted.group(1), registry)
            verdict = a.verdict if not a.tracks else None
            results.append(ScriptResult(cmd, name, verdict, a.state_count()))
        elif cmd == "reg":
            alph = _ALPHABET.findall(rest[:quoted.start()])
            for item in alph:
                if item not in ("msd_nara", "{0,1}"):
                    raise CompileError(f"reg {name}: unsupported alphabet {item}")
            rel = registry.define_regex(name, quoted.group(1), max(len(alph), 1), replace=replace)
            results.append(ScriptResult(cmd, name, states=rel.automaton.state_count()))
        elif cmd == "combine":
            parts = []
            for item in rest.split():
                part, _, out = item.partition("=")
                if not out:
                    raise QuerySyntaxError(f"combine {name}: expected part=value, got {item!r}")
                parts.append((part, int(out)))
            dfao = registry.combine(name, parts, replace=replace)
            results.append(ScriptResult(cmd, name, states=dfao.n_states))
        else:
            raise QuerySyntaxError(f"unknown command {cmd!r}")
    return results
