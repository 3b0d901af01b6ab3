"""Concrete syntax: lambda terms with names, simple types, and G expressions.

Term grammar::

    term  ::= ("\\" | "λ") ident+ "." term | app
    app   ::= atom+ [lambda]
    atom  ::= ident | "(" term ")"

Type grammar: ``o``, right-associative ``->``, parentheses, ``w(T)`` for the
numeral type over T and ``tup(s)`` for the s-tuple type.

G grammar: ``0``, ``1``, ``x1``..``xk``, ``add(e,e)``, ``mul(e,e)``,
``ifz(e,e,e)``, ``modsel[l](e; e1,...,el)``, ``leqsel[l](e; e,e)`` and
``inset[l,t;{finite};{residues}](e; e,e)`` (expanded on parse).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import gexpr as G
from .simple_types import Arrow, Base, SimpleType, TVar, omega, tau_s
from .terms import App, Lam, Term, Var


class ParseError(SyntaxError):
    def __init__(self, msg: str, pos: int, src: str = ""):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos
        self.src = src


class UnboundVariable(ParseError):
    def __init__(self, names: Sequence[str], src: str = ""):
        SyntaxError.__init__(self, f"unbound variable(s): {', '.join(names)}")
        self.names = list(names)
        self.pos = -1
        self.src = src


# -- named terms ------------------------------------------------------------------


@dataclass(frozen=True)
class NVar:
    name: str


@dataclass(frozen=True)
class NLam:
    name: str
    body: "Named"


@dataclass(frozen=True)
class NApp:
    fun: "Named"
    arg: "Named"


@dataclass(frozen=True)
class Closed:
    """A closed de Bruijn term embedded in a named term."""

    term: Term


Named = Union[NVar, NLam, NApp, Closed]


def lam(*names_and_body) -> Named:
    *names, body = names_and_body
    body = _named(body)
    for n in reversed(names):
        body = NLam(n, body)
    return body


def app(head, *args) -> Named:
    head = _named(head)
    for a in args:
        head = NApp(head, _named(a))
    return head


def _named(x) -> Named:
    if isinstance(x, str):
        return NVar(x)
    if isinstance(x, (Var, Lam, App)):
        return Closed(x)
    return x


def to_debruijn(t: Named, free: Sequence[str] = ()) -> Term:
    """Convert to de Bruijn form; ``free`` lists the outer context, innermost last."""

    def go(u: Named, ctx: list[str]) -> Term:
        if isinstance(u, NVar):
            for i in range(len(ctx) - 1, -1, -1):
                if ctx[i] == u.name:
                    return Var(len(ctx) - 1 - i)
            raise UnboundVariable([u.name])
        if isinstance(u, Closed):
            return u.term
        if isinstance(u, NLam):
            ctx.append(u.name)
            try:
                return Lam(go(u.body, ctx))
            finally:
                ctx.pop()
        return App(go(u.fun, ctx), go(u.arg, ctx))

    return go(t, list(free))


# -- term parser --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<lam>\\|λ)|(?P<dot>\.)|(?P<lp>\()|(?P<rp>\))|(?P<id>[A-Za-z_][A-Za-z0-9_']*))")


def _tokenize(src: str):
    pos = 0
    out = []
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {src[pos]!r}", pos, src)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("eof", "", len(src)))
    return out


class _TermParser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind):
        tok = self.toks[self.i]
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2], self.src)
        self.i += 1
        return tok

    def term(self) -> Named:
        if self.peek()[0] == "lam":
            self.take("lam")
            names = [self.take("id")[1]]
            while self.peek()[0] == "id":
                names.append(self.take("id")[1])
            self.take("dot")
            return lam(*names, self.term())
        return self.application()

    def application(self) -> Named:
        items = [self.atom()]
        while self.peek()[0] in ("id", "lp", "lam"):
            if self.peek()[0] == "lam":
                items.append(self.term())
                break
            items.append(self.atom())
        return app(*items)

    def atom(self) -> Named:
        kind, text, pos = self.peek()
        if kind == "id":
            self.i += 1
            return NVar(text)
        if kind == "lp":
            self.i += 1
            t = self.term()
            self.take("rp")
            return t
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos, self.src)


def free_names(t: Named, bound: frozenset = frozenset()) -> list[str]:
    out: list[str] = []

    def go(u, bound):
        if isinstance(u, NVar):
            if u.name not in bound and u.name not in out:
                out.append(u.name)
        elif isinstance(u, NLam):
            go(u.body, bound | {u.name})
        elif isinstance(u, NApp):
            go(u.fun, bound)
            go(u.arg, bound)

    go(t, bound)
    return out


def parse_named(src: str) -> Named:
    p = _TermParser(src)
    t = p.term()
    p.take("eof")
    return t


def parse_term(src: str, allow_free: bool = False) -> Term:
    """Parse a term with named variables into de Bruijn form.

    With ``allow_free``, free names get the outermost indices in order of first
    appearance (the first free name is the outermost).
    """
    t = parse_named(src)
    free = free_names(t)
    if free and not allow_free:
        raise UnboundVariable(free, src)
    return to_debruijn(t, list(reversed(free)))


# -- term printer ---------------------------------------------------------------------

_NAMES = ["f", "x", "a", "p", "y", "z", "n", "m", "b", "c", "d", "e", "g", "h", "q", "r", "u", "v", "w"]


def _binder_name(level: int) -> str:
    base = _NAMES[level % len(_NAMES)]
    return base if level < len(_NAMES) else f"{base}{level // len(_NAMES)}"


def format_term(t: Term, free: Sequence[str] = ()) -> str:
    """Print with minimal parentheses; binder names are unique along each path."""
    names = list(free)

    def go(u: Term, ctx: list[str]) -> str:
        if isinstance(u, Var):
            if u.index < len(ctx):
                return ctx[len(ctx) - 1 - u.index]
            return f"_free{u.index - len(ctx)}"
        if isinstance(u, Lam):
            binders = []
            while isinstance(u, Lam):
                name = _binder_name(len(ctx))
                while name in ctx:
                    name += "'"
                binders.append(name)
                ctx = ctx + [name]
                u = u.body
            return "\\" + " ".join(binders) + ". " + go(u, ctx)
        head = u
        args = []
        while isinstance(head, App):
            args.append(head.arg)
            head = head.fun
        args.reverse()
        parts = [_atom(head, ctx)]
        for j, a in enumerate(args):
            if isinstance(a, Lam) and j == len(args) - 1:
                parts.append(go(a, ctx))
            else:
                parts.append(_atom(a, ctx))
        return " ".join(parts)

    def _atom(u: Term, ctx) -> str:
        s = go(u, ctx)
        return s if isinstance(u, Var) else f"({s})"

    return go(t, names)


# -- types ------------------------------------------------------------------------------

_TYPE_TOKEN = re.compile(r"\s*(?:(?P<arrow>->)|(?P<lp>\()|(?P<rp>\))|(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*))")


def parse_type(src: str) -> SimpleType:
    toks = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TYPE_TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {src[pos]!r}", pos, src)
        toks.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    toks.append(("eof", "", len(src)))
    i = 0

    def take(kind):
        nonlocal i
        if toks[i][0] != kind:
            raise ParseError(f"expected {kind}, found {toks[i][1] or 'end of input'!r}", toks[i][2], src)
        i += 1
        return toks[i - 1]

    def ty():
        d = atom()
        if toks[i][0] == "arrow":
            take("arrow")
            return Arrow(d, ty())
        return d

    def atom():
        kind, text, p = toks[i]
        if kind == "lp":
            take("lp")
            t = ty()
            take("rp")
            return t
        if kind == "id":
            take("id")
            if text == "o":
                return Base()
            if text == "w":
                take("lp")
                t = ty()
                take("rp")
                return omega(t)
            if text == "tup":
                take("lp")
                n = int(take("num")[1])
                take("rp")
                return tau_s(n)
            raise ParseError(f"unknown type name {text!r}", p, src)
        raise ParseError(f"unexpected {text or 'end of input'!r}", p, src)

    t = ty()
    take("eof")
    return t


def _tuple_width(t: SimpleType) -> Optional[int]:
    alpha = omega(Base())
    if not (isinstance(t, Arrow) and t.cod == alpha and isinstance(t.dom, Arrow)):
        return None
    s, u = 0, t.dom
    while isinstance(u, Arrow) and u.dom == alpha:
        s += 1
        u = u.cod
    return s if s >= 1 and u == alpha else None


def _is_omega(t: SimpleType) -> bool:
    return isinstance(t, Arrow) and isinstance(t.dom, Arrow) and t.dom.dom == t.dom.cod and t.cod == t.dom


def _abbreviation(t: SimpleType) -> Optional[str]:
    """``tup(s)`` or ``w(X)`` when ``t`` prints as a single atom, else None."""
    s = _tuple_width(t)
    if s is not None:
        return f"tup({s})"
    if not _is_omega(t):
        return None
    # w(X) -> w(X) is also w(X -> X); such function types print as arrows.
    if t.cod == t.dom and _abbreviation(t.dom) is not None:
        return None
    return f"w({format_type(t.dom.dom, True)})"


def format_type(t: SimpleType, abbreviate: bool = False) -> str:
    """Print a type; with ``abbreviate``, numeral and tuple types use ``w(..)`` and ``tup(s)``."""
    if isinstance(t, Base):
        return "o"
    if isinstance(t, TVar):
        return f"t{t.id}"
    if abbreviate:
        atom = _abbreviation(t)
        if atom is not None:
            return atom
    d = format_type(t.dom, abbreviate)
    atomic = not isinstance(t.dom, Arrow) or abbreviate and _abbreviation(t.dom) is not None
    if not atomic:
        d = f"({d})"
    return f"{d} -> {format_type(t.cod, abbreviate)}"


# -- G expressions ----------------------------------------------------------------------

_G_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x\d+)|(?P<name>[a-z]+)|(?P<sym>[()\[\]{},;]))")


class _GParser:
    def __init__(self, src: str):
        self.src = src
        self.toks = []
        pos = 0
        while True:
            while pos < len(src) and src[pos].isspace():
                pos += 1
            if pos >= len(src):
                break
            m = _G_TOKEN.match(src, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {src[pos]!r}", pos, src)
            k = m.lastgroup
            self.toks.append((k, m.group(k), m.start(k)))
            pos = m.end()
        self.toks.append(("eof", "", len(src)))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def sym(self, s):
        kind, text, pos = self.peek()
        if text != s or kind != "sym":
            raise ParseError(f"expected {s!r}, found {text or 'end of input'!r}", pos, self.src)
        self.i += 1

    def num(self) -> int:
        kind, text, pos = self.peek()
        if kind != "num":
            raise ParseError(f"expected a number, found {text or 'end of input'!r}", pos, self.src)
        self.i += 1
        return int(text)

    def nums(self, close: str) -> list[int]:
        out = []
        if self.peek()[1] == close:
            return out
        out.append(self.num())
        while self.peek()[1] == ",":
            self.sym(",")
            out.append(self.num())
        return out

    def exprs(self, n: Optional[int] = None) -> list[G.GExpr]:
        out = [self.expr()]
        while self.peek()[1] == ",":
            self.sym(",")
            out.append(self.expr())
        if n is not None and len(out) != n:
            raise ParseError(f"expected {n} expressions, found {len(out)}", self.peek()[2], self.src)
        return out

    def expr(self) -> G.GExpr:
        kind, text, pos = self.peek()
        self.i += 1
        if kind == "num":
            if text == "0":
                return G.Zero()
            if text == "1":
                return G.One()
            raise ParseError(f"only the constants 0 and 1 exist, found {text}", pos, self.src)
        if kind == "var":
            i = int(text[1:])
            if i < 1:
                raise ParseError("variables are numbered from x1", pos, self.src)
            return G.Proj(i)
        if kind == "name":
            try:
                if text in ("add", "mul"):
                    self.sym("(")
                    a, b = self.exprs(2)
                    self.sym(")")
                    return G.Add(a, b) if text == "add" else G.Mul(a, b)
                if text == "ifz":
                    self.sym("(")
                    g, h1, h2 = self.exprs(3)
                    self.sym(")")
                    return G.IfZero(g, h1, h2)
                if text in ("modsel", "leqsel"):
                    self.sym("[")
                    l = self.num()
                    self.sym("]")
                    self.sym("(")
                    g = self.expr()
                    self.sym(";")
                    if text == "modsel":
                        hs = self.exprs(l)
                        self.sym(")")
                        return G.ModSelect(l, g, tuple(hs))
                    h1, h2 = self.exprs(2)
                    self.sym(")")
                    return G.LeqSelect(l, g, h1, h2)
                if text == "inset":
                    self.sym("[")
                    pre = self.num()
                    self.sym(",")
                    period = self.num()
                    self.sym(";")
                    self.sym("{")
                    finite = self.nums("}")
                    self.sym("}")
                    self.sym(";")
                    self.sym("{")
                    residues = self.nums("}")
                    self.sym("}")
                    self.sym("]")
                    self.sym("(")
                    g = self.expr()
                    self.sym(";")
                    h1, h2 = self.exprs(2)
                    self.sym(")")
                    return G.if_in_epset(G.EPSet(pre, period, frozenset(finite), frozenset(residues)), h1, h2, g)
            except ValueError as e:
                if isinstance(e, ParseError):
                    raise
                raise ParseError(str(e), pos, self.src) from e
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos, self.src)


def parse_gexpr(src: str) -> G.GExpr:
    p = _GParser(src)
    e = p.expr()
    if p.peek()[0] != "eof":
        raise ParseError(f"trailing input {p.peek()[1]!r}", p.peek()[2], src)
    return e


def parse_gfunction(src: str, arity: Optional[int] = None) -> G.GFunction:
    return G.GFunction.of(parse_gexpr(src), arity)


def format_gexpr(e: G.GExpr) -> str:
    if isinstance(e, G.Zero):
        return "0"
    if isinstance(e, G.One):
        return "1"
    if isinstance(e, G.Proj):
        return f"x{e.i}"
    if isinstance(e, G.Add):
        return f"add({format_gexpr(e.left)}, {format_gexpr(e.right)})"
    if isinstance(e, G.Mul):
        return f"mul({format_gexpr(e.left)}, {format_gexpr(e.right)})"
    if isinstance(e, G.IfZero):
        return f"ifz({', '.join(map(format_gexpr, G.children(e)))})"
    if isinstance(e, G.ModSelect):
        return f"modsel[{e.l}]({format_gexpr(e.test)}; {', '.join(map(format_gexpr, e.branches))})"
    if isinstance(e, G.LeqSelect):
        return f"leqsel[{e.l}]({format_gexpr(e.test)}; {format_gexpr(e.then)}, {format_gexpr(e.orelse)})"
    raise TypeError(f"not a G expression: {e!r}")
