"""Compile G expressions to closed terms over numerals of type omega(tau_s(s)).

Every k-ary node compiles to a closed term ``E`` with
``E rho(n1) ... rho(nk) =βη rho(f(n1, ..., nk))``; a composite node embeds the
compiled children applied to the argument variables ``n1 ... nk``.  The
selectors use s-tuples of numerals, so one width ``s`` is shared by the whole
expression and must be at least :func:`min_width`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence

from . import gexpr as G
from .encodings import SUCC, church, numeral_value
from .simple_types import SimpleType, explain_check, function_type
from .syntax import Named, app, lam, to_debruijn
from .terms import App, Fuel, FuelExhausted, Lam, Term, Var, apps, lams, normalize, shift


class WidthTooSmall(ValueError):
    def __init__(self, s: int, s_min: int):
        super().__init__(f"tuple width {s} is below the minimum {s_min}")
        self.s = s
        self.s_min = s_min


@dataclass(frozen=True)
class WidthConstraint:
    s_min: int


@dataclass(frozen=True)
class CompiledFunction:
    term: Term
    arity: int
    width: int

    @property
    def claimed_type(self) -> SimpleType:
        return function_type(self.arity, self.width)


def min_width(e: G.GExpr | G.GFunction) -> WidthConstraint:
    if isinstance(e, G.GFunction):
        e = e.body
    s = 1
    for node in G.nodes(e):
        if isinstance(node, G.ModSelect):
            s = max(s, node.l)
        elif isinstance(node, G.LeqSelect):
            s = max(s, node.l + 1)
    return WidthConstraint(s)


# -- tuple helpers on named terms ---------------------------------------------------


def _tuple(elems: Sequence[Named], binder: str = "q") -> Named:
    return lam(binder, app(binder, *elems))


def _sel(i: int, s: int) -> Named:
    zs = [f"z{j}" for j in range(1, s + 1)]
    return lam(*zs, zs[i - 1])


def _proj(i: int, s: int, p: Named) -> Named:
    return app(p, _sel(i, s))


def rotation_step(l: int, s: int) -> Term:
    """``\\p. <P2 p, ..., Pl p, P1 p, P(l+1) p, ..., Ps p>``: rotate the first l slots."""
    order = list(range(2, l + 1)) + [1] + list(range(l + 1, s + 1))
    return to_debruijn(lam("p", _tuple([_proj(i, s, "p") for i in order])))


def shift_succ_step(s: int) -> Term:
    """``\\p. <P2 p, ..., Ps p, succ (Ps p)>``."""
    elems = [_proj(i, s, "p") for i in range(2, s + 1)] + [app(SUCC, _proj(s, s, "p"))]
    return to_debruijn(lam("p", _tuple(elems)))


def gadget_truncsub(l: int, s: int) -> Term:
    """``\\n. P(s-l) (n F <0, ..., 0>)`` computing ``max(n - l, 0)``.

    After n steps of F the tuple holds ``max(n-s+1, 0), ..., n-1, n``.
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    if s < l + 1:
        raise WidthTooSmall(s, l + 1)
    zeros = _tuple([church(0)] * s)
    return to_debruijn(lam("n", _proj(s - l, s, app("n", shift_succ_step(s), zeros))))


# -- the compiler -------------------------------------------------------------------------


class _Compiler:
    def __init__(self, k: int, s: int):
        self.k = k
        self.s = s
        self.ns = [f"n{i}" for i in range(1, k + 1)]
        self.cache: dict[G.GExpr, Term] = {}

    def sub(self, e: G.GExpr) -> Named:
        """``(E_e n1 ... nk)`` with ``E_e`` the closed compiled child."""
        return app(self.compile(e), *self.ns)

    def compile(self, e: G.GExpr) -> Term:
        if e not in self.cache:
            self.cache[e] = to_debruijn(lam(*self.ns, self.body(e)))
        return self.cache[e]

    def body(self, e: G.GExpr) -> Named:
        s = self.s
        if isinstance(e, G.Zero):
            return lam("f", "x", "x")
        if isinstance(e, G.One):
            return lam("f", "x", app("f", "x"))
        if isinstance(e, G.Proj):
            return self.ns[e.i - 1]
        if isinstance(e, G.Add):
            return lam("f", "x", app(self.sub(e.left), "f", app(self.sub(e.right), "f", "x")))
        if isinstance(e, G.Mul):
            return lam("f", "x", app(self.sub(e.left), app(self.sub(e.right), "f"), "x"))
        if isinstance(e, G.IfZero):
            return lam(
                "f", "x",
                app(self.sub(e.test), lam("y", app(self.sub(e.orelse), "f", "x")), app(self.sub(e.then), "f", "x")),
            )
        if isinstance(e, G.ModSelect):
            l = e.l
            ms = [app(self.sub(h), "f", "x", "a") for h in e.branches]
            pad = [app("x", "a")] * (s - l)
            start = _tuple(ms[1:] + ms[:1] + pad)
            return lam("f", "x", "a", _proj(l, s, app(self.sub(e.test), rotation_step(l, s), start)))
        if isinstance(e, G.LeqSelect):
            extra = ("f", "x", "a1", "a2", "a3")
            test = app(gadget_truncsub(e.l, s), self.sub(e.test))
            return lam(
                "f", "x", "a1", "a2", "a3",
                app(test, lam("t", app(self.sub(e.orelse), *extra)), app(self.sub(e.then), *extra)),
            )
        raise TypeError(f"not a G expression: {e!r}")


def compile_function(f: G.GFunction, s: Optional[int] = None) -> CompiledFunction:
    """Compile at width ``s`` (default: the minimum width)."""
    s_min = min_width(f).s_min
    if s is None:
        s = s_min
    if s < s_min:
        raise WidthTooSmall(s, s_min)
    term = _Compiler(f.arity, s).compile(f.body)
    return CompiledFunction(term, f.arity, s)


compile = compile_function


# -- verification -------------------------------------------------------------------------


@dataclass(frozen=True)
class CaseResult:
    args: tuple[int, ...]
    expected: int
    got: Optional[int]
    ok: bool
    steps: Optional[int] = None
    error: Optional[str] = None


@dataclass(frozen=True)
class VerificationReport:
    arity: int
    width: int
    type_ok: bool
    type_error: Optional[str]
    cases: tuple[CaseResult, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return self.type_ok and all(c.ok for c in self.cases)

    @property
    def n_passed(self) -> int:
        return sum(c.ok for c in self.cases)


def apply_numerals(term: Term, args: Iterable[int]) -> Term:
    return apps(term, *(church(n) for n in args))


def run_case(c: CompiledFunction, f: G.GFunction, args: Sequence[int], fuel=None, strategy: str = "nbe") -> CaseResult:
    args = tuple(args)
    expected = G.eval_function(f, args)
    try:
        res = normalize(apply_numerals(c.term, args), fuel, strategy)
    except FuelExhausted as e:
        return CaseResult(args, expected, None, False, None, str(e))
    want = normalize(church(expected), fuel, strategy).term
    return CaseResult(args, expected, numeral_value(res.term), res.term == want, res.steps)


def verify(
    c: CompiledFunction,
    f: G.GFunction,
    inputs: Iterable[Sequence[int]],
    fuel: Fuel | int | None = None,
    strategy: str = "nbe",
    check_types: bool = True,
) -> VerificationReport:
    """Check ``c`` against the oracle on each input vector, plus one type check."""
    if c.arity != f.arity:
        raise G.ArityMismatch(f"compiled arity {c.arity} differs from {f.arity}")
    type_error = explain_check(c.term, c.claimed_type) if check_types else None
    cases = []
    for args in inputs:
        if len(args) != f.arity:
            raise G.ArityMismatch(f"input {tuple(args)} does not have {f.arity} entries")
        cases.append(run_case(c, f, args, fuel, strategy))
    return VerificationReport(c.arity, c.width, type_error is None, type_error, tuple(cases))


def all_inputs(k: int, max_input: int) -> list[tuple[int, ...]]:
    return list(product(range(max_input + 1), repeat=k))


# -- mutation hook ------------------------------------------------------------------------


def _is_selector(t: Term) -> Optional[tuple[int, int]]:
    """``(width, i)`` if t is ``\\x1..xs. xi`` with s >= 2."""
    s = 0
    while isinstance(t, Lam):
        s += 1
        t = t.body
    if s >= 2 and isinstance(t, Var) and t.index < s:
        return s, s - t.index
    return None


def corrupt(c: CompiledFunction) -> CompiledFunction:
    """A deliberately wrong variant, for mutation tests of the verifier.

    The first tuple projection found (pre-order) is redirected to the next
    slot; a term without projections gets an extra successor on its result.
    """
    done = False

    def go(t: Term) -> Term:
        nonlocal done
        if done:
            return t
        sel = _is_selector(t)
        if sel is not None:
            s, i = sel
            done = True
            return lams(s, Var(s - (i % s + 1)))
        if isinstance(t, Lam):
            return Lam(go(t.body))
        if isinstance(t, App):
            fun = go(t.fun)
            return App(fun, go(t.arg))
        return t

    term = go(c.term)
    if not done:
        k = c.arity
        applied = apps(shift(c.term, k, 0), *(Var(k - 1 - i) for i in range(k)))
        term = lams(k, App(SUCC, applied))
    return CompiledFunction(term, c.arity, c.width)
