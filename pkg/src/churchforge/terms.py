"""Untyped lambda terms with de Bruijn indices, and beta/eta normalization.

Three normalizers share one contract (the beta-eta normal form is unique, so
they must agree):

* ``"normal"``: leftmost-outermost beta reduction, performed as head
  reduction followed by normalization of the arguments left to right.  The
  contraction sequence is exactly the one obtained by iterating
  :func:`beta_step`.
* ``"innermost"``: rightmost-innermost (arguments before functions).
* ``"nbe"``: normalization by evaluation with call-by-need thunks.  Orders of
  magnitude faster on the compiled tuple gadgets; each closure application
  counts as one beta step.

All of them finish with exhaustive eta contraction.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Optional, Union

# Church numerals are nested applications, so every structural recursion here
# goes as deep as the largest numeral involved.
if sys.getrecursionlimit() < 50_000:
    sys.setrecursionlimit(50_000)


@dataclass(frozen=True, slots=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise NegativeIndex(f"negative de Bruijn index {self.index}")


@dataclass(frozen=True, slots=True)
class Lam:
    body: "Term"


@dataclass(frozen=True, slots=True)
class App:
    fun: "Term"
    arg: "Term"


Term = Union[Var, Lam, App]

DEFAULT_FUEL = 1_000_000
STRATEGIES = ("normal", "innermost", "nbe")


class NegativeIndex(ValueError):
    pass


class FuelExhausted(RuntimeError):
    def __init__(self, max_steps: int):
        super().__init__(f"normalization exceeded {max_steps} steps")
        self.max_steps = max_steps


@dataclass(frozen=True)
class Fuel:
    max_steps: int = DEFAULT_FUEL

    def __post_init__(self):
        if self.max_steps <= 0:
            raise ValueError("fuel must be positive")


@dataclass(frozen=True)
class Normalized:
    term: Term
    beta_steps: int
    eta_steps: int

    @property
    def steps(self) -> int:
        return self.beta_steps + self.eta_steps


# -- construction helpers ----------------------------------------------------


def lams(n: int, body: Term) -> Term:
    for _ in range(n):
        body = Lam(body)
    return body


def apps(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split ``h a1 ... an`` into ``(h, [a1, ..., an])``."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def size(t: Term) -> int:
    n = 0
    stack = [t]
    while stack:
        u = stack.pop()
        n += 1
        if isinstance(u, Lam):
            stack.append(u.body)
        elif isinstance(u, App):
            stack.append(u.fun)
            stack.append(u.arg)
    return n


def free_indices(t: Term, depth: int = 0) -> set[int]:
    """Free de Bruijn indices of ``t``, relative to its outside."""
    if isinstance(t, Var):
        return {t.index - depth} if t.index >= depth else set()
    if isinstance(t, Lam):
        return free_indices(t.body, depth + 1)
    return free_indices(t.fun, depth) | free_indices(t.arg, depth)


def has_free(t: Term, j: int) -> bool:
    if isinstance(t, Var):
        return t.index == j
    if isinstance(t, Lam):
        return has_free(t.body, j + 1)
    return has_free(t.fun, j) or has_free(t.arg, j)


def is_closed(t: Term) -> bool:
    return not free_indices(t)


# -- shifting and substitution -----------------------------------------------


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    """Add ``by`` to every free index ``>= cutoff``."""
    if by == 0:
        return t
    if isinstance(t, Var):
        if t.index >= cutoff:
            if t.index + by < 0:
                raise NegativeIndex(f"shifting Var {t.index} by {by}")
            return Var(t.index + by)
        return t
    if isinstance(t, Lam):
        return Lam(shift(t.body, by, cutoff + 1))
    return App(shift(t.fun, by, cutoff), shift(t.arg, by, cutoff))


def substitute(t: Term, j: int, s: Term) -> Term:
    """Capture-avoiding ``t[j := s]``."""
    if isinstance(t, Var):
        return s if t.index == j else t
    if isinstance(t, Lam):
        return Lam(substitute(t.body, j + 1, shift(s, 1, 0)))
    return App(substitute(t.fun, j, s), substitute(t.arg, j, s))


def instantiate(body: Term, arg: Term) -> Term:
    """Contract ``(Lam body) arg``: replace index 0 by ``arg`` and drop the binder.

    Equivalent to ``shift(substitute(body, 0, shift(arg, 1, 0)), -1, 0)`` but
    shifts ``arg`` once per binder depth actually reached.
    """
    cache: dict[int, Term] = {}

    def go(t: Term, depth: int) -> Term:
        if isinstance(t, Var):
            if t.index < depth:
                return t
            if t.index == depth:
                if depth not in cache:
                    cache[depth] = shift(arg, depth, 0)
                return cache[depth]
            return Var(t.index - 1)
        if isinstance(t, Lam):
            return Lam(go(t.body, depth + 1))
        return App(go(t.fun, depth), go(t.arg, depth))

    return go(body, 0)


# -- single steps --------------------------------------------------------------


def beta_step(t: Term) -> Optional[Term]:
    """Contract the leftmost-outermost beta redex, or return None if beta-normal."""
    if isinstance(t, App):
        if isinstance(t.fun, Lam):
            return instantiate(t.fun.body, t.arg)
        f = beta_step(t.fun)
        if f is not None:
            return App(f, t.arg)
        a = beta_step(t.arg)
        if a is not None:
            return App(t.fun, a)
        return None
    if isinstance(t, Lam):
        b = beta_step(t.body)
        return None if b is None else Lam(b)
    return None


def eta_normal_form(t: Term) -> tuple[Term, int]:
    """Exhaustive eta contraction, bottom-up.  Returns (term, contractions)."""
    count = 0

    def go(u: Term) -> Term:
        nonlocal count
        if isinstance(u, Var):
            return u
        if isinstance(u, App):
            return App(go(u.fun), go(u.arg))
        body = go(u.body)
        if isinstance(body, App) and body.arg == Var(0) and not has_free(body.fun, 0):
            count += 1
            return shift(body.fun, -1, 0)
        return Lam(body)

    return go(t), count


# -- beta normalizers ------------------------------------------------------------


class _Counter:
    __slots__ = ("steps", "limit")

    def __init__(self, limit: int):
        self.steps = 0
        self.limit = limit

    def tick(self):
        self.steps += 1
        if self.steps > self.limit:
            raise FuelExhausted(self.limit)


def _normal_order(t: Term, c: _Counter) -> Term:
    # Head reduction, then arguments left to right: the leftmost-outermost order.
    while True:
        if isinstance(t, Lam):
            return Lam(_normal_order(t.body, c))
        head, args = spine(t)
        if isinstance(head, Lam) and args:
            c.tick()
            t = apps(instantiate(head.body, args[0]), *args[1:])
            continue
        out = head
        for a in args:
            out = App(out, _normal_order(a, c))
        return out


def _innermost(t: Term, c: _Counter) -> Term:
    if isinstance(t, Var):
        return t
    if isinstance(t, Lam):
        return Lam(_innermost(t.body, c))
    a = _innermost(t.arg, c)
    f = _innermost(t.fun, c)
    if isinstance(f, Lam):
        c.tick()
        return _innermost(instantiate(f.body, a), c)
    return App(f, a)


# Normalization by evaluation.  Values are closures or neutral terms; the
# environment is a cons list of thunks (index 0 first).


class _Thunk:
    __slots__ = ("term", "env", "value")

    def __init__(self, term, env, value=None):
        self.term = term
        self.env = env
        self.value = value

    def force(self, c: _Counter):
        if self.value is None:
            self.value = _eval(self.term, self.env, c)
            self.term = self.env = None
        return self.value


class _Closure:
    __slots__ = ("body", "env")

    def __init__(self, body, env):
        self.body = body
        self.env = env


class _Neutral:
    __slots__ = ("level", "args")

    def __init__(self, level: int, args: tuple):
        self.level = level
        self.args = args


def _lookup(env, i: int):
    while i:
        env = env[1]
        i -= 1
    return env[0]


def _apply(f, th: _Thunk, c: _Counter):
    if isinstance(f, _Closure):
        c.tick()
        return _eval(f.body, (th, f.env), c)
    return _Neutral(f.level, f.args + (th,))


def _eval(t: Term, env, c: _Counter):
    if isinstance(t, Var):
        return _lookup(env, t.index).force(c)
    if isinstance(t, Lam):
        return _Closure(t.body, env)
    head, args = spine(t)
    f = _eval(head, env, c)
    for a in args:
        th = _lookup(env, a.index) if isinstance(a, Var) else _Thunk(a, env)
        f = _apply(f, th, c)
    return f


def _readback(v, depth: int, c: _Counter) -> Term:
    if isinstance(v, _Closure):
        fresh = _Thunk(None, None, _Neutral(depth, ()))
        return Lam(_readback(_eval(v.body, (fresh, v.env), c), depth + 1, c))
    out: Term = Var(depth - 1 - v.level)
    for th in v.args:
        out = App(out, _readback(th.force(c), depth, c))
    return out


def _nbe(t: Term, c: _Counter) -> Term:
    # Free variables of an open term become neutrals at negative levels, so
    # that depth - 1 - level recovers their outside index.
    free = free_indices(t)
    env = None
    if free:
        for i in range(max(free), -1, -1):
            env = (_Thunk(None, None, _Neutral(-1 - i, ())), env)
    return _readback(_eval(t, env, c), 0, c)


_BETA = {"normal": _normal_order, "innermost": _innermost, "nbe": _nbe}


def _fuel_limit(fuel: Union[Fuel, int, None]) -> int:
    if fuel is None:
        return DEFAULT_FUEL
    if isinstance(fuel, Fuel):
        return fuel.max_steps
    return Fuel(int(fuel)).max_steps


def normalize(
    t: Term,
    fuel: Union[Fuel, int, None] = None,
    strategy: str = "normal",
    eta: bool = True,
) -> Normalized:
    """Beta-normalize with ``strategy``, then eta-contract to exhaustion."""
    if strategy not in _BETA:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    c = _Counter(_fuel_limit(fuel))
    nf = _BETA[strategy](t, c)
    beta = c.steps
    if not eta:
        return Normalized(nf, beta, 0)
    eta_steps = 0
    while True:
        nf, k = eta_normal_form(nf)
        eta_steps += k
        for _ in range(k):
            c.tick()
        if k == 0 or beta_step(nf) is None:
            break
        # Unreachable after a full beta normalization; kept as a guard.
        nf = _BETA[strategy](nf, c)
    return Normalized(nf, beta, eta_steps)


def beta_normal_form(t: Term, fuel: Union[Fuel, int, None] = None, strategy: str = "normal") -> Term:
    return normalize(t, fuel, strategy, eta=False).term


def betaeta_normal_form(t: Term, fuel: Union[Fuel, int, None] = None, strategy: str = "normal") -> Term:
    return normalize(t, fuel, strategy).term


def betaeta_equal(a: Term, b: Term, fuel: Union[Fuel, int, None] = None, strategy: str = "normal") -> bool:
    return betaeta_normal_form(a, fuel, strategy) == betaeta_normal_form(b, fuel, strategy)


def iterate_beta(t: Term, fuel: Union[Fuel, int, None] = None) -> tuple[Term, int]:
    """Iterate :func:`beta_step` to a beta-normal form.  Slow; used as a cross-check."""
    c = _Counter(_fuel_limit(fuel))
    while True:
        nxt = beta_step(t)
        if nxt is None:
            return t, c.steps
        c.tick()
        t = nxt


def subterms(t: Term) -> Iterable[Term]:
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        if isinstance(u, Lam):
            stack.append(u.body)
        elif isinstance(u, App):
            stack.append(u.arg)
            stack.append(u.fun)
