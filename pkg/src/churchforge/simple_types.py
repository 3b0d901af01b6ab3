"""Simple types over the single base type ``o`` and Curry-style inference."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

from .terms import App, Lam, Term, Var, free_indices


@dataclass(frozen=True, slots=True)
class Base:
    def __str__(self):
        return "o"


@dataclass(frozen=True, slots=True)
class Arrow:
    dom: "SimpleType"
    cod: "SimpleType"

    def __str__(self):
        d = str(self.dom)
        if isinstance(self.dom, Arrow):
            d = f"({d})"
        return f"{d} -> {self.cod}"


@dataclass(frozen=True, slots=True)
class TVar:
    id: int

    def __str__(self):
        return f"'t{self.id}"


SimpleType = Union[Base, Arrow, TVar]
Substitution = dict[int, SimpleType]

O = Base()


class TypeErrorBase(Exception):
    pass


class OccursCheck(TypeErrorBase):
    pass


class Clash(TypeErrorBase):
    pass


class NotTypable(TypeErrorBase):
    pass


def arrows(*ts: SimpleType) -> SimpleType:
    """``arrows(a, b, c)`` is ``a -> b -> c``."""
    out = ts[-1]
    for t in reversed(ts[:-1]):
        out = Arrow(t, out)
    return out


def omega(tau: SimpleType) -> SimpleType:
    """The numeral type (tau -> tau) -> tau -> tau."""
    return Arrow(Arrow(tau, tau), Arrow(tau, tau))


ALPHA = omega(O)


def tau_s(s: int) -> SimpleType:
    """Type of an s-tuple of numerals over o: (alpha^s -> alpha) -> alpha."""
    if s < 1:
        raise ValueError("tuple width must be positive")
    return Arrow(arrows(*([ALPHA] * s), ALPHA), ALPHA)


def function_type(k: int, s: int) -> SimpleType:
    """omega(tau_s(s))^k -> omega(tau_s(s))."""
    w = omega(tau_s(s))
    return arrows(*([w] * (k + 1)))


def tvars(t: SimpleType) -> set[int]:
    if isinstance(t, TVar):
        return {t.id}
    if isinstance(t, Arrow):
        return tvars(t.dom) | tvars(t.cod)
    return set()


def is_ground(t: SimpleType) -> bool:
    return not tvars(t)


def apply_subst(s: Substitution, t: SimpleType) -> SimpleType:
    """Resolve ``t`` under a (possibly triangular) substitution."""
    if isinstance(t, TVar):
        if t.id in s:
            return apply_subst(s, s[t.id])
        return t
    if isinstance(t, Arrow):
        return Arrow(apply_subst(s, t.dom), apply_subst(s, t.cod))
    return t


def _walk(s: Substitution, t: SimpleType) -> SimpleType:
    while isinstance(t, TVar) and t.id in s:
        t = s[t.id]
    return t


def _occurs(s: Substitution, v: int, t: SimpleType) -> bool:
    t = _walk(s, t)
    if isinstance(t, TVar):
        return t.id == v
    if isinstance(t, Arrow):
        return _occurs(s, v, t.dom) or _occurs(s, v, t.cod)
    return False


def _unify_into(s: Substitution, a: SimpleType, b: SimpleType) -> None:
    stack = [(a, b)]
    while stack:
        a, b = stack.pop()
        a, b = _walk(s, a), _walk(s, b)
        if a == b:
            continue
        if isinstance(a, TVar):
            if _occurs(s, a.id, b):
                raise OccursCheck(f"{a} occurs in {apply_subst(s, b)}")
            s[a.id] = b
        elif isinstance(b, TVar):
            stack.append((b, a))
        elif isinstance(a, Arrow) and isinstance(b, Arrow):
            stack.append((a.cod, b.cod))
            stack.append((a.dom, b.dom))
        else:
            raise Clash(f"cannot unify {apply_subst(s, a)} with {apply_subst(s, b)}")


def unify(a: SimpleType, b: SimpleType) -> Substitution:
    """Most general unifier, returned in idempotent (fully resolved) form."""
    s: Substitution = {}
    _unify_into(s, a, b)
    return {v: apply_subst(s, t) for v, t in s.items()}


def canonical(t: SimpleType) -> SimpleType:
    """Rename type variables to 0, 1, ... in left-to-right order of appearance."""
    names: dict[int, int] = {}

    def go(u):
        if isinstance(u, TVar):
            if u.id not in names:
                names[u.id] = len(names)
            return TVar(names[u.id])
        if isinstance(u, Arrow):
            d = go(u.dom)
            return Arrow(d, go(u.cod))
        return u

    return go(t)


class _Inference:
    def __init__(self):
        self.subst: Substitution = {}
        self.fresh = itertools.count()

    def new(self) -> TVar:
        return TVar(next(self.fresh))

    def infer(self, t: Term, ctx: list[SimpleType]) -> SimpleType:
        # ctx[-1] is the type of index 0.
        if isinstance(t, Var):
            return ctx[-1 - t.index]
        if isinstance(t, Lam):
            a = self.new()
            ctx.append(a)
            try:
                body = self.infer(t.body, ctx)
            finally:
                ctx.pop()
            return Arrow(a, body)
        f = self.infer(t.fun, ctx)
        x = self.infer(t.arg, ctx)
        r = self.new()
        try:
            _unify_into(self.subst, f, Arrow(x, r))
        except TypeErrorBase as e:
            raise NotTypable(str(e)) from e
        return r


def infer_principal(t: Term) -> SimpleType:
    """Principal type of a closed term, with variables numbered canonically."""
    if free_indices(t):
        raise ValueError("infer_principal expects a closed term")
    inf = _Inference()
    ty = inf.infer(t, [])
    return canonical(apply_subst(inf.subst, ty))


@dataclass(frozen=True)
class Typed:
    """A term node paired with a ground type; children mirror the term."""

    term: Term
    type: SimpleType
    children: tuple["Typed", ...] = ()


def _ground(t: SimpleType) -> SimpleType:
    if isinstance(t, TVar):
        return O
    if isinstance(t, Arrow):
        return Arrow(_ground(t.dom), _ground(t.cod))
    return t


def annotate(t: Term, target: SimpleType) -> Typed:
    """A typing derivation of the closed ``t`` at ``target``, with every node typed.

    Type variables the target leaves open are instantiated to ``o``.
    """
    inf = _Inference()

    def go(u: Term, ctx: list[SimpleType]):
        if isinstance(u, Var):
            return (u, ctx[-1 - u.index], ())
        if isinstance(u, Lam):
            a = inf.new()
            ctx.append(a)
            body = go(u.body, ctx)
            ctx.pop()
            return (u, Arrow(a, body[1]), (body,))
        f = go(u.fun, ctx)
        x = go(u.arg, ctx)
        r = inf.new()
        _unify_into(inf.subst, f[1], Arrow(x[1], r))
        return (u, r, (f, x))

    try:
        raw = go(t, [])
        _unify_into(inf.subst, raw[1], target)
    except TypeErrorBase as e:
        raise NotTypable(str(e)) from e

    def build(node) -> Typed:
        u, ty, kids = node
        return Typed(u, _ground(apply_subst(inf.subst, ty)), tuple(build(k) for k in kids))

    return build(raw)


def check_type(t: Term, target: SimpleType) -> bool:
    """True iff the ground ``target`` is an instance of the principal type of ``t``."""
    if not is_ground(target):
        raise ValueError("check_type expects a ground target type")
    try:
        ty = infer_principal(t)
        unify(ty, target)
    except TypeErrorBase:
        return False
    return True


def explain_check(t: Term, target: SimpleType) -> str | None:
    """Like :func:`check_type` but returns a diagnostic on failure, None on success."""
    try:
        ty = infer_principal(t)
    except NotTypable as e:
        return f"not typable: {e}"
    try:
        unify(ty, target)
    except TypeErrorBase as e:
        return f"principal type {ty} has no instance {target}: {e}"
    return None
