"""Expressions for the function class G and their arithmetic semantics.

A :class:`GFunction` pairs an expression tree with its arity ``k``; the tree
nodes mirror the closure clauses: constants, projections, addition,
multiplication, ifzero, the mod-selector and the threshold-selector.
``eval_function`` is the oracle every compiled term is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Proj:
    i: int

    def __post_init__(self):
        if self.i < 1:
            raise ValueError("projection indices start at 1")


@dataclass(frozen=True)
class Add:
    left: "GExpr"
    right: "GExpr"


@dataclass(frozen=True)
class Mul:
    left: "GExpr"
    right: "GExpr"


@dataclass(frozen=True)
class IfZero:
    test: "GExpr"
    then: "GExpr"
    orelse: "GExpr"


@dataclass(frozen=True)
class ModSelect:
    """``h_j`` with ``j = (g mod l) + 1``."""

    l: int
    test: "GExpr"
    branches: tuple["GExpr", ...]

    def __post_init__(self):
        if self.l < 2:
            raise ValueError("ModSelect needs l >= 2")
        if len(self.branches) != self.l:
            raise ValueError(f"ModSelect[{self.l}] needs {self.l} branches, got {len(self.branches)}")


@dataclass(frozen=True)
class LeqSelect:
    """``if g <= l then h1 else h2``."""

    l: int
    test: "GExpr"
    then: "GExpr"
    orelse: "GExpr"

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("LeqSelect needs l >= 1")


GExpr = Union[Zero, One, Proj, Add, Mul, IfZero, ModSelect, LeqSelect]


class ArityMismatch(ValueError):
    pass


class DegenerateSet(ValueError):
    pass


def children(e: GExpr) -> tuple[GExpr, ...]:
    if isinstance(e, (Add, Mul)):
        return (e.left, e.right)
    if isinstance(e, (IfZero, LeqSelect)):
        return (e.test, e.then, e.orelse)
    if isinstance(e, ModSelect):
        return (e.test, *e.branches)
    return ()


def nodes(e: GExpr) -> Iterable[GExpr]:
    yield e
    for c in children(e):
        yield from nodes(c)


def depth(e: GExpr) -> int:
    return 1 + max((depth(c) for c in children(e)), default=0)


def max_proj(e: GExpr) -> int:
    return max((n.i for n in nodes(e) if isinstance(n, Proj)), default=0)


@dataclass(frozen=True)
class GFunction:
    arity: int
    body: GExpr

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be nonnegative")
        if max_proj(self.body) > self.arity:
            raise ArityMismatch(f"x{max_proj(self.body)} used in a {self.arity}-ary function")

    @classmethod
    def of(cls, body: GExpr, arity: Optional[int] = None) -> "GFunction":
        return cls(max_proj(body) if arity is None else arity, body)

    def __call__(self, *args: int) -> int:
        return eval_function(self, args)


def eval_expr(e: GExpr, args: Sequence[int]) -> int:
    if isinstance(e, Zero):
        return 0
    if isinstance(e, One):
        return 1
    if isinstance(e, Proj):
        return args[e.i - 1]
    if isinstance(e, Add):
        return eval_expr(e.left, args) + eval_expr(e.right, args)
    if isinstance(e, Mul):
        return eval_expr(e.left, args) * eval_expr(e.right, args)
    if isinstance(e, IfZero):
        return eval_expr(e.then if eval_expr(e.test, args) == 0 else e.orelse, args)
    if isinstance(e, ModSelect):
        return eval_expr(e.branches[eval_expr(e.test, args) % e.l], args)
    if isinstance(e, LeqSelect):
        return eval_expr(e.then if eval_expr(e.test, args) <= e.l else e.orelse, args)
    raise TypeError(f"not a G expression: {e!r}")


def eval_function(f: GFunction, args: Sequence[int]) -> int:
    if len(args) != f.arity:
        raise ArityMismatch(f"expected {f.arity} arguments, got {len(args)}")
    if any(a < 0 for a in args):
        raise ValueError("arguments must be naturals")
    return eval_expr(f.body, args)


def substitute_projections(e: GExpr, replacement: Sequence[GExpr]) -> GExpr:
    """Replace ``Proj(i)`` by ``replacement[i-1]``: composition ``e(g1, ..., gm)``."""
    if isinstance(e, Proj):
        return replacement[e.i - 1]
    if isinstance(e, (Zero, One)):
        return e
    if isinstance(e, Add):
        return Add(substitute_projections(e.left, replacement), substitute_projections(e.right, replacement))
    if isinstance(e, Mul):
        return Mul(substitute_projections(e.left, replacement), substitute_projections(e.right, replacement))
    if isinstance(e, IfZero):
        return IfZero(*(substitute_projections(c, replacement) for c in children(e)))
    if isinstance(e, LeqSelect):
        return LeqSelect(e.l, *(substitute_projections(c, replacement) for c in children(e)))
    if isinstance(e, ModSelect):
        return ModSelect(
            e.l,
            substitute_projections(e.test, replacement),
            tuple(substitute_projections(b, replacement) for b in e.branches),
        )
    raise TypeError(f"not a G expression: {e!r}")


def compose(f: GFunction, gs: Sequence[GFunction]) -> GFunction:
    """``n -> f(g1(n), ..., gm(n))``; all ``gs`` share one arity."""
    if len(gs) != f.arity:
        raise ArityMismatch(f"{f.arity}-ary function composed with {len(gs)} functions")
    arities = {g.arity for g in gs}
    if len(arities) > 1:
        raise ArityMismatch("inner functions must share an arity")
    k = arities.pop() if arities else 0
    return GFunction(k, substitute_projections(f.body, [g.body for g in gs]))


# -- eventually periodic selectors -----------------------------------------------


@dataclass(frozen=True)
class EPSet:
    """An eventually periodic subset of the naturals.

    ``n`` is a member iff ``n < preperiod and n in finite_part`` or
    ``n >= preperiod and n % period in residues``.
    """

    preperiod: int
    period: int
    finite_part: frozenset[int] = field(default_factory=frozenset)
    residues: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "finite_part", frozenset(self.finite_part))
        object.__setattr__(self, "residues", frozenset(self.residues))
        if self.period <= 0:
            raise DegenerateSet("period must be positive")
        if self.preperiod < 0:
            raise ValueError("preperiod must be nonnegative")
        if any(not 0 <= n < self.preperiod for n in self.finite_part):
            raise ValueError("finite part must lie below the preperiod")
        if any(not 0 <= r < self.period for r in self.residues):
            raise ValueError("residues must lie in [0, period)")

    def __contains__(self, n: int) -> bool:
        if n < self.preperiod:
            return n in self.finite_part
        return n % self.period in self.residues


def _at_most(c: int, test: GExpr, then: GExpr, orelse: GExpr) -> GExpr:
    if then == orelse:
        return then
    if c == 0:
        return IfZero(test, then, orelse)
    return LeqSelect(c, test, then, orelse)


def if_in_epset(A: EPSet, then: GExpr, orelse: GExpr, selector: GExpr) -> GExpr:
    """An expression equal to ``then`` when the selector's value is in ``A``, else ``orelse``.

    Residues are dispatched with one ModSelect over the period; values below
    the preperiod are peeled off with a chain of thresholds
    ``if m <= j-1 then (...) else value(j)``.
    """
    if A.period == 1:
        periodic = then if 0 in A.residues else orelse
    else:
        periodic = ModSelect(
            A.period,
            selector,
            tuple(then if r in A.residues else orelse for r in range(A.period)),
        )
    if A.preperiod == 0:
        return periodic

    def value(j):
        return then if j in A.finite_part else orelse

    below = value(0)
    for j in range(1, A.preperiod):
        below = _at_most(j - 1, selector, below, value(j))
    return _at_most(A.preperiod - 1, selector, below, periodic)


# -- eventual monotonicity ---------------------------------------------------------


def eventually_monotone_violation(
    f: Callable[[int], int], m_bound: int, n_bound: int
) -> Optional[dict[int, tuple[int, int]]]:
    """Look for ``n1 > n2 >= m`` with ``f(n1) < f(n2)``, for every ``m <= m_bound``.

    Returns ``{m: (n1, n2)}`` when every threshold m has a witness within
    ``n_bound`` (so no m up to ``m_bound`` makes f non-decreasing from m on);
    otherwise None.
    """
    if m_bound < 0 or n_bound <= 0:
        raise ValueError("bounds must be positive")
    values = [f(n) for n in range(n_bound + 1)]
    witnesses = {}
    for m in range(m_bound + 1):
        found = None
        for n2 in range(m, n_bound + 1):
            for n1 in range(n2 + 1, n_bound + 1):
                if values[n1] < values[n2]:
                    found = (n1, n2)
                    break
            if found:
                break
        if found is None:
            return None
        witnesses[m] = found
    return witnesses
