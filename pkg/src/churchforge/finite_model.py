"""Full finite type hierarchies over a base set {0, ..., q-1}.

Elements of ``o`` are ints; an element of ``s -> t`` is a tuple indexed by
the position of the argument in the enumeration of ``s``.  Domains are
enumerated lexicographically, first argument most significant, as
``itertools.product`` does.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .simple_types import Arrow, Base, NotTypable, SimpleType, Typed, annotate, is_ground
from .terms import Lam, Term, Var, free_indices

ModelElement = Union[int, tuple]
DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    """``cardinality`` is exact when it is at most ``cap + 1``, else a lower bound."""

    def __init__(self, cardinality: int, cap: int):
        super().__init__(f"domain of size at least {cardinality} exceeds cap {cap}")
        self.cardinality = cardinality
        self.cap = cap


class IllTyped(TypeError):
    pass


def cardinality(tau: SimpleType, q: int, limit: Optional[int] = None) -> int:
    """``|[[tau]]|``, or ``limit + 1`` as soon as it is known to exceed ``limit``."""
    if isinstance(tau, Base):
        n = q
    elif isinstance(tau, Arrow):
        base = cardinality(tau.cod, q, limit)
        exp = cardinality(tau.dom, q, limit)
        if limit is not None and base >= 2 and exp > limit.bit_length():
            return limit + 1
        n = base**exp
    else:
        raise ValueError("domains exist only for ground types")
    return n if limit is None else min(n, limit + 1)


@dataclass
class FiniteModel:
    q: int
    cap: int = DEFAULT_CAP
    _domains: dict = field(default_factory=dict, repr=False, compare=False)
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("base size must be positive")

    def size(self, tau: SimpleType) -> int:
        """Exact up to ``cap``; anything larger is reported as ``cap + 1``."""
        return cardinality(tau, self.q, self.cap)

    def domain(self, tau: SimpleType) -> list[ModelElement]:
        if tau in self._domains:
            return self._domains[tau]
        if not is_ground(tau):
            raise ValueError("domains exist only for ground types")
        n = self.size(tau)
        if n > self.cap:
            raise CapExceeded(n, self.cap)
        if isinstance(tau, Base):
            dom = list(range(self.q))
        else:
            width = self.size(tau.dom)
            dom = list(itertools.product(self.domain(tau.cod), repeat=width))
        self._domains[tau] = dom
        return dom

    def index(self, tau: SimpleType, v: ModelElement) -> int:
        if isinstance(tau, Base):
            return v
        if tau not in self._index:
            self._index[tau] = {e: i for i, e in enumerate(self.domain(tau))}
        return self._index[tau][v]

    def apply(self, ftype: Arrow, f: tuple, x: ModelElement) -> ModelElement:
        return f[self.index(ftype.dom, x)]


def domain(tau: SimpleType, m: FiniteModel) -> list[ModelElement]:
    return m.domain(tau)


# -- evaluating terms --------------------------------------------------------------------


def _evaluation_cost(node: Typed, m: FiniteModel) -> int:
    """Node visits needed by the tabulating evaluator, saturated above the cap."""
    limit = m.cap + 1
    if isinstance(node.term, Var):
        return 1
    if isinstance(node.term, Lam):
        return min(m.size(node.type.dom) * _evaluation_cost(node.children[0], m), limit)
    return min(1 + sum(_evaluation_cost(c, m) for c in node.children), limit)


def eval_in_model(t: Term, tau: SimpleType, m: FiniteModel) -> ModelElement:
    """Set-theoretic denotation of the closed term ``t`` at the ground type ``tau``.

    Raises CapExceeded when tabulating the term would visit more than
    ``m.cap`` nodes.
    """
    if free_indices(t):
        raise ValueError("eval_in_model expects a closed term")
    if not is_ground(tau):
        raise ValueError("target type must be ground")
    try:
        typed = annotate(t, tau)
    except NotTypable as e:
        raise IllTyped(str(e)) from e

    cost = _evaluation_cost(typed, m)
    if cost > m.cap:
        raise CapExceeded(cost, m.cap)

    def ev(node: Typed, env: tuple) -> ModelElement:
        u = node.term
        if isinstance(u, Var):
            return env[-1 - u.index]
        if isinstance(u, Lam):
            (body,) = node.children
            return tuple(ev(body, env + (v,)) for v in m.domain(node.type.dom))
        fun, arg = node.children
        return m.apply(fun.type, ev(fun, env), ev(arg, env))

    return ev(typed, ())


# -- numeral trajectories ----------------------------------------------------------------


@dataclass(frozen=True)
class Trajectory:
    tau: SimpleType
    preperiod: int
    period: int
    states: int

    def same_class(self, a: int, b: int) -> bool:
        """Whether rho(a) and rho(b) denote the same element at omega(tau)."""
        if a == b:
            return True
        return a >= self.preperiod and b >= self.preperiod and (a - b) % self.period == 0

    def representative(self, n: int) -> int:
        if n < self.preperiod:
            return n
        return self.preperiod + (n - self.preperiod) % self.period


def _endofunctions(tau: SimpleType, m: FiniteModel) -> tuple[int, int]:
    n = m.size(tau)
    count = m.size(Arrow(tau, tau))
    if count > m.cap:
        raise CapExceeded(count, m.cap)
    return n, count


def numeral_states(tau: SimpleType, m: FiniteModel, upto: Optional[int] = None):
    """Yield the state of rho(0), rho(1), ... at omega(tau).

    A state is the family ``(f^n for f in [[tau -> tau]])`` with each ``f^n``
    a tuple of indices into [[tau]].  Stops after ``upto`` states if given.
    """
    n, _ = _endofunctions(tau, m)
    gens = list(itertools.product(range(n), repeat=n))
    state = tuple(tuple(range(n)) for _ in gens)
    k = 0
    while upto is None or k < upto:
        yield state
        state = tuple(tuple(g[v] for v in fn) for g, fn in zip(gens, state))
        k += 1


def numeral_trajectory(tau: SimpleType, m: FiniteModel) -> Trajectory:
    """Smallest l, then smallest t >= 1, with [[rho(l+t)]] = [[rho(l)]] at omega(tau)."""
    seen: dict[tuple, int] = {}
    for k, state in enumerate(numeral_states(tau, m)):
        if state in seen:
            l = seen[state]
            return Trajectory(tau, l, k - l, k)
        seen[state] = k
    raise AssertionError("unreachable: the state space is finite")


def compat_falsify(
    f: Callable[[int], int], tau: SimpleType, m: FiniteModel, n_bound: int
) -> Optional[tuple[int, int]]:
    """Find n < n' <= n_bound with [[rho(n)]] = [[rho(n')]] but [[rho(f n)]] != [[rho(f n')]].

    Such a pair rules out any term of type omega(tau) -> omega(tau) that
    strictly represents f, for this tau only.
    """
    traj = numeral_trajectory(tau, m)
    for n in range(n_bound + 1):
        for n2 in range(n + 1, n_bound + 1):
            if traj.same_class(n, n2) and not traj.same_class(f(n), f(n2)):
                return (n, n2)
    return None


BUILTIN_ORACLES: dict[str, Callable[[int], int]] = {
    "pred": lambda n: max(n - 1, 0),
    "div2": lambda n: n // 2,
    "mod2": lambda n: n % 2,
}
