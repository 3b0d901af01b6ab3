"""Seeded generators for test corpora: G functions, typable terms, eventually periodic sets."""

from __future__ import annotations

import random

from . import gexpr as G
from .encodings import ADD, IFZERO, MUL, SUCC, church
from .simple_types import NotTypable, infer_principal
from .terms import App, Lam, Term, Var, size


def random_gexpr(rng: random.Random, arity: int, depth: int, max_l: int = 3) -> G.GExpr:
    """A random expression of depth at most ``depth`` (a leaf has depth 1)."""
    leaves = [G.Zero(), G.One()] + [G.Proj(i) for i in range(1, arity + 1)]
    if depth <= 1 or rng.random() < 0.2:
        return rng.choice(leaves)

    def sub():
        return random_gexpr(rng, arity, depth - 1, max_l)

    kind = rng.choice(["add", "mul", "ifz", "modsel", "leqsel"])
    if kind == "add":
        return G.Add(sub(), sub())
    if kind == "mul":
        return G.Mul(sub(), sub())
    if kind == "ifz":
        return G.IfZero(sub(), sub(), sub())
    if kind == "modsel" and max_l >= 2:
        l = rng.randint(2, max_l)
        return G.ModSelect(l, sub(), tuple(sub() for _ in range(l)))
    return G.LeqSelect(rng.randint(1, max_l), sub(), sub(), sub())


def generated_suite(n: int = 200, seed: int = 0, max_depth: int = 3, max_arity: int = 3, max_l: int = 3) -> list[G.GFunction]:
    """``n`` distinct functions; every constructor occurs at the root of some member."""
    rng = random.Random(seed)
    seen: set[G.GFunction] = set()
    out: list[G.GFunction] = []

    # Make sure each node kind appears as a root at least once per arity.
    for k in range(1, max_arity + 1):
        x = [G.Proj(i) for i in range(1, k + 1)]
        a, b = x[0], x[-1]
        for e in (
            G.Add(a, b), G.Mul(a, b), G.IfZero(a, b, G.One()),
            G.ModSelect(2, a, (b, G.Zero())), G.LeqSelect(max_l, a, b, G.One()),
        ):
            f = G.GFunction(k, e)
            if f not in seen:
                seen.add(f)
                out.append(f)
    while len(out) < n:
        k = rng.randint(1, max_arity)
        f = G.GFunction(k, random_gexpr(rng, k, max_depth, max_l))
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out[:n]


ASSORTED_EPSETS: list[G.EPSet] = [
    G.EPSet(0, 1),                                  # empty
    G.EPSet(0, 1, residues={0}),                    # everything
    G.EPSet(3, 1, finite_part={2}),                 # {2}
    G.EPSet(0, 2, residues={0}),                    # even numbers
    G.EPSet(0, 2, residues={1}),                    # odd numbers
    G.EPSet(4, 3, residues={1}),                    # n >= 4, n = 1 mod 3
    G.EPSet(1, 1, finite_part={0}),                 # {0}
    G.EPSet(5, 1, finite_part={0, 2, 3}),           # {0, 2, 3}
    G.EPSet(2, 3, finite_part={1}, residues={0, 2}),
    G.EPSet(3, 4, finite_part={0}, residues={3}),
]


def random_term(rng: random.Random, n: int, ctx: int = 0) -> Term:
    """A random term of roughly ``n`` nodes, closed under ``ctx`` binders, biased toward redexes."""
    size = n
    if size <= 1:
        if ctx == 0:
            return Lam(Var(0))
        return Var(rng.randrange(ctx))
    r = rng.random()
    if r < 0.35 or ctx == 0:
        return Lam(random_term(rng, size - 1, ctx + 1))
    if r < 0.55:
        left = rng.randint(1, size - 2) if size > 2 else 1
        return App(Lam(random_term(rng, left, ctx + 1)), random_term(rng, max(size - 1 - left, 1), ctx))
    left = rng.randint(1, size - 2) if size > 2 else 1
    return App(random_term(rng, left, ctx), random_term(rng, max(size - 1 - left, 1), ctx))


def _arith_term(rng: random.Random) -> Term:
    n = church(rng.randint(0, 2))
    m = church(rng.randint(0, 2))
    op = rng.choice([ADD, MUL, IFZERO, SUCC])
    if op is SUCC:
        return App(SUCC, n)
    if op is IFZERO:
        return App(App(App(IFZERO, n), m), church(rng.randint(0, 2)))
    return App(App(op, n), m)


def random_typable_terms(count: int, seed: int = 0, max_size: int = 30) -> list[Term]:
    """Closed, simply typable terms of at most ``max_size`` nodes, about a third
    of them arithmetic on numerals so that reductions are substantial."""
    rng = random.Random(seed)
    out: list[Term] = []
    while len(out) < count:
        if rng.random() < 0.3:
            t = _arith_term(rng)
        else:
            t = random_term(rng, rng.randint(3, max_size))
        if size(t) > max_size:
            continue
        if _typable(t):
            out.append(t)
    return out


def _typable(t: Term) -> bool:
    try:
        infer_principal(t)
    except NotTypable:
        return False
    return True
