"""Church numerals, tuples, projections and the arithmetic combinators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .terms import App, Fuel, Lam, Term, Var, apps, betaeta_normal_form, lams, shift


def church(n: int) -> Term:
    """``\\f x. f (f ... (f x))`` with ``n`` applications."""
    if n < 0:
        raise ValueError("Church numerals encode naturals")
    body: Term = Var(0)
    for _ in range(n):
        body = App(Var(1), body)
    return Lam(Lam(body))


@dataclass(frozen=True)
class Numeral:
    value: int

    @property
    def term(self) -> Term:
        return church(self.value)


def numeral_value(t: Term) -> Optional[int]:
    """Read a numeral off a beta-eta normal form; no reduction is done here.

    Accepts ``\\f x. f^n x`` for n != 1 and ``\\f. f`` (the eta-contracted 1).
    """
    if t == Lam(Var(0)):
        return 1
    if not (isinstance(t, Lam) and isinstance(t.body, Lam)):
        return None
    body = t.body.body
    n = 0
    while isinstance(body, App) and body.fun == Var(1):
        n += 1
        body = body.arg
    if body != Var(0) or n == 1:
        return None
    return n


def decode_numeral(t: Term, fuel: Fuel | int | None = None, strategy: str = "nbe") -> Optional[int]:
    """Beta-eta normalize ``t`` and decode it as a Church numeral, or None."""
    return numeral_value(betaeta_normal_form(t, fuel, strategy))


# -- tuples ----------------------------------------------------------------------


@dataclass(frozen=True)
class TupleSpec:
    elements: tuple[Term, ...]

    def __post_init__(self):
        if not self.elements:
            raise ValueError("tuples have positive width")

    @property
    def width(self) -> int:
        return len(self.elements)


def tuple_term(elements: Sequence[Term] | TupleSpec) -> Term:
    """``\\p. p M1 ... Ms``; the elements are shifted under the new binder."""
    if isinstance(elements, TupleSpec):
        elements = elements.elements
    if not elements:
        raise ValueError("tuples have positive width")
    return Lam(apps(Var(0), *(shift(m, 1, 0) for m in elements)))


def selector(i: int, s: int) -> Term:
    """``\\x1 ... xs. xi``."""
    if not 1 <= i <= s:
        raise IndexError(f"projection {i} out of range for width {s}")
    return lams(s, Var(s - i))


def proj(i: int, s: int, p: Term) -> Term:
    """``p (\\x1 ... xs. xi)``, the i-th component of an s-tuple."""
    return App(p, selector(i, s))


# -- combinators -------------------------------------------------------------------

# \n. \f x. f (n f x)
SUCC = Lam(Lam(Lam(App(Var(1), apps(Var(2), Var(1), Var(0))))))
# \n m. \f x. n f (m f x)
ADD = lams(4, apps(Var(3), Var(1), apps(Var(2), Var(1), Var(0))))
# \n m. \f x. n (m f) x
MUL = lams(4, apps(Var(3), App(Var(2), Var(1)), Var(0)))
# \n m p. \f x. n (\y. p f x) (m f x)
IFZERO = lams(
    5,
    apps(Var(4), Lam(apps(Var(3), Var(2), Var(1))), apps(Var(3), Var(1), Var(0))),
)


def combinators() -> dict[str, Term]:
    return {"succ": SUCC, "add": ADD, "mul": MUL, "ifzero": IFZERO}


def mod_term(l: int) -> Term:
    """The remainder-modulo-l term over numerals of type omega(alpha^l -> alpha).

    ``\\n. \\f x. \\a1 ... al. (n ROT SEL1) (x a) (f x a) ... (f^(l-1) x a)``
    where ``ROT = \\y z1 ... zl. y z2 ... zl z1`` and ``SEL1 = \\z1 ... zl. z1``.
    """
    if l < 1:
        raise ValueError("modulus must be positive")
    rot = Lam(lams(l, apps(Var(l), *(Var(l - 1 - i) for i in range(1, l)), Var(l - 1))))
    sel1 = selector(1, l)
    # Under \n \f \x \a1..al: n = l+2, f = l+1, x = l, a_i = l - i.
    n, f, x = Var(l + 2), Var(l + 1), Var(l)
    a = [Var(l - i) for i in range(1, l + 1)]
    branches = []
    for j in range(l):
        fx: Term = x
        for _ in range(j):
            fx = App(f, fx)
        branches.append(apps(fx, *a))
    body = apps(apps(n, rot, sel1), *branches)
    return Lam(Lam(Lam(lams(l, body))))
