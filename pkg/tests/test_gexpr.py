import pytest
from hypothesis import given, strategies as st

from churchforge import gexpr as G
from churchforge.gexpr import (
    Add, ArityMismatch, DegenerateSet, EPSet, GFunction, IfZero, LeqSelect, ModSelect, Mul, One, Proj, Zero,
    compose, depth, eval_function, eventually_monotone_violation, if_in_epset,
)
from churchforge.suite import ASSORTED_EPSETS

from strategies import epsets, gexprs, gfunctions

x1, x2, x3 = Proj(1), Proj(2), Proj(3)


def test_eval_examples():
    assert eval_function(GFunction(3, ModSelect(2, x1, (x2, x3))), [5, 7, 9]) == 9
    assert eval_function(GFunction(3, LeqSelect(3, x1, x2, x3)), [2, 11, 13]) == 11
    assert eval_function(GFunction(0, Add(One(), One())), []) == 2
    assert GFunction(2, Mul(x1, x2))(3, 4) == 12
    assert GFunction(3, IfZero(x1, x2, x3))(0, 4, 7) == 4


def test_validation():
    with pytest.raises(ArityMismatch):
        GFunction(1, x2)
    with pytest.raises(ArityMismatch):
        eval_function(GFunction(1, x1), [1, 2])
    with pytest.raises(ValueError):
        eval_function(GFunction(1, x1), [-1])
    with pytest.raises(ValueError):
        ModSelect(2, x1, (x1,))
    with pytest.raises(ValueError):
        Proj(0)
    with pytest.raises(DegenerateSet):
        EPSet(0, 0)
    assert GFunction.of(Add(x1, x3)).arity == 3


def test_epset_examples():
    exactly_two = EPSet(3, 1, finite_part={2})
    f = GFunction(3, if_in_epset(exactly_two, x2, x3, x1))
    assert f(2, 10, 20) == 10 and f(5, 10, 20) == 20
    evens = EPSet(0, 2, residues={0})
    f = GFunction(3, if_in_epset(evens, x2, x3, x1))
    assert f(4, 10, 20) == 10 and f(7, 10, 20) == 20
    f = GFunction(3, if_in_epset(EPSet(0, 1), x2, x3, x1))
    assert all(f(m, 10, 20) == 20 for m in range(21))


@pytest.mark.parametrize("A", ASSORTED_EPSETS)
def test_if_in_epset_equivalence(A):
    # Exhaustive over entries <= 20 for the selector; branch values vary too.
    f = GFunction(3, if_in_epset(A, x2, x3, x1))
    for m in range(21):
        for a, b in ((3, 8), (0, 0), (20, 1)):
            assert f(m, a, b) == (a if m in A else b)


@given(epsets, st.integers(0, 40))
def test_if_in_epset_random(A, m):
    f = GFunction(3, if_in_epset(A, x2, x3, x1))
    assert f(m, 1, 2) == (1 if m in A else 2)


def test_monotone_examples():
    w = eventually_monotone_violation(lambda n: n % 2, 20, 30)
    assert w is not None and len(w) == 21
    assert eventually_monotone_violation(lambda n: n * n, 20, 30) is None
    assert eventually_monotone_violation(lambda n: 5 if n == 0 else 1, 20, 30) is None
    with pytest.raises(ValueError):
        eventually_monotone_violation(lambda n: n, 5, 0)


@given(gfunctions(max_arity=2, depth=2), st.data())
def test_composition_closure(f, data):
    k = data.draw(st.integers(1, 3))
    gs = [GFunction(k, data.draw(gexprs(k, depth=2))) for _ in range(f.arity)]
    h = compose(f, gs)
    ns = data.draw(st.lists(st.integers(0, 8), min_size=k, max_size=k))
    assert eval_function(h, ns) == eval_function(f, [eval_function(g, ns) for g in gs])
    assert depth(h.body) <= depth(f.body) + 2


@given(st.integers(2, 4), st.data())
def test_modselect_periodicity(l, data):
    g = data.draw(gexprs(2, depth=2))
    hs = tuple(data.draw(gexprs(2, depth=2)) for _ in range(l))
    c = data.draw(st.integers(0, 3))
    shifted = g
    for _ in range(c):
        shifted = Add(shifted, _const(l))
    ns = data.draw(st.lists(st.integers(0, 8), min_size=2, max_size=2))
    assert eval_function(GFunction(2, ModSelect(l, g, hs)), ns) == eval_function(GFunction(2, ModSelect(l, shifted, hs)), ns)


def _const(n):
    e = Zero()
    for _ in range(n):
        e = Add(e, One())
    return e
