import pytest
from hypothesis import given, settings, strategies as st

from churchforge.compiler import (
    CompiledFunction, WidthTooSmall, all_inputs, apply_numerals, compile_function, corrupt,
    gadget_truncsub, min_width, run_case, verify,
)
from churchforge.encodings import church, decode_numeral, numeral_value
from churchforge.gexpr import Add, GFunction, IfZero, LeqSelect, ModSelect, Mul, One, Proj, Zero
from churchforge.simple_types import check_type, function_type, infer_principal, unify
from churchforge.terms import App, beta_normal_form, betaeta_normal_form, is_closed

from strategies import gfunctions

x1, x2, x3 = Proj(1), Proj(2), Proj(3)
PARITY = GFunction(1, ModSelect(2, x1, (Zero(), One())))


def test_min_width_examples():
    assert min_width(Add(x1, x2)).s_min == 1
    assert min_width(ModSelect(3, x1, (x1, x1, x1))).s_min == 3
    assert min_width(LeqSelect(4, x1, x1, x1)).s_min == 5
    assert min_width(Add(ModSelect(2, x1, (x1, x1)), LeqSelect(2, x1, x1, x1))).s_min == 3


def test_parity():
    c = compile_function(PARITY, 2)
    assert [decode_numeral(apply_numerals(c.term, [n])) for n in range(11)] == [n % 2 for n in range(11)]


def test_leqsel_examples():
    c = compile_function(GFunction(3, LeqSelect(1, x1, x2, x3)), 2)
    got = [decode_numeral(apply_numerals(c.term, v)) for v in [(0, 4, 7), (1, 4, 7), (2, 4, 7)]]
    assert got == [4, 4, 7]


def test_add_example():
    c = compile_function(GFunction(2, Add(x1, x2)), 1)
    assert decode_numeral(apply_numerals(c.term, [2, 3])) == 5


def test_width_too_small():
    with pytest.raises(WidthTooSmall) as e:
        compile_function(GFunction(3, LeqSelect(1, x1, x2, x3)), 1)
    assert e.value.s_min == 2
    with pytest.raises(WidthTooSmall):
        gadget_truncsub(2, 2)


@pytest.mark.parametrize("l, s, m, want", [(2, 3, 5, 3), (2, 3, 1, 0), (0, 1, 4, 4), (0, 1, 0, 0)])
def test_truncsub_examples(l, s, m, want):
    assert decode_numeral(App(gadget_truncsub(l, s), church(m))) == want


def test_verify_examples():
    r = verify(compile_function(PARITY, 2), PARITY, all_inputs(1, 6))
    assert r.passed and r.n_passed == 7
    add = GFunction(2, Add(x1, x2))
    r = verify(compile_function(add, 3), add, all_inputs(2, 5))
    assert r.passed and r.type_ok and len(r.cases) == 36


@pytest.mark.parametrize("f", [
    PARITY,
    GFunction(3, LeqSelect(1, x1, x2, x3)),
    GFunction(2, Add(x1, x2)),
    GFunction(1, Zero()),
])
def test_corrupted_term_fails(f):
    c = compile_function(f)
    bad = corrupt(c)
    assert bad.term != c.term
    r = verify(bad, f, all_inputs(f.arity, 3))
    assert not r.passed


def test_eta_necessity():
    c = compile_function(PARITY, 2)
    t = apply_numerals(c.term, [3])
    b, be = beta_normal_form(t, strategy="nbe"), betaeta_normal_form(t, strategy="nbe")
    assert b != be and decode_numeral(be) == 1
    assert numeral_value(b) is None


def test_strategies_agree_on_compiled_case():
    f = GFunction(2, IfZero(x1, Mul(x2, x2), LeqSelect(1, x2, One(), x1)))
    c = compile_function(f)
    for strategy in ("normal", "innermost", "nbe"):
        assert run_case(c, f, (2, 3), strategy=strategy).ok


def test_compiled_terms_are_closed_and_shared():
    c = compile_function(GFunction(2, Add(Mul(x1, x2), Mul(x1, x2))))
    assert is_closed(c.term)
    assert isinstance(c, CompiledFunction) and c.claimed_type == function_type(2, 1)


@settings(max_examples=40)
@given(gfunctions(max_arity=2, depth=3), st.data())
def test_width_freedom_and_typability(f, data):
    s0 = min_width(f).s_min
    ns = data.draw(st.lists(st.integers(0, 4), min_size=f.arity, max_size=f.arity))
    outs = []
    for s in (s0, s0 + 2):
        c = compile_function(f, s)
        assert check_type(c.term, c.claimed_type)
        assert unify(infer_principal(c.term), c.claimed_type) is not None
        outs.append(decode_numeral(apply_numerals(c.term, ns)))
    assert outs[0] == outs[1] == f(*ns)
