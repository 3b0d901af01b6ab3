import pytest
from hypothesis import given, strategies as st

from churchforge.encodings import ADD, church
from churchforge.suite import random_typable_terms
from churchforge.terms import (
    App, FuelExhausted, Lam, NegativeIndex, Var, apps, beta_normal_form, beta_step,
    betaeta_equal, betaeta_normal_form, eta_normal_form, free_indices, is_closed, iterate_beta,
    normalize, shift, substitute,
)

from strategies import closed_terms, typable_terms

I = Lam(Var(0))
OMEGA = App(Lam(App(Var(0), Var(0))), Lam(App(Var(0), Var(0))))


def test_negative_index_rejected():
    with pytest.raises(NegativeIndex):
        Var(-1)


def test_terms_are_immutable():
    with pytest.raises(AttributeError):
        Var(0).index = 1


@pytest.mark.parametrize("t, by, expected", [
    (Var(0), 1, Var(1)),
    (Lam(Var(0)), 1, Lam(Var(0))),
    (Lam(Var(1)), 2, Lam(Var(3))),
])
def test_shift_examples(t, by, expected):
    assert shift(t, by, 0) == expected


@pytest.mark.parametrize("t, s, expected", [
    (Var(0), I, I),
    (App(Var(0), Var(1)), I, App(I, Var(1))),
    (Lam(Var(1)), Var(0), Lam(Var(1))),
])
def test_substitute_examples(t, s, expected):
    assert substitute(t, 0, s) == expected


def test_beta_step_examples():
    assert beta_step(App(I, I)) == I
    assert beta_step(church(3)) is None
    # church(2) applied to two free placeholders needs exactly two steps.
    t = apps(church(2), Var(1), Var(0))
    nf, steps = iterate_beta(t)
    assert nf == App(Var(1), App(Var(1), Var(0))) and steps == 2


def test_eta_examples():
    assert betaeta_normal_form(church(1)) == Lam(Var(0))
    assert betaeta_normal_form(church(0)) == church(0)
    assert eta_normal_form(church(1)) == (Lam(Var(0)), 1)


def test_betaeta_equal_examples():
    assert betaeta_equal(church(1), Lam(Var(0)))
    assert not betaeta_equal(church(2), church(3))
    assert betaeta_equal(apps(ADD, church(2), church(3)), church(5))


@pytest.mark.parametrize("strategy", ["normal", "innermost", "nbe"])
def test_fuel_exhaustion_is_an_error(strategy):
    with pytest.raises(FuelExhausted):
        normalize(OMEGA, fuel=50, strategy=strategy)


def test_normal_order_steps_match_iteration():
    for t in random_typable_terms(30, seed=3):
        res = normalize(t, eta=False)
        nf, steps = iterate_beta(t)
        assert res.term == nf and res.beta_steps == steps


def test_normal_order_finds_normal_form_innermost_cannot():
    t = App(Lam(I), OMEGA)  # K I Omega
    assert beta_normal_form(t) == I
    with pytest.raises(FuelExhausted):
        normalize(t, fuel=100, strategy="innermost")


@given(typable_terms)
def test_idempotence(t):
    nf = betaeta_normal_form(t)
    assert betaeta_normal_form(nf) == nf


@given(typable_terms)
def test_strategies_agree(t):
    nf = betaeta_normal_form(t)
    assert betaeta_normal_form(t, strategy="innermost") == nf
    assert betaeta_normal_form(t, strategy="nbe") == nf


@given(typable_terms)
def test_beta_preserves_closedness(t):
    u = t
    for _ in range(20):
        u2 = beta_step(u)
        if u2 is None:
            break
        u = u2
        assert is_closed(u)


@given(closed_terms)
def test_eta_soundness(t):
    # Contraction never captures index 0: the result is closed and eta-normal.
    u, _ = eta_normal_form(t)
    assert is_closed(u)
    assert eta_normal_form(u) == (u, 0)


@given(closed_terms, st.integers(0, 3), st.integers(0, 3))
def test_shift_round_trip(t, by, cutoff):
    assert shift(shift(t, by, cutoff), -by, cutoff) == t


@given(closed_terms)
def test_closed_terms_have_no_free_indices(t):
    assert free_indices(t) == set()
