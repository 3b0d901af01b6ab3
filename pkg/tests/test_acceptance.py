"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed in the terminal
summary (see conftest.py) and also when this file is run as a script.
"""

from __future__ import annotations

import itertools
import sys

import pytest

from churchforge import gexpr as G
from churchforge.compiler import (
    all_inputs, apply_numerals, compile_function, gadget_truncsub, min_width, verify,
)
from churchforge.encodings import church, decode_numeral, mod_term, numeral_value
from churchforge.finite_model import BUILTIN_ORACLES, FiniteModel, compat_falsify, numeral_trajectory
from churchforge.simple_types import ALPHA, O, Arrow, TVar, apply_subst, arrows, check_type, infer_principal, omega, unify
from churchforge.suite import ASSORTED_EPSETS, generated_suite, random_typable_terms
from churchforge.syntax import format_gexpr, format_term, parse_gexpr, parse_term
from churchforge.terms import App, beta_normal_form, betaeta_normal_form, normalize

# Pinned tolerances.
SUITE_SIZE = 200
SUITE_MAX_DEPTH = 3
SUITE_MAX_ARITY = 3
SUITE_MAX_L = 3
SUITE_MAX_INPUT = 5
MOD_LS = (2, 3)
MOD_MAX_N = 10
MONO_M_BOUND = 20
MONO_N_BOUND = 30
TRUNCSUB_MAX_L = 3
TRUNCSUB_MAX_M = 10
EPSET_COUNT = 10
EPSET_MAX_SELECTOR = 20
TRAJECTORIES = {1: (0, 1), 2: (1, 2)}
TRAJECTORY_Q3_PERIOD = 6
COMPAT_Q = 2
COMPAT_WITNESS_BOUND = 10
COMPAT_MOD2_BOUND = 50
CONFLUENCE_TERMS = 100

RESULTS: dict[str, str] = {}


def record(n: int, ok: bool, detail: str, case: str = "") -> None:
    key = f"{n:02d}{case}"
    RESULTS[key] = f"[{'PASS' if ok else 'FAIL'}] criterion {n}{case}: {detail}"
    print(RESULTS[key])
    assert ok, detail


# -- 1 --------------------------------------------------------------------------------


def test_criterion_1_generated_suite():
    suite = generated_suite(SUITE_SIZE, seed=0, max_depth=SUITE_MAX_DEPTH, max_arity=SUITE_MAX_ARITY, max_l=SUITE_MAX_L)
    assert len(suite) >= SUITE_SIZE
    assert all(G.depth(f.body) <= SUITE_MAX_DEPTH and f.arity <= SUITE_MAX_ARITY for f in suite)
    failures = []
    runs = 0
    for f in suite:
        s0 = min_width(f).s_min
        for s in (s0, s0 + 1):
            c = compile_function(f, s)
            r = verify(c, f, all_inputs(f.arity, SUITE_MAX_INPUT))
            runs += 1
            if not (r.passed and check_type(c.term, c.claimed_type)):
                failures.append((format_gexpr(f.body), s))
    record(1, not failures and runs == 2 * len(suite),
           f"{len(suite)} functions x 2 widths, {runs - len(failures)}/{runs} verified and typed"
           + (f"; first failure {failures[0]}" if failures else ""))


# -- 2 --------------------------------------------------------------------------------


@pytest.mark.parametrize("l", MOD_LS)
def test_criterion_2_mod_term(l):
    E = mod_term(l)
    values = [decode_numeral(App(E, church(n))) for n in range(MOD_MAX_N + 1)]
    values_ok = values == [n % l for n in range(MOD_MAX_N + 1)]

    tau = arrows(*([ALPHA] * l), ALPHA)
    principal = infer_principal(E)
    fresh = TVar(10**6)
    sub = unify(principal, Arrow(omega(tau), fresh))
    arg_type = apply_subst(sub, principal).dom
    typed_ok = arg_type == omega(tau) and check_type(E, Arrow(omega(tau), omega(tau)))
    record(2, values_ok and typed_ok, f"l={l}: residues n<={MOD_MAX_N} {'ok' if values_ok else values}, "
           f"argument type omega(alpha^{l} -> alpha) {'ok' if typed_ok else 'rejected'}", case=f" (l={l})")


# -- 3 --------------------------------------------------------------------------------


def test_criterion_3_eta_necessity():
    f = G.GFunction(1, parse_gexpr("modsel[2](x1; 0, 1)"))
    c = compile_function(f)
    found = None
    for n in range(6):
        t = apply_numerals(c.term, [n])
        b = beta_normal_form(t, strategy="nbe")
        be = betaeta_normal_form(t, strategy="nbe")
        if b != be and numeral_value(b) is None and numeral_value(be) == n % 2:
            found = n
            break
    record(3, found is not None, f"modsel[2](x1; 0, 1) at n={found}: beta normal form is not a numeral, beta-eta normal form is")


# -- 4 --------------------------------------------------------------------------------


def test_criterion_4_mod2_not_eventually_monotone():
    w = G.eventually_monotone_violation(lambda n: n % 2, MONO_M_BOUND, MONO_N_BOUND)
    ok = w is not None and set(w) == set(range(MONO_M_BOUND + 1)) and all(
        m <= n2 < n1 <= MONO_N_BOUND and n1 % 2 < n2 % 2 for m, (n1, n2) in w.items()
    )
    record(4, ok, f"n mod 2 has a descent above every m<={MONO_M_BOUND} within n<={MONO_N_BOUND}")


# -- 5 --------------------------------------------------------------------------------


def test_criterion_5_truncsub_gadget():
    bad = []
    for l in range(TRUNCSUB_MAX_L + 1):
        for s in (l + 1, l + 2):
            g = gadget_truncsub(l, s)
            for m in range(TRUNCSUB_MAX_M + 1):
                if decode_numeral(App(g, church(m))) != max(m - l, 0):
                    bad.append((l, s, m))
    record(5, not bad, f"max(m-l,0) for l<={TRUNCSUB_MAX_L}, s in {{l+1,l+2}}, m<={TRUNCSUB_MAX_M}"
           + (f"; failures {bad[:3]}" if bad else ""))


# -- 6 --------------------------------------------------------------------------------


def test_criterion_6_epsets():
    assert len(ASSORTED_EPSETS) == EPSET_COUNT
    then, orelse = G.Add(G.Proj(1), G.One()), G.Zero()
    bad = []
    for A in ASSORTED_EPSETS:
        f = G.GFunction(1, G.if_in_epset(A, then, orelse, G.Proj(1)))
        expected_ok = all(G.eval_function(f, [n]) == (n + 1 if n in A else 0) for n in range(EPSET_MAX_SELECTOR + 1))
        r = verify(compile_function(f), f, all_inputs(1, EPSET_MAX_SELECTOR))
        if not (expected_ok and r.passed):
            bad.append(A)
    record(6, not bad, f"{EPSET_COUNT} eventually periodic sets, selector<={EPSET_MAX_SELECTOR}"
           + (f"; failures {bad}" if bad else ""))


# -- 7 --------------------------------------------------------------------------------


def brute_force_trajectory(q: int) -> tuple[int, int]:
    """Independent oracle: iterate every f: q -> q by explicit composition."""
    fs = list(itertools.product(range(q), repeat=q))

    def power(f, n):
        out = list(range(q))
        for _ in range(n):
            out = [f[v] for v in out]
        return tuple(out)

    history = []
    n = 0
    while True:
        state = tuple(power(f, n) for f in fs)
        for l, old in enumerate(history):
            if old == state:
                return l, n - l
        history.append(state)
        n += 1


def test_criterion_7_trajectories():
    results = {}
    for q in (1, 2, 3):
        t = numeral_trajectory(O, FiniteModel(q))
        results[q] = ((t.preperiod, t.period), brute_force_trajectory(q))
    ok = (
        all(results[q][0] == results[q][1] for q in results)
        and all(results[q][0] == TRAJECTORIES[q] for q in TRAJECTORIES)
        and results[3][0][1] == TRAJECTORY_Q3_PERIOD
    )
    record(7, ok, "trajectories at o: " + ", ".join(f"q={q} -> {results[q][0]} (brute force {results[q][1]})" for q in results))


# -- 8 --------------------------------------------------------------------------------


def test_criterion_8_compat():
    m = FiniteModel(COMPAT_Q)
    w_pred = compat_falsify(BUILTIN_ORACLES["pred"], O, m, COMPAT_WITNESS_BOUND)
    w_div2 = compat_falsify(BUILTIN_ORACLES["div2"], O, m, COMPAT_WITNESS_BOUND)
    w_mod2 = compat_falsify(BUILTIN_ORACLES["mod2"], O, m, COMPAT_MOD2_BOUND)
    ok = w_pred is not None and w_div2 is not None and w_mod2 is None
    record(8, ok, f"q={COMPAT_Q}: pred {w_pred}, div2 {w_div2}, mod2 {w_mod2} (n<={COMPAT_MOD2_BOUND})")


# -- 9 --------------------------------------------------------------------------------


def test_criterion_9_normal_forms_and_round_trip():
    terms = random_typable_terms(CONFLUENCE_TERMS, seed=1)
    idempotent = confluent = 0
    for t in terms:
        nf = normalize(t).term
        if normalize(nf).term == nf and normalize(nf).steps == 0:
            idempotent += 1
        if normalize(t, strategy="innermost").term == nf and normalize(t, strategy="nbe").term == nf:
            confluent += 1

    corpus = []
    for f in generated_suite(SUITE_SIZE):
        s0 = min_width(f).s_min
        corpus += [compile_function(f, s).term for s in (s0, s0 + 1)]
    round_trip = sum(parse_term(format_term(t)) == t for t in corpus)
    g_round_trip = sum(parse_gexpr(format_gexpr(f.body)) == f.body for f in generated_suite(SUITE_SIZE))

    ok = idempotent == confluent == len(terms) and round_trip == len(corpus) and g_round_trip == SUITE_SIZE
    record(9, ok, f"idempotent {idempotent}/{len(terms)}, strategies agree {confluent}/{len(terms)}, "
           f"term round-trip {round_trip}/{len(corpus)}, G round-trip {g_round_trip}/{SUITE_SIZE}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
