"""Tableau prover tests, cross-checked against the model-battery oracle."""

import os

import pytest

from fghlab.formula import (
    BOT, TOP, Box, Neg, box_n, cx, diamond_n, imp, parse_formula,
    enumerate_formulas, sample_formulas, variables,
)
from fghlab.glprover import (
    BUDGET_ENV, BudgetExceeded, Proved, Refuted, gl_proves, gl_proves_brute,
)
from fghlab.kripke import forces, model_forces_at_root, validate_frame

LOB = parse_formula("[]([]p -> p) -> []p")


def _corpus(max_size=5):
    return list(enumerate_formulas(max_size, names=("p", "q"),
                                   max_modal_depth=2))


def _honest(verdict, f):
    m = verdict.countermodel
    assert validate_frame(m) == []
    assert model_forces_at_root(m, f) == 0
    assert model_forces_at_root(m, box_n(cx(f) + 1, BOT)) == 1


def test_lob_axiom_proved():
    v = gl_proves(LOB)
    assert isinstance(v, Proved)
    assert v.trace.expansions >= 1


def test_top_proved():
    assert isinstance(gl_proves(TOP), Proved)


def test_reflection_refuted_with_honest_countermodel():
    f = parse_formula("[]p -> p")
    v = gl_proves(f)
    assert isinstance(v, Refuted)
    _honest(v, f)


def test_diamond_top_refuted_by_dead_end():
    v = gl_proves(diamond_n(1, TOP))
    assert isinstance(v, Refuted)
    assert len(v.countermodel.worlds) == 1
    assert not v.countermodel.rel


def test_four_axiom_and_necessitations_proved():
    four = parse_formula("[]p -> [][]p")
    assert isinstance(gl_proves(four), Proved)
    assert isinstance(gl_proves(Box(four)), Proved)
    assert isinstance(gl_proves(Box(Box(four))), Proved)


def test_consistency_statements_refuted():
    # GL never proves its own consistency at any level
    for n in range(5):
        f = diamond_n(n + 1, TOP)
        v = gl_proves(f)
        assert isinstance(v, Refuted)
        m = v.countermodel
        # refuting <>^(n+1)#t means forcing []^(n+1)#f at the root
        assert forces(m, m.root, box_n(n + 1, BOT)) == 1
        _honest(v, f)


def test_brute_examples():
    assert gl_proves_brute(parse_formula("[]#f -> []#f"), 3) == 1
    assert gl_proves_brute(parse_formula("p"), 1) == 0
    assert gl_proves_brute(LOB, 4) == 1


def test_brute_is_box_free_tautology_check():
    from fghlab.classical import is_tautology
    for f in enumerate_formulas(6, names=("p", "q"), box_free=True):
        assert gl_proves_brute(f, 2) == is_tautology(f), f.key


def test_box_free_agreement_with_classical():
    from fghlab.classical import is_tautology
    for f in enumerate_formulas(6, names=("p", "q"), box_free=True):
        got = 1 if isinstance(gl_proves(f), Proved) else 0
        assert got == is_tautology(f), f.key


def test_exhaustive_agreement_with_brute():
    # Proved must hold on the whole battery; a small refutation must show
    # up there too. Bigger countermodels are outside the battery's reach.
    for f in _corpus():
        v = gl_proves(f)
        b = gl_proves_brute(f, 4)
        if isinstance(v, Proved):
            assert b == 1, f.key
        elif len(v.countermodel.worlds) <= 4:
            assert b == 0, f.key


def test_sampled_agreement_with_brute():
    for f in sample_formulas(300, seed=11, max_size=9, max_modal_depth=2):
        v = gl_proves(f)
        b = gl_proves_brute(f, 4)
        if isinstance(v, Proved):
            assert b == 1, f.key
        elif len(v.countermodel.worlds) <= 4:
            assert b == 0, f.key


def test_countermodel_honesty_on_corpus():
    seen = 0
    for f in _corpus():
        v = gl_proves(f)
        if isinstance(v, Refuted):
            seen += 1
            m = v.countermodel
            assert validate_frame(m) == []
            assert forces(m, m.root, f) == 0
            assert forces(m, m.root, box_n(cx(f) + 1, BOT)) == 1
    assert seen > 100


def test_necessitation_closure():
    proved = [f for f in _corpus(4) if isinstance(gl_proves(f), Proved)]
    assert len(proved) > 30
    for f in proved:
        assert isinstance(gl_proves(Box(f)), Proved), f.key


def test_modus_ponens_closure():
    pool = _corpus(4)
    proved = {f.key: f for f in pool if isinstance(gl_proves(f), Proved)}
    checked = 0
    for f in pool[:120]:
        for g in pool[:40]:
            if f.key in proved and imp(f, g).key not in proved:
                continue
            if f.key in proved and isinstance(gl_proves(imp(f, g)), Proved):
                assert isinstance(gl_proves(g), Proved), (f.key, g.key)
                checked += 1
    assert checked > 0


def test_budget_exceeded_is_distinct_outcome():
    with pytest.raises(BudgetExceeded) as exc:
        gl_proves(LOB, budget=2)
    assert exc.value.budget == 2


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "3")
    with pytest.raises(BudgetExceeded):
        gl_proves(parse_formula("[](p & q) -> ([]p & []q)"))
    monkeypatch.delenv(BUDGET_ENV)
    assert isinstance(gl_proves(parse_formula("[](p & q) -> ([]p & []q)")),
                      Proved)


def test_deterministic_output():
    f = parse_formula("[]p -> q | <>!q")
    a = gl_proves(f)
    b = gl_proves(f)
    assert isinstance(a, type(b))
    if isinstance(a, Refuted):
        assert a.countermodel == b.countermodel
        assert a.countermodel.val == b.countermodel.val


def test_depth_bound_theorem():
    # a refutation never needs depth past the boxed-subformula count
    for f in sample_formulas(150, seed=23, max_size=10, max_modal_depth=3):
        v = gl_proves(f)
        if isinstance(v, Refuted):
            m = v.countermodel
            assert forces(m, m.root, box_n(cx(f) + 1, BOT)) == 1, f.key
