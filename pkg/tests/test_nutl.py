import pytest

from backdet.automata import Alphabet, is_weak
from backdet.construction import BackwardDetAutomaton
from backdet.errors import FormatError, SemanticError
from backdet.lasso import LassoWord, bda_final_run, waa_accept_table
from backdet.nutl import (
    Fix,
    Letter,
    MU,
    NU,
    Next,
    Or,
    Var,
    check_alternation_free,
    check_guarded,
    dual_nutl,
    format_nutl,
    free_vars,
    is_closed,
    nutl_eval_lasso,
    nutl_to_waa,
    nutl_to_waa_optimized,
    nutl_truth_set,
    parse_nutl,
)

AB = Alphabet(("a", "b"))

UNTIL = "mu_0 (X).(b | (a & O X))"  # a U b
ALWAYS = "nu_0 (X).(a & O X)"       # G a


def test_parse_fix_and_vector():
    phi = parse_nutl("mu_1 (X,Y).(O Y; b | O X)", AB)
    assert isinstance(phi, Fix)
    assert phi.kind == MU and phi.index == 1
    assert phi.vars == ("X", "Y")


def test_parse_resolves_letters_vs_vars():
    phi = parse_nutl("mu_0 (X).(a | O X)", AB)
    body = phi.bodies[0]
    assert body == Or(Letter("a"), Next(Var("X")))


def test_parse_errors():
    with pytest.raises(FormatError):
        parse_nutl("mu_2 (X).(a)", AB)  # index out of range
    with pytest.raises(FormatError):
        parse_nutl("mu_0 (a).(a)", AB)  # variable clashes with letter
    with pytest.raises(FormatError):
        parse_nutl("! (a)", AB)
    with pytest.raises(ValueError):
        Fix(MU, 0, ("X", "X"), (Var("X"), Var("X")))


def test_format_round_trip():
    for text in (UNTIL, ALWAYS, "mu_0 (X,Y).(O Y; b | (a & O X))", "!a | O b"):
        phi = parse_nutl(text, AB)
        assert parse_nutl(format_nutl(phi), AB) == phi


def test_closed_and_free():
    assert is_closed(parse_nutl(UNTIL, AB))
    assert free_vars(parse_nutl("O Z", AB)) == {"Z"}


def test_guardedness():
    assert check_guarded(parse_nutl(UNTIL, AB)) is None
    unguarded = Fix(MU, 0, ("X",), (Or(Letter("b"), Var("X")),))
    cycle = check_guarded(unguarded)
    assert cycle is not None


def test_alternation_freeness():
    assert check_alternation_free(parse_nutl(UNTIL, AB)) is None
    # nu around mu with the mu body reaching back into the nu variable
    mixed = Fix(
        NU, 0, ("Y",),
        (Fix(MU, 0, ("X",), (Or(Next(Var("Y")), Next(Var("X"))),)),),
    )
    assert check_alternation_free(mixed) is not None


def test_translation_rejects_bad_input():
    with pytest.raises(SemanticError):
        nutl_to_waa([parse_nutl("O Z", AB)], AB)
    unguarded = Fix(MU, 0, ("X",), (Or(Letter("b"), Var("X")),))
    with pytest.raises(SemanticError):
        nutl_to_waa([unguarded], AB)


def test_eval_until_and_always():
    until = parse_nutl(UNTIL, AB)
    assert nutl_truth_set(until, LassoWord(("a", "a"), ("b",))) == {0, 1, 2}
    assert nutl_truth_set(until, LassoWord((), ("a",))) == set()
    always = parse_nutl(ALWAYS, AB)
    assert nutl_truth_set(always, LassoWord((), ("a",))) == {0}
    assert nutl_truth_set(always, LassoWord(("a",), ("b",))) == set()


def test_eval_vector_components():
    phi = parse_nutl("mu_0 (X,Y).(b | O Y; a & O X)", AB)
    w = LassoWord((), ("a", "b"))
    truth = nutl_eval_lasso([phi, parse_nutl(ALWAYS, AB)], w)
    assert all(isinstance(s, frozenset) for s in truth)
    assert len(truth) == w.positions


def test_dual_is_complement_and_involution():
    for text in (UNTIL, ALWAYS):
        phi = parse_nutl(text, AB)
        dual = dual_nutl(phi)
        assert dual_nutl(dual) == phi
        for w in (LassoWord((), ("a",)), LassoWord(("b",), ("a", "b"))):
            t = nutl_truth_set(phi, w)
            td = nutl_truth_set(dual, w)
            assert td == frozenset(range(w.positions)) - t


def test_translation_matches_semantics():
    phi = parse_nutl(UNTIL, AB)
    waa, (init,) = nutl_to_waa([phi], AB)
    assert is_weak(waa)
    bda = BackwardDetAutomaton(waa)
    for w in (LassoWord((), ("a",)), LassoWord(("a", "a"), ("b",))):
        truth = nutl_truth_set(phi, w)
        run = bda_final_run(bda, w)
        for i in range(w.positions):
            assert (init in bda.output(run.families[i])) == (i in truth)


def test_optimized_translation_one_state_per_variable():
    phi = parse_nutl("mu_0 (X,Y).(b | O Y; a & O X)", AB)
    waa, inits = nutl_to_waa_optimized([phi], AB)
    assert set(waa.states) == {"X", "Y"}
    assert inits == ["X"]
    w = LassoWord((), ("b", "a"))
    table = waa_accept_table(waa, w)
    truth = nutl_truth_set(phi, w)
    for i in range(w.positions):
        assert table[(i, "X")] == (i in truth)


def test_optimized_translation_inapplicable():
    # next operand is a disjunction, not a variable
    phi = parse_nutl("mu_0 (X).(b | O (a | X))", AB)
    with pytest.raises(SemanticError):
        nutl_to_waa_optimized([phi], AB)


def test_recurring_states_follow_binder_kind():
    phi = parse_nutl(ALWAYS, AB)
    waa, _ = nutl_to_waa_optimized([phi], AB)
    assert waa.recurring == frozenset({"X"})
    waa_mu, _ = nutl_to_waa_optimized([parse_nutl(UNTIL, AB)], AB)
    assert waa_mu.recurring == frozenset()
