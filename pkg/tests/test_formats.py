import pytest

from backdet.automata import Alphabet, And, LetterSet, NextState, Or
from backdet.construction import BackwardDetAutomaton
from backdet.errors import FormatError
from backdet.formats import (
    format_bda,
    format_condition,
    format_nba,
    format_waa,
    parse_condition,
    parse_lasso,
    parse_nba,
    parse_waa,
)
from backdet.nba import NBA

AB = Alphabet(("a", "b"))

WAA_TEXT = """\
# eventually a
alphabet: a b
states: q0 q1
recurring: q1
initial: q0
delta q0 = [a] | (X q1 & X q0)
delta q1 = [a b]
"""


def test_parse_waa_basics():
    waa = parse_waa(WAA_TEXT)
    assert waa.states == ("q0", "q1")
    assert waa.recurring == frozenset({"q1"})
    assert waa.initial == frozenset({"q0"})
    assert waa.delta["q0"] == Or(
        LetterSet({"a"}), And(NextState("q1"), NextState("q0"))
    )


def test_waa_round_trip():
    waa = parse_waa(WAA_TEXT)
    again = parse_waa(format_waa(waa))
    assert again == waa


def test_parse_waa_missing_sections():
    with pytest.raises(FormatError):
        parse_waa("states: q\nrecurring:\ndelta q = [a]\n")
    with pytest.raises(FormatError):
        parse_waa("alphabet: a\nrecurring:\ndelta q = [a]\n")
    with pytest.raises(FormatError):
        parse_waa("alphabet: a\nstates: q\ndelta q = [a]\n")


def test_parse_waa_duplicate_delta():
    text = "alphabet: a\nstates: q\nrecurring:\ndelta q = [a]\ndelta q = [a]\n"
    with pytest.raises(FormatError):
        parse_waa(text)


def test_condition_parse_precedence():
    c = parse_condition("[a] | X q & X p", AB, {"p", "q"})
    assert isinstance(c, Or)
    assert isinstance(c.right, And)
    assert parse_condition("([a] | X q) & X p", AB, {"p", "q"}) != c


def test_condition_empty_letter_set():
    c = parse_condition("[]", AB, set())
    assert c == LetterSet(frozenset())
    assert format_condition(c) == "[]"


def test_condition_errors():
    with pytest.raises(FormatError):
        parse_condition("[z]", AB, set())
    with pytest.raises(FormatError):
        parse_condition("X nope", AB, {"q"})
    with pytest.raises(FormatError):
        parse_condition("[a] [b]", AB, set())


def test_condition_format_round_trip():
    texts = ["[a]", "X q | X p & [b]", "([a] | X q) & ([] | X p)"]
    for text in texts:
        c = parse_condition(text, AB, {"p", "q"})
        assert parse_condition(format_condition(c), AB, {"p", "q"}) == c


NBA_TEXT = """\
alphabet: a b
states: q0 q1
initial: q0
buchi: q1
trans q0 a q0
trans q0 a q1
trans q1 b q1
"""


def test_nba_round_trip():
    nba = parse_nba(NBA_TEXT)
    assert nba.initial == frozenset({"q0"})
    assert nba.buchi == frozenset({"q1"})
    assert ("q0", "a", "q1") in nba.transitions
    again = parse_nba(format_nba(nba))
    assert again == nba


def test_nba_parse_errors():
    with pytest.raises(FormatError):
        parse_nba("alphabet: a\nstates: q\ninitial: q\ntrans q a\n")
    with pytest.raises(FormatError):
        parse_nba("alphabet: a\nstates: q\ninitial: q\n")  # missing buchi


def test_parse_lasso():
    w = parse_lasso("a b ; b a", AB)
    assert w.prefix == ("a", "b")
    assert w.period == ("b", "a")
    assert parse_lasso("; a", AB).prefix == ()
    with pytest.raises(FormatError):
        parse_lasso("a b", AB)
    with pytest.raises(FormatError):
        parse_lasso("a ;", AB)
    with pytest.raises(FormatError):
        parse_lasso("; z", AB)


def test_format_bda_header_and_table():
    waa = parse_waa(
        "alphabet: a b\nstates: q\nrecurring:\ndelta q = [a] | X q\n"
    )
    bda = BackwardDetAutomaton(waa)
    header = format_bda(bda)
    assert "state-space-bound: 2" in header
    assert "buchi-sets: (0,1)" in header
    full = format_bda(bda, enumerate_cap=16)
    assert "families: 2" in full
    assert full.count("trans ") == 4  # 2 families x 2 letters
