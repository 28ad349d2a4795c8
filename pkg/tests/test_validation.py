from backdet.automata import Alphabet, is_weak
from backdet.lasso import LassoWord
from backdet.validation import (
    check_dual,
    check_ltl,
    check_nba,
    check_nutl,
    check_uniqueness,
    exhaustive_lassos,
    exhaustive_lassos_total,
    random_nba,
    random_waa,
)

import random

AB = Alphabet(("a", "b"))


def test_exhaustive_lassos_counts():
    # prefixes: 1 + 2 + 4 = 7, periods: 2 + 4 = 6
    words = list(exhaustive_lassos(AB, u_max=2, v_max=2))
    assert len(words) == 7 * 6
    assert len(set(map(str, words))) == len(words)
    assert LassoWord((), ("a",)) in words


def test_exhaustive_lassos_total_counts():
    words = list(exhaustive_lassos_total(AB, total_max=3))
    for w in words:
        assert 1 <= len(w.prefix) + len(w.period) <= 3
    # totals 1..3: 2 + (4+4) + (8+8+8) = 34
    assert len(words) == 34


def test_random_waa_is_weak():
    rng = random.Random(0)
    for _ in range(20):
        waa = random_waa(rng, AB, rng.randint(1, 5))
        assert is_weak(waa)
        assert waa.initial is not None


def test_random_nba_valid():
    rng = random.Random(0)
    nba = random_nba(rng, AB, 3)
    assert len(nba.states) == 3
    assert nba.initial


def test_sweeps_deterministic_under_seed():
    a = check_dual(seed=5, count=3)
    b = check_dual(seed=5, count=3)
    assert a.cases == b.cases and a.failures == b.failures


def test_small_sweeps_pass():
    assert check_ltl(count=5).ok
    assert check_dual(count=5).ok
    assert check_nutl(count=5).ok
    assert check_uniqueness(count=5).ok
    assert check_nba(count=2).ok
