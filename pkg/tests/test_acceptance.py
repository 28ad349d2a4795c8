"""Acceptance suite: one test per top-level criterion.

Each test prints a single pass/fail line (visible via pytest -rA or -s) and
asserts the criterion at its stated tolerance (all criteria are exact).
"""

import random

import pytest

from backdet.automata import Alphabet, NextState, WeakAlternatingAutomaton, is_very_weak
from backdet.construction import INF, BackwardDetAutomaton, basic_step
from backdet.lasso import (
    LassoWord,
    bda_final_run,
    count_final_candidates,
    waa_accept_table,
)
from backdet.ltl import ltl_to_waa, random_ltl
from backdet.nba import nba_accepts_lasso, nba_to_bda
from backdet.nutl import nutl_eval_lasso
from backdet.validation import (
    check_dual,
    check_ltl,
    check_nba,
    exhaustive_lassos,
    exhaustive_lassos_total,
    random_nba,
    random_waa,
)

AB = Alphabet(("a", "b"))


def report(number, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] criterion {number}: {detail}")
    assert ok, f"criterion {number}: {detail}"


def test_criterion_1_main_theorem_equivalence():
    # 200 random formulas (size <= 8, 2 letters, fixed seed) x exhaustive
    # lassos |u| <= 2, |v| <= 3: lambda outputs equal the oracle sets at
    # every quotient position
    result = check_ltl(seed=7, count=200, size=8, u_max=2, v_max=3)
    report(
        1,
        result.ok,
        f"lambda(r(i)) == oracle on {result.cases} formula/lasso cases "
        f"({len(result.failures)} mismatches)",
    )


def test_criterion_2_backward_determinism():
    # exhaustive h-cycle enumeration on spaces <= 2^12: exactly one final
    # candidate, never zero, never two
    rng = random.Random(23)
    lassos = list(exhaustive_lassos(AB, 1, 2))
    cases = 0
    bad = []
    for _ in range(60):
        waa = random_waa(rng, AB, rng.randint(1, 4))
        bda = BackwardDetAutomaton(waa)
        if bda.state_space_bound > 1 << 12:
            continue
        for w in lassos:
            cases += 1
            n = count_final_candidates(bda, w, cap=1 << 12)
            if n != 1:
                bad.append((str(w), n))
    for _ in range(40):
        phi = random_ltl(rng, AB, 6)
        bda = BackwardDetAutomaton(ltl_to_waa(phi, AB))
        if bda.state_space_bound > 1 << 12:
            continue
        for w in lassos:
            cases += 1
            n = count_final_candidates(bda, w, cap=1 << 12)
            if n != 1:
                bad.append((str(w), n))
    report(2, not bad, f"exactly one final h-cycle on {cases} cases {bad[:3]}")


def test_criterion_3_bounds():
    rng = random.Random(31)
    ok = True
    detail = []
    for _ in range(50):
        waa = random_waa(rng, AB, rng.randint(1, 5))
        bda = BackwardDetAutomaton(waa)
        expected = 1
        for scc in waa.sccs:
            expected *= (scc.size + 1) ** scc.size
        if bda.state_space_bound != expected or len(bda.buchi_indices) != len(waa.states):
            ok = False
            detail.append("random waa bound mismatch")
    for _ in range(50):
        phi = random_ltl(rng, AB, 8)
        waa = ltl_to_waa(phi, AB)
        bda = BackwardDetAutomaton(waa)
        if not is_very_weak(waa) or bda.state_space_bound != 2 ** len(waa.states):
            ok = False
            detail.append("ltl-derived automaton space is not 2^n")
    report(3, ok, "state-space product, Buchi count |Q|, 2^n for LTL " + " ".join(detail[:2]))


def test_criterion_4_complementation():
    result = check_dual(seed=11, count=100, max_states=5, u_max=2, v_max=2)
    report(
        4,
        result.ok,
        f"accepted XOR dual-accepted on {result.cases} state/position cases",
    )


def test_criterion_5_basic_approach_counterexample():
    waa = WeakAlternatingAutomaton(AB, ["q"], {"q": NextState("q")}, [])
    fixed = [
        f
        for f in [(1,), (INF,)]
        if all(basic_step(waa, letter, f) == f for letter in AB)
    ]
    bda = BackwardDetAutomaton(waa)
    unique = True
    for w in exhaustive_lassos(AB, 1, 2):
        if count_final_candidates(bda, w) != 1:
            unique = False
        run = bda_final_run(bda, w)
        if any(out != frozenset() for out in run.outputs(bda)):
            unique = False
    report(
        5,
        len(fixed) >= 2 and unique,
        f"basic step keeps {len(fixed)} constant runs; full construction "
        "yields a unique final run with empty output",
    )


def test_criterion_6_rank_formulas():
    # >= 50 sampled NBAs with n <= 2 x exhaustive lassos |u|+|v| <= 4:
    # chi truth sets equal the peeling ranks, ranks < 2n or infinite, final
    # tuple matches direct acceptance (pipeline checked separately in 7)
    result = check_nba(seed=17, count=50, n_max=2, total_max=4, end_to_end=False)
    report(
        6,
        result.ok,
        f"chi == peeling oracle on {result.cases} NBA/lasso cases "
        f"({len(result.failures)} mismatches)",
    )


def test_criterion_7_nba_pipeline():
    # same NBA distribution: language equality through the full pipeline and
    # the intermediate automaton shape (2n^2 states in 2n SCCs of size n)
    rng = random.Random(17)
    lassos = list(exhaustive_lassos_total(AB, 4))
    lang_bad = []
    shape_bad = []
    cases = 0
    for _ in range(50):
        n = rng.randint(1, 2)
        nba = random_nba(rng, AB, n)
        res = nba_to_bda(nba)
        if len(res.waa.states) != 2 * n * n:
            shape_bad.append(f"{len(res.waa.states)} states for n={n}")
        sizes = [scc.size for scc in res.waa.sccs]
        if len(sizes) != 2 * n or any(s != n for s in sizes):
            shape_bad.append(f"SCC sizes {sorted(sizes)} for n={n}")
        for w in lassos:
            cases += 1
            run = bda_final_run(res.bda, w)
            got = res.accepting_states(run, 0)
            expect = {q for q in nba.states if nba_accepts_lasso(nba, w, q, 0)}
            if got != expect:
                lang_bad.append(str(w))
    ok = not lang_bad and not shape_bad
    report(
        7,
        ok,
        f"language equality on {cases} cases ({len(lang_bad)} mismatches); "
        f"structure claim violations: {len(shape_bad)} e.g. {shape_bad[:2]}",
    )


def test_criterion_8_quotient_soundness():
    rng = random.Random(41)
    ok = True
    detail = ""
    words = [w for w in exhaustive_lassos(AB, 1, 2)]

    def doubled_index(w, i):
        # map a quotient position of (u, v.v) back to the (u, v) quotient
        if i < w.positions:
            return i
        return w.loop_start + (i - w.loop_start) % len(w.period)

    for _ in range(20):
        waa = random_waa(rng, AB, rng.randint(1, 4))
        bda = BackwardDetAutomaton(waa)
        for w in words:
            w2 = w.unrolled(2)
            t1 = waa_accept_table(waa, w)
            t2 = waa_accept_table(waa, w2)
            for i in range(w2.positions):
                for q in waa.states:
                    if t2[(i, q)] != t1[(doubled_index(w, i), q)]:
                        ok = False
                        detail = f"oracle differs at {w} pos {i} state {q}"
            r1 = bda_final_run(bda, w)
            r2 = bda_final_run(bda, w2)
            for i in range(w2.positions):
                a = bda.output(r2.families[i])
                b = bda.output(r1.families[doubled_index(w, i)])
                if a != b:
                    ok = False
                    detail = f"lambda outputs differ at {w} pos {i}"
    for _ in range(5):
        nba = random_nba(rng, AB, 2)
        for w in words[:10]:
            w2 = w.unrolled(2)
            for q in nba.states:
                if nba_accepts_lasso(nba, w, q, 0) != nba_accepts_lasso(nba, w2, q, 0):
                    ok = False
                    detail = f"nba acceptance differs on {w}"
    report(8, ok, "period doubling changes no per-position answer " + detail)
