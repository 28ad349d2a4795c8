"""Randomized and exhaustive validation sweeps.

Every sweep pits a construction against an independent semantic route and
collects structured counterexamples; the CLI check command and the
acceptance test suite are thin wrappers around these functions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .automata import (
    Alphabet,
    And,
    LetterSet,
    NextState,
    Or,
    WeakAlternatingAutomaton,
    is_very_weak,
)
from .construction import INF, BackwardDetAutomaton
from .errors import FinalRunError, SemanticError
from .lasso import (
    LassoWord,
    bda_final_run,
    count_final_candidates,
    waa_accept_table,
)
from . import ltl, nutl
from .ltl import ltl_to_waa, ltl_truth_vector, random_ltl
from .nba import NBA, build_rank_formulas, nba_accepts_lasso, nba_to_bda, peel_ranks


@dataclass
class CheckReport:
    mode: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, **info):
        self.failures.append(info)

    def summary(self) -> str:
        status = "pass" if self.ok else "FAIL"
        return f"{self.mode}: {status} ({self.cases} cases, {len(self.failures)} failures)"


def exhaustive_lassos(alphabet: Alphabet, u_max: int, v_max: int):
    """All lassos with |u| <= u_max and 1 <= |v| <= v_max."""
    letters = list(alphabet)
    for ulen in range(u_max + 1):
        for u in itertools.product(letters, repeat=ulen):
            for vlen in range(1, v_max + 1):
                for v in itertools.product(letters, repeat=vlen):
                    yield LassoWord(u, v)


def exhaustive_lassos_total(alphabet: Alphabet, total_max: int):
    """All lassos with |u| + |v| <= total_max."""
    letters = list(alphabet)
    for total in range(1, total_max + 1):
        for vlen in range(1, total + 1):
            ulen = total - vlen
            for u in itertools.product(letters, repeat=ulen):
                for v in itertools.product(letters, repeat=vlen):
                    yield LassoWord(u, v)


def random_condition(rng, alphabet, states, depth):
    if depth <= 0 or rng.random() < 0.35:
        if rng.random() < 0.5:
            k = rng.randint(0, len(alphabet))
            return LetterSet(frozenset(rng.sample(list(alphabet), k)))
        return NextState(rng.choice(states))
    op = Or if rng.random() < 0.5 else And
    return op(
        random_condition(rng, alphabet, states, depth - 1),
        random_condition(rng, alphabet, states, depth - 1),
    )


def random_waa(rng, alphabet: Alphabet, n_states: int) -> WeakAlternatingAutomaton:
    """Random automaton, polarity assigned per SCC, hence always weak."""
    states = [f"q{i}" for i in range(n_states)]
    delta = {q: random_condition(rng, alphabet, states, depth=2) for q in states}
    skeleton = WeakAlternatingAutomaton(alphabet, states, delta, recurring=())
    recurring = set()
    for scc in skeleton.sccs:
        if rng.random() < 0.5:
            recurring.update(scc.states)
    initial = {rng.choice(states)}
    return WeakAlternatingAutomaton(alphabet, states, delta, recurring, initial)


def random_nba(rng, alphabet: Alphabet, n_states: int, density: float = 0.5) -> NBA:
    states = [f"q{i}" for i in range(n_states)]
    transitions = [
        (q, a, q2)
        for q in states
        for a in alphabet
        for q2 in states
        if rng.random() < density
    ]
    buchi = [q for q in states if rng.random() < 0.5]
    initial = [rng.choice(states)]
    return NBA(alphabet, states, initial, transitions, buchi)


def check_ltl(
    seed: int = 7,
    count: int = 200,
    size: int = 8,
    alphabet: Alphabet = Alphabet(("a", "b")),
    u_max: int = 2,
    v_max: int = 3,
) -> CheckReport:
    """Main-construction sweep over random formulas.

    For every formula the backward automaton's outputs on every lasso and
    position are compared against both the direct automaton oracle and the
    formula semantics; structural bounds are checked along the way.
    """
    rng = random.Random(seed)
    report = CheckReport("ltl")
    lassos = list(exhaustive_lassos(alphabet, u_max, v_max))
    for case in range(count):
        phi = random_ltl(rng, alphabet, size)
        text = ltl.format_ltl(phi)
        waa = ltl_to_waa(phi, alphabet)
        n = len(waa.states)
        bda = BackwardDetAutomaton(waa)
        if not is_very_weak(waa):
            report.fail(formula=text, reason="translation not very weak")
            continue
        if bda.state_space_bound != 2 ** n:
            report.fail(formula=text, reason="state-space bound is not 2^n",
                        bound=bda.state_space_bound, states=n)
        if len(bda.buchi_indices) != n:
            report.fail(formula=text, reason="Buchi set count differs from state count")
        q_phi = next(iter(waa.initial))
        for w in lassos:
            report.cases += 1
            try:
                run = bda_final_run(bda, w)
            except FinalRunError as e:
                report.fail(formula=text, word=str(w), reason=str(e))
                continue
            table = waa_accept_table(waa, w)
            truth = ltl_truth_vector(phi, w)
            for i in range(w.positions):
                oracle = frozenset(q for q in waa.states if table[(i, q)])
                got = bda.output(run.families[i])
                if oracle != got:
                    report.fail(formula=text, word=str(w), position=i,
                                reason="output differs from automaton oracle",
                                oracle=sorted(oracle), bda=sorted(got))
                if (q_phi in oracle) != truth[i]:
                    report.fail(formula=text, word=str(w), position=i,
                                reason="automaton oracle differs from formula semantics")
    return report


def check_dual(
    seed: int = 11,
    count: int = 100,
    max_states: int = 5,
    alphabet: Alphabet = Alphabet(("a", "b")),
    u_max: int = 2,
    v_max: int = 2,
) -> CheckReport:
    """Complementation sweep: acceptance flips under dualization for every
    state and position of every sampled automaton."""
    rng = random.Random(seed)
    report = CheckReport("dual")
    lassos = list(exhaustive_lassos(alphabet, u_max, v_max))
    for _ in range(count):
        waa = random_waa(rng, alphabet, rng.randint(1, max_states))
        dual = waa.dualize()
        for w in lassos:
            table = waa_accept_table(waa, w)
            dual_table = waa_accept_table(dual, w)
            for i in range(w.positions):
                for q in waa.states:
                    report.cases += 1
                    if table[(i, q)] == dual_table[(i, q)]:
                        report.fail(word=str(w), position=i, state=q,
                                    reason="dual automaton agrees instead of flipping")
    return report


def random_nutl(rng, alphabet: Alphabet, depth: int = 3, scope=()) -> nutl.NutlFormula:
    """Random closed guarded formula: variables only occur under a next
    operator, so every dependence cycle crosses one."""
    letters = list(alphabet)
    roll = rng.random()
    if depth <= 0 or roll < 0.3:
        name = rng.choice(letters)
        if scope and rng.random() < 0.4:
            return nutl.Next(nutl.Var(rng.choice(scope)))
        return nutl.Letter(name) if rng.random() < 0.7 else nutl.NegLetter(name)
    if roll < 0.55:
        op = nutl.Or if rng.random() < 0.5 else nutl.And
        return op(
            random_nutl(rng, alphabet, depth - 1, scope),
            random_nutl(rng, alphabet, depth - 1, scope),
        )
    if roll < 0.7:
        return nutl.Next(random_nutl(rng, alphabet, depth - 1, scope))
    r = rng.randint(1, 2)
    names = tuple(f"V{rng.randrange(10**6)}_{k}" for k in range(r))
    bodies = tuple(
        random_nutl(rng, alphabet, depth - 1, scope + names) for _ in range(r)
    )
    kind = nutl.MU if rng.random() < 0.5 else nutl.NU
    return nutl.Fix(kind, rng.randrange(r), names, bodies)


def check_nutl(
    seed: int = 13,
    count: int = 60,
    alphabet: Alphabet = Alphabet(("a", "b")),
    u_max: int = 1,
    v_max: int = 2,
) -> CheckReport:
    """Fixed-point frontend sweep: Kleene evaluation against the backward
    automaton outputs, duality, and optimized-translation agreement."""
    rng = random.Random(seed)
    report = CheckReport("nutl")
    lassos = list(exhaustive_lassos(alphabet, u_max, v_max))
    produced = 0
    while produced < count:
        phi = random_nutl(rng, alphabet)
        if not nutl.is_closed(phi):
            continue
        if nutl.check_guarded(phi) is not None or nutl.check_alternation_free(phi) is not None:
            continue
        produced += 1
        waa, (init,) = nutl.nutl_to_waa([phi], alphabet)
        bda = BackwardDetAutomaton(waa)
        try:
            waa_opt, init_opt = nutl.nutl_to_waa_optimized([phi], alphabet)
        except SemanticError:
            waa_opt = None
        dual = nutl.dual_nutl(phi)
        for w in lassos:
            report.cases += 1
            truth = nutl.nutl_truth_set(phi, w)
            dual_truth = nutl.nutl_truth_set(dual, w)
            if dual_truth != frozenset(range(w.positions)) - truth:
                report.fail(formula=nutl.format_nutl(phi), word=str(w),
                            reason="dual formula is not the complement")
            try:
                run = bda_final_run(bda, w)
            except FinalRunError as e:
                report.fail(formula=nutl.format_nutl(phi), word=str(w), reason=str(e))
                continue
            for i in range(w.positions):
                if (init in bda.output(run.families[i])) != (i in truth):
                    report.fail(formula=nutl.format_nutl(phi), word=str(w), position=i,
                                reason="backward outputs differ from Kleene semantics")
            if waa_opt is not None:
                table = waa_accept_table(waa_opt, w)
                for i in range(w.positions):
                    if table[(i, init_opt[0])] != (i in truth):
                        report.fail(formula=nutl.format_nutl(phi), word=str(w), position=i,
                                    reason="optimized translation changes the language")
    return report


def check_nba(
    seed: int = 17,
    count: int = 50,
    alphabet: Alphabet = Alphabet(("a", "b")),
    n_max: int = 2,
    total_max: int = 4,
    end_to_end: bool = True,
) -> CheckReport:
    """Rank-formula and end-to-end pipeline sweep for small NBAs."""
    rng = random.Random(seed)
    report = CheckReport("nba")
    lassos = list(exhaustive_lassos_total(alphabet, total_max))
    for _ in range(count):
        n = rng.randint(1, n_max)
        nba = random_nba(rng, alphabet, n)
        table = build_rank_formulas(nba)
        pipeline = nba_to_bda(nba) if end_to_end else None
        for w in lassos:
            report.cases += 1
            dag = peel_ranks(nba, w)
            for v, r in dag.ranks.items():
                if r != INF and not r < 2 * n:
                    report.fail(word=str(w), vertex=v, reason="rank out of range", rank=r)
            for i in range(2 * n):
                for j, q in enumerate(nba.states):
                    chi_val = nutl.nutl_truth_set(table.chi[i][j], w)
                    expect = frozenset(
                        k for k in range(w.positions) if dag.ranks[(k, q)] <= i
                    )
                    if chi_val != expect:
                        report.fail(word=str(w), level=i, state=q,
                                    reason="rank formula disagrees with peeling",
                                    formula_value=sorted(chi_val), peeling=sorted(expect))
            final_truth = nutl.nutl_eval_lasso(list(table.final_tuple), w)
            for j, q in enumerate(nba.states):
                if (j in final_truth[0]) != nba_accepts_lasso(nba, w, q, 0):
                    report.fail(word=str(w), state=q,
                                reason="negated top-level formula disagrees with acceptance")
            if pipeline is not None:
                try:
                    run = bda_final_run(pipeline.bda, w)
                except FinalRunError as e:
                    report.fail(word=str(w), reason=str(e))
                    continue
                accepted = pipeline.accepting_states(run, 0)
                direct = {q for q in nba.states if nba_accepts_lasso(nba, w, q, 0)}
                if accepted != direct:
                    report.fail(word=str(w), reason="pipeline language differs",
                                pipeline=sorted(accepted), nba=sorted(direct))
    return report


def check_uniqueness(
    seed: int = 23,
    count: int = 40,
    alphabet: Alphabet = Alphabet(("a", "b")),
    max_states: int = 4,
    u_max: int = 1,
    v_max: int = 2,
    cap: int = 1 << 12,
) -> CheckReport:
    """Backward-determinism sweep: exhaustive h-cycle enumeration must find
    exactly one final candidate for every automaton and lasso."""
    rng = random.Random(seed)
    report = CheckReport("uniqueness")
    lassos = list(exhaustive_lassos(alphabet, u_max, v_max))
    for _ in range(count):
        waa = random_waa(rng, alphabet, rng.randint(1, max_states))
        bda = BackwardDetAutomaton(waa)
        if bda.state_space_bound > cap:
            continue
        for w in lassos:
            report.cases += 1
            candidates = count_final_candidates(bda, w, cap=cap)
            if candidates != 1:
                report.fail(word=str(w), reason=f"{candidates} final candidates")
    return report
