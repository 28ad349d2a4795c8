"""Nondeterministic Buchi automata and their backward determinization.

The route goes through canonical ranks: the run DAG of an NBA on a word is
peeled round by round (drop vertices with finitely many descendants, then
vertices that see no Buchi state), assigning even/odd ranks; a vertex keeps
rank infinity exactly when some run from it hits the Buchi set infinitely
often.  The rank predicates are definable by vectorial fixed-point
formulas, whose negations feed the weak-alternating-to-backward pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import Alphabet
from .construction import INF, BackwardDetAutomaton
from .errors import SemanticError
from .lasso import LassoWord
from . import nutl
from .nutl import Fix, Letter, Next as NNext, Var, dual_nutl


@dataclass(frozen=True)
class NBA:
    alphabet: Alphabet
    states: tuple[str, ...]
    initial: frozenset
    transitions: frozenset
    buchi: frozenset

    def __init__(self, alphabet, states, initial, transitions, buchi):
        alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(tuple(alphabet))
        states = tuple(sorted(states))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "initial", frozenset(initial))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in transitions))
        object.__setattr__(self, "buchi", frozenset(buchi))
        declared = set(states)
        for q, a, q2 in self.transitions:
            if q not in declared or q2 not in declared:
                raise ValueError(f"transition {q}-{a}->{q2} uses undeclared state")
            if a not in alphabet:
                raise ValueError(f"transition letter {a!r} not in alphabet")
        for name, group in (("initial", self.initial), ("buchi", self.buchi)):
            if not group <= declared:
                raise ValueError(f"{name} set contains undeclared states")

    def successors(self, q: str, a: str) -> list[str]:
        return sorted(q2 for (p, b, q2) in self.transitions if p == q and b == a)


def _quotient_graph(nba: NBA, w: LassoWord):
    """Run-DAG quotient: vertices (position, state), edges by the letter at
    each position; the infinite DAG folds onto it positionwise."""
    succ = {}
    for i in range(w.positions):
        a = w.letter(i)
        j = w.succ(i)
        for q in nba.states:
            succ[(i, q)] = [(j, q2) for q2 in nba.successors(q, a)]
    return succ


def _scc_list(vertices, succ):
    index = {}
    lowlink = {}
    on_stack = set()
    stack = []
    counter = [0]
    comps = []

    def connect(root):
        work = [(root, iter(succ[root]))]
        index[root] = lowlink[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for u in it:
                if u not in index:
                    index[u] = lowlink[u] = counter[0]
                    counter[0] += 1
                    stack.append(u)
                    on_stack.add(u)
                    work.append((u, iter(succ[u])))
                    advanced = True
                    break
                if u in on_stack:
                    lowlink[v] = min(lowlink[v], index[u])
            if advanced:
                continue
            work.pop()
            if work:
                p = work[-1][0]
                lowlink[p] = min(lowlink[p], lowlink[v])
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack.remove(u)
                    comp.append(u)
                    if u == v:
                        break
                comps.append(comp)

    for v in vertices:
        if v not in index:
            connect(v)
    return comps


def _reaches(vertices, succ, targets):
    """Vertices with a path (possibly empty) to a target."""
    reached = set(targets)
    changed = True
    while changed:
        changed = False
        for v in vertices:
            if v not in reached and any(u in reached for u in succ[v]):
                reached.add(v)
                changed = True
    return reached


def _cyclic_vertices(vertices, succ):
    """Vertices lying on some cycle of the induced subgraph."""
    out = set()
    vset = set(vertices)
    for comp in _scc_list(vertices, {v: [u for u in succ[v] if u in vset] for v in vertices}):
        if len(comp) > 1 or comp[0] in succ[comp[0]]:
            out.update(comp)
    return out


def nba_accepts_lasso(nba: NBA, w: LassoWord, q: str, i: int = 0) -> bool:
    """True iff some run from q over the suffix at position i visits the
    Buchi set infinitely often; decided on the quotient by reachability to
    a cycle through a Buchi-tagged vertex."""
    if not 0 <= i < w.positions:
        raise ValueError(f"position {i} outside quotient range")
    succ = _quotient_graph(nba, w)
    vertices = list(succ)
    good = set()
    vset = set(vertices)
    for comp in _scc_list(vertices, succ):
        has_cycle = len(comp) > 1 or comp[0] in succ[comp[0]]
        if has_cycle and any(state in nba.buchi for (_, state) in comp):
            good.update(comp)
    return (i, q) in _reaches(vertices, succ, good)


@dataclass
class QuotientRunDag:
    """Quotient run DAG with peeling results.

    ``ranks`` maps each (position, state) vertex to its canonical rank (a
    natural number below twice the state count, or INF); the flag sets
    record the classification of the unpeeled graph.
    """

    word: LassoWord
    succ: dict
    finitary: set
    b_free: set
    b_recurring: set
    ranks: dict
    rounds: int
    ultimate_width: int = 0


def peel_ranks(nba: NBA, w: LassoWord) -> QuotientRunDag:
    """Alternately strip finitary and Buchi-free vertices, ranking them
    2i and 2i+1 per round; what survives is Buchi-recurring (rank INF)."""
    succ = _quotient_graph(nba, w)
    vertices = set(succ)

    def finitary_in(alive):
        sub = {v: [u for u in succ[v] if u in alive] for v in alive}
        cyc = _cyclic_vertices(list(alive), sub)
        return alive - _reaches(alive, sub, cyc)

    def b_free_in(alive):
        sub = {v: [u for u in succ[v] if u in alive] for v in alive}
        tagged = {v for v in alive if v[1] in nba.buchi}
        return alive - _reaches(alive, sub, tagged)

    def b_recurring_in(alive):
        sub = {v: [u for u in succ[v] if u in alive] for v in alive}
        good = set()
        for comp in _scc_list(list(alive), sub):
            has_cycle = len(comp) > 1 or comp[0] in sub[comp[0]]
            if has_cycle and any(state in nba.buchi for (_, state) in comp):
                good.update(comp)
        return _reaches(alive, sub, good)

    finitary = finitary_in(vertices)
    b_free = b_free_in(vertices)
    b_recurring = b_recurring_in(vertices)

    ranks = {}
    alive = set(vertices)
    rounds = 0
    while alive:
        fin = finitary_in(alive)
        for v in fin:
            ranks[v] = 2 * rounds
        alive -= fin
        free = b_free_in(alive)
        for v in free:
            ranks[v] = 2 * rounds + 1
        alive -= free
        if not fin and not free:
            break
        rounds += 1
    for v in alive:
        ranks[v] = INF
    assert rounds <= len(nba.states), "peeling must terminate within n rounds"
    assert alive == b_recurring, "peeling residue must be the Buchi-recurring vertices"

    infinitary = vertices - finitary
    width = min(
        sum(1 for q in nba.states if (i, q) in infinitary and (i, q) not in b_recurring)
        for i in range(w.loop_start, w.positions)
    )
    return QuotientRunDag(w, succ, finitary, b_free, b_recurring, ranks, rounds, width)


@dataclass
class RankFormulaTable:
    """chi[i][j]: positions where vertex (pos, q_j) has canonical rank <= i.

    ``final_tuple`` holds the negations of the top-level formulas: component
    j is true at a position exactly when q_j accepts the suffix there.
    """

    nba: NBA
    chi: list
    final_tuple: tuple


def build_rank_formulas(nba: NBA) -> RankFormulaTable:
    n = len(nba.states)
    if n < 1:
        raise SemanticError("rank formulas need at least one state")
    letters = list(nba.alphabet)

    def var(i, j):
        return f"X{i}_{j}"

    def letter_term(i, j):
        # one disjunct per letter: the letter holds now and every successor
        # satisfies the level-i variable; no successors leaves just the letter
        terms = []
        for a in letters:
            conj = None
            for k, q2 in enumerate(nba.states):
                if (nba.states[j], a, q2) in nba.transitions:
                    atom = NNext(Var(var(i, k)))
                    conj = atom if conj is None else nutl.And(conj, atom)
            term = Letter(a) if conj is None else nutl.And(Letter(a), conj)
            terms.append(term)
        out = terms[0]
        for t in terms[1:]:
            out = nutl.Or(out, t)
        return out

    chi = []
    for i in range(2 * n):
        names = tuple(var(i, j) for j in range(n))
        bodies = []
        for j in range(n):
            if i == 0:
                body = letter_term(0, j)
            elif i % 2 == 1:
                if nba.states[j] in nba.buchi:
                    body = chi[i - 1][j]
                else:
                    body = nutl.Or(chi[i - 1][j], letter_term(i, j))
            else:
                body = nutl.Or(chi[i - 1][j], letter_term(i, j))
            bodies.append(body)
        kind = nutl.NU if i % 2 == 1 else nutl.MU
        chi.append([Fix(kind, j, names, tuple(bodies)) for j in range(n)])

    final = tuple(dual_nutl(chi[2 * n - 1][j]) for j in range(n))
    return RankFormulaTable(nba, chi, final)


@dataclass
class NbaPipelineResult:
    nba: NBA
    formulas: RankFormulaTable
    waa: object
    initial_states: list
    bda: BackwardDetAutomaton

    def accepting_states(self, run, position: int = 0) -> set:
        """NBA states accepting the suffix, read off the final run output."""
        out = self.bda.output(run.families[position])
        return {
            self.nba.states[j]
            for j, name in enumerate(self.initial_states)
            if name in out
        }


def nba_to_bda(nba: NBA) -> NbaPipelineResult:
    """Full pipeline: rank formulas -> optimized translation -> backward
    deterministic automaton."""
    table = build_rank_formulas(nba)
    waa, initial_states = nutl.nutl_to_waa_optimized(list(table.final_tuple), nba.alphabet)
    bda = BackwardDetAutomaton(waa)
    return NbaPipelineResult(nba, table, waa, initial_states, bda)


def nba_language_member(nba: NBA, w: LassoWord) -> bool:
    return any(nba_accepts_lasso(nba, w, q, 0) for q in sorted(nba.initial))
