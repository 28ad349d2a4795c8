"""Weak alternating omega-automata over explicit alphabets.

Transition conditions are positive boolean formulas over letter-set tests
and next-state references.  The transition graph of an automaton has an edge
q -> q' whenever a reference to q' occurs in delta(q); weakness means every
strongly connected component of that graph is polarity-pure (all recurring
or all non-recurring).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("duplicate letters in alphabet")
        object.__setattr__(self, "letters", tuple(sorted(self.letters)))

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __contains__(self, letter: str) -> bool:
        return letter in self.letters

    def __len__(self) -> int:
        return len(self.letters)


class Condition:
    """Base class for transition-condition nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class LetterSet(Condition):
    letters: frozenset

    def __post_init__(self):
        object.__setattr__(self, "letters", frozenset(self.letters))


@dataclass(frozen=True)
class NextState(Condition):
    state: str


@dataclass(frozen=True)
class Or(Condition):
    left: Condition
    right: Condition


@dataclass(frozen=True)
class And(Condition):
    left: Condition
    right: Condition


def condition_subformulas(cond: Condition) -> list[Condition]:
    """All distinct subformulas of a condition, children before parents."""
    seen = set()
    out = []

    def walk(c):
        if c in seen:
            return
        if isinstance(c, (Or, And)):
            walk(c.left)
            walk(c.right)
        seen.add(c)
        out.append(c)

    walk(cond)
    return out


def condition_states(cond: Condition) -> set:
    """States referenced by next-state atoms in a condition."""
    return {c.state for c in condition_subformulas(cond) if isinstance(c, NextState)}


def dual_condition(cond: Condition, alphabet: Alphabet) -> Condition:
    if isinstance(cond, LetterSet):
        return LetterSet(frozenset(alphabet.letters) - cond.letters)
    if isinstance(cond, NextState):
        return cond
    if isinstance(cond, Or):
        return And(dual_condition(cond.left, alphabet), dual_condition(cond.right, alphabet))
    if isinstance(cond, And):
        return Or(dual_condition(cond.left, alphabet), dual_condition(cond.right, alphabet))
    raise TypeError(f"not a condition: {cond!r}")


@dataclass(frozen=True)
class SccInfo:
    """One SCC of the transition graph.

    ``recurring`` is None for a polarity-mixed component, which only arises
    for automata that fail the weakness requirement.
    """

    states: tuple[str, ...]
    recurring: Optional[bool]

    @property
    def size(self) -> int:
        return len(self.states)


class WeakAlternatingAutomaton:
    """States, total transition function, and recurring/non-recurring split.

    States and letters are kept in sorted order so that every derived
    artifact (SCC enumeration, value families, file output) is reproducible.
    The SCC decomposition is computed once, listed so that every component
    appears after all components it reaches (successors first).
    """

    def __init__(self, alphabet, states, delta, recurring, initial=None):
        self.alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(tuple(alphabet))
        self.states = tuple(sorted(states))
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state ids")
        self.delta = dict(delta)
        self.recurring = frozenset(recurring)
        self.initial = None if initial is None else frozenset(initial)
        self._validate()
        self.sccs = scc_decompose(self)
        self._scc_of = {}
        for idx, scc in enumerate(self.sccs):
            for q in scc.states:
                self._scc_of[q] = idx

    def _validate(self):
        declared = set(self.states)
        missing = declared - set(self.delta)
        if missing:
            raise ValueError(f"delta not total, missing: {sorted(missing)}")
        extra = set(self.delta) - declared
        if extra:
            raise ValueError(f"delta defined for undeclared states: {sorted(extra)}")
        for q, cond in self.delta.items():
            for sub in condition_subformulas(cond):
                if isinstance(sub, NextState) and sub.state not in declared:
                    raise ValueError(f"delta({q}) references undeclared state {sub.state}")
                if isinstance(sub, LetterSet) and not sub.letters <= set(self.alphabet.letters):
                    bad = sorted(sub.letters - set(self.alphabet.letters))
                    raise ValueError(f"delta({q}) uses letters outside the alphabet: {bad}")
        if not self.recurring <= declared:
            raise ValueError("recurring set contains undeclared states")
        if self.initial is not None and not self.initial <= declared:
            raise ValueError("initial set contains undeclared states")

    def successors(self, q: str) -> set:
        return condition_states(self.delta[q])

    def scc_of(self, q: str) -> int:
        """Index of q's SCC in the topologically sorted SCC list."""
        return self._scc_of[q]

    def is_recurring(self, q: str) -> bool:
        return q in self.recurring

    def dualize(self) -> "WeakAlternatingAutomaton":
        """Complement automaton: dual conditions, polarities swapped.

        The transition graph is unchanged, so weakness carries over.
        """
        delta = {q: dual_condition(c, self.alphabet) for q, c in self.delta.items()}
        recurring = frozenset(self.states) - self.recurring
        return WeakAlternatingAutomaton(self.alphabet, self.states, delta, recurring, self.initial)

    def __eq__(self, other):
        if not isinstance(other, WeakAlternatingAutomaton):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.states == other.states
            and self.delta == other.delta
            and self.recurring == other.recurring
            and self.initial == other.initial
        )

    def __repr__(self):
        return f"<WAA {len(self.states)} states, {len(self.sccs)} SCCs>"


def scc_decompose(waa: WeakAlternatingAutomaton) -> list[SccInfo]:
    """Tarjan decomposition of the transition graph.

    Components are emitted sinks-first, i.e. a component appears after every
    component it reaches.  A singleton without a self-edge is its own SCC.
    """
    succ = {q: sorted(waa.successors(q)) for q in waa.states}
    index = {}
    lowlink = {}
    on_stack = set()
    stack = []
    counter = [0]
    sccs = []

    def connect(root):
        # iterative Tarjan; work entries are (state, iterator over successors)
        work = [(root, iter(succ[root]))]
        index[root] = lowlink[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = lowlink[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                lowlink[u] = min(lowlink[u], lowlink[v])
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.remove(w)
                    comp.append(w)
                    if w == v:
                        break
                members = tuple(sorted(comp))
                rec = {q in waa.recurring for q in members}
                polarity = rec.pop() if len(rec) == 1 else None
                sccs.append(SccInfo(members, polarity))

    for q in waa.states:
        if q not in index:
            connect(q)
    return sccs


def validate_weak(waa: WeakAlternatingAutomaton) -> list[SccInfo]:
    """Polarity-mixed SCCs of the automaton; empty list means weak."""
    return [scc for scc in waa.sccs if scc.recurring is None]


def is_weak(waa: WeakAlternatingAutomaton) -> bool:
    return not validate_weak(waa)


def is_very_weak(waa: WeakAlternatingAutomaton) -> bool:
    return all(scc.size == 1 for scc in waa.sccs)


def dualize(waa: WeakAlternatingAutomaton) -> WeakAlternatingAutomaton:
    if validate_weak(waa):
        raise ValueError("cannot dualize a non-weak automaton")
    return waa.dualize()
