"""Textual formats for automata and lasso words.

WAA files, one item per line, '#' starts a comment:

    alphabet: a b
    states: q0 q1
    recurring: q1
    initial: q0          # optional
    delta q0 = [a] | (X q1 & X q0)

Conditions: '[a b]' tests letter membership ('[]' is never true, a set
listing the whole alphabet is always true), 'X q' refers to the value of q
at the next position, '&' binds tighter than '|'.

NBA files:

    alphabet: a b
    states: q0 q1
    initial: q0
    buchi: q1
    trans q0 a q1

Lassos are written 'u ; v' with space-separated letters; the prefix may be
empty ('; a b').
"""

from __future__ import annotations

from .automata import Alphabet, And, Condition, LetterSet, NextState, Or, WeakAlternatingAutomaton
from .errors import FormatError
from .lasso import LassoWord
from .nba import NBA


def _cond_tokens(text):
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "[]()&|":
            out.append(ch)
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace() and text[j] not in "[]()&|":
            j += 1
        out.append(text[i:j])
        i = j
    return out


class _CondParser:
    def __init__(self, text, alphabet, states):
        self.tokens = _cond_tokens(text)
        self.i = 0
        self.alphabet = alphabet
        self.states = states

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        c = self.parse_or()
        if self.peek() is not None:
            raise FormatError(f"trailing tokens in condition: {self.peek()!r}")
        return c

    def parse_or(self):
        c = self.parse_and()
        while self.peek() == "|":
            self.take()
            c = Or(c, self.parse_and())
        return c

    def parse_and(self):
        c = self.parse_atom()
        while self.peek() == "&":
            self.take()
            c = And(c, self.parse_atom())
        return c

    def parse_atom(self):
        tok = self.take()
        if tok == "(":
            c = self.parse_or()
            if self.take() != ")":
                raise FormatError("expected ')' in condition")
            return c
        if tok == "[":
            letters = []
            while self.peek() not in ("]", None):
                letters.append(self.take())
            if self.take() != "]":
                raise FormatError("unterminated letter set")
            for a in letters:
                if a not in self.alphabet:
                    raise FormatError(f"letter {a!r} not in alphabet")
            return LetterSet(frozenset(letters))
        if tok == "X":
            q = self.take()
            if q is None:
                raise FormatError("'X' must be followed by a state id")
            if q not in self.states:
                raise FormatError(f"unknown state {q!r} in condition")
            return NextState(q)
        raise FormatError(f"unexpected token in condition: {tok!r}")


def parse_condition(text: str, alphabet: Alphabet, states) -> Condition:
    return _CondParser(text, alphabet, set(states)).parse()


def format_condition(cond: Condition, parent_and: bool = False) -> str:
    if isinstance(cond, LetterSet):
        return "[" + " ".join(sorted(cond.letters)) + "]"
    if isinstance(cond, NextState):
        return f"X {cond.state}"
    if isinstance(cond, And):
        return f"{format_condition(cond.left, True)} & {format_condition(cond.right, True)}"
    if isinstance(cond, Or):
        text = f"{format_condition(cond.left)} | {format_condition(cond.right)}"
        return f"({text})" if parent_and else text
    raise TypeError(f"not a condition: {cond!r}")


def _split_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_waa(text: str) -> WeakAlternatingAutomaton:
    alphabet = states = recurring = initial = None
    delta_lines = []
    for lineno, line in _split_lines(text):
        if line.startswith("alphabet:"):
            alphabet = Alphabet(tuple(line.split()[1:]))
        elif line.startswith("states:"):
            states = line.split()[1:]
        elif line.startswith("recurring:"):
            recurring = line.split()[1:]
        elif line.startswith("initial:"):
            initial = line.split()[1:]
        elif line.startswith("delta "):
            body = line[len("delta "):]
            if "=" not in body:
                raise FormatError("delta line needs '='", f"line {lineno}")
            q, cond_text = body.split("=", 1)
            delta_lines.append((lineno, q.strip(), cond_text.strip()))
        else:
            raise FormatError(f"unrecognized line: {line!r}", f"line {lineno}")
    if alphabet is None:
        raise FormatError("missing 'alphabet:' line")
    if states is None:
        raise FormatError("missing 'states:' line")
    if recurring is None:
        raise FormatError("missing 'recurring:' line")
    delta = {}
    for lineno, q, cond_text in delta_lines:
        if q in delta:
            raise FormatError(f"duplicate delta for {q}", f"line {lineno}")
        delta[q] = parse_condition(cond_text, alphabet, states)
    return WeakAlternatingAutomaton(alphabet, states, delta, recurring, initial)


def format_waa(waa: WeakAlternatingAutomaton) -> str:
    lines = [
        "alphabet: " + " ".join(waa.alphabet.letters),
        "states: " + " ".join(waa.states),
        "recurring: " + " ".join(sorted(waa.recurring)),
    ]
    if waa.initial is not None:
        lines.append("initial: " + " ".join(sorted(waa.initial)))
    for q in waa.states:
        lines.append(f"delta {q} = {format_condition(waa.delta[q])}")
    return "\n".join(lines) + "\n"


def parse_nba(text: str) -> NBA:
    alphabet = states = initial = buchi = None
    transitions = []
    for lineno, line in _split_lines(text):
        if line.startswith("alphabet:"):
            alphabet = Alphabet(tuple(line.split()[1:]))
        elif line.startswith("states:"):
            states = line.split()[1:]
        elif line.startswith("initial:"):
            initial = line.split()[1:]
        elif line.startswith("buchi:"):
            buchi = line.split()[1:]
        elif line.startswith("trans "):
            parts = line.split()
            if len(parts) != 4:
                raise FormatError("trans line needs 'trans q a q2'", f"line {lineno}")
            transitions.append((parts[1], parts[2], parts[3]))
        else:
            raise FormatError(f"unrecognized line: {line!r}", f"line {lineno}")
    for name, value in (("alphabet", alphabet), ("states", states),
                        ("initial", initial), ("buchi", buchi)):
        if value is None:
            raise FormatError(f"missing '{name}:' line")
    return NBA(alphabet, states, initial, transitions, buchi)


def format_nba(nba: NBA) -> str:
    lines = [
        "alphabet: " + " ".join(nba.alphabet.letters),
        "states: " + " ".join(nba.states),
        "initial: " + " ".join(sorted(nba.initial)),
        "buchi: " + " ".join(sorted(nba.buchi)),
    ]
    for q, a, q2 in sorted(nba.transitions):
        lines.append(f"trans {q} {a} {q2}")
    return "\n".join(lines) + "\n"


def parse_lasso(text: str, alphabet: Alphabet | None = None) -> LassoWord:
    if ";" not in text:
        raise FormatError("lasso must be written 'u ; v'")
    u_text, v_text = text.split(";", 1)
    prefix = tuple(u_text.split())
    period = tuple(v_text.split())
    if not period:
        raise FormatError("lasso period must be non-empty")
    if alphabet is not None:
        for a in prefix + period:
            if a not in alphabet:
                raise FormatError(f"letter {a!r} not in alphabet")
    return LassoWord(prefix, period)


def format_bda(bda, enumerate_cap: int | None = None) -> str:
    """BDA header (SCC table and Buchi index) plus, when a cap is given,
    the fully enumerated transition table."""
    waa = bda.waa
    lines = ["# backward deterministic automaton"]
    lines.append("alphabet: " + " ".join(waa.alphabet.letters))
    lines.append(f"state-space-bound: {bda.state_space_bound}")
    for s, scc in enumerate(waa.sccs):
        polarity = "recurring" if scc.recurring else "nonrecurring"
        lines.append(f"scc {s}: {polarity} size {scc.size}: " + " ".join(scc.states))
    lines.append(
        "buchi-sets: " + " ".join(f"({s},{i})" for s, i in bda.buchi_indices)
    )
    if enumerate_cap is not None:
        families = bda.enumerate_state_space(enumerate_cap)
        lines.append(f"families: {len(families)}")
        for family in families:
            for a in waa.alphabet:
                rec = bda.step(a, family)
                fired = " ".join(f"({s},{i})" for s, i in sorted(rec.fired))
                crit = " ".join(str(m) for m in rec.critical)
                lines.append(
                    f"trans [{bda.format_family(family)}] --{a}--> "
                    f"[{bda.format_family(rec.result)}] critical: {crit} fired: {fired}"
                )
    return "\n".join(lines) + "\n"
