"""LTL in negation normal form: parsing, translation, lasso semantics.

Formulas are built over the letters of an explicit alphabet; negation is
only allowed directly on letters.  The translation produces a very weak
alternating automaton with one state per distinct subformula.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .automata import Alphabet, And as CAnd, LetterSet, NextState, Or as COr, WeakAlternatingAutomaton
from .errors import FormatError
from .lasso import LassoWord


class LtlFormula:
    __slots__ = ()


@dataclass(frozen=True)
class Letter(LtlFormula):
    name: str


@dataclass(frozen=True)
class NegLetter(LtlFormula):
    name: str


@dataclass(frozen=True)
class Or(LtlFormula):
    left: LtlFormula
    right: LtlFormula


@dataclass(frozen=True)
class And(LtlFormula):
    left: LtlFormula
    right: LtlFormula


@dataclass(frozen=True)
class Next(LtlFormula):
    operand: LtlFormula


@dataclass(frozen=True)
class Eventually(LtlFormula):
    operand: LtlFormula


@dataclass(frozen=True)
class Always(LtlFormula):
    operand: LtlFormula


@dataclass(frozen=True)
class Until(LtlFormula):
    left: LtlFormula
    right: LtlFormula


@dataclass(frozen=True)
class Release(LtlFormula):
    left: LtlFormula
    right: LtlFormula


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(!)|(&)|(\|)|([A-Za-z_][A-Za-z0-9_]*))")

_UNARY = {"X": Next, "F": Eventually, "G": Always}
_BINARY = {"U": Until, "R": Release}


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip():
                raise FormatError(f"unexpected character {text[pos:].lstrip()[0]!r}", pos)
            break
        tok = m.group(0).strip()
        if tok:
            tokens.append((tok, m.start()))
        pos = m.end()
    return tokens


class _LtlParser:
    """Precedence (loosest first): |, &, U/R (right-assoc), unary X F G."""

    def __init__(self, text, alphabet):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.alphabet = alphabet

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        f = self.parse_or()
        if self.peek() is not None:
            raise FormatError(f"trailing input {self.peek()!r}", self.pos())
        return f

    def parse_or(self):
        f = self.parse_and()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.parse_and())
        return f

    def parse_and(self):
        f = self.parse_binary_temporal()
        while self.peek() == "&":
            self.take()
            f = And(f, self.parse_binary_temporal())
        return f

    def parse_binary_temporal(self):
        f = self.parse_unary()
        if self.peek() in _BINARY:
            op = _BINARY[self.take()]
            return op(f, self.parse_binary_temporal())
        return f

    def parse_unary(self):
        tok = self.peek()
        if tok in _UNARY:
            self.take()
            return _UNARY[tok](self.parse_unary())
        return self.parse_atom()

    def parse_atom(self):
        tok = self.peek()
        if tok is None:
            raise FormatError("unexpected end of formula", self.pos())
        if tok == "(":
            self.take()
            f = self.parse_or()
            if self.peek() != ")":
                raise FormatError("expected ')'", self.pos())
            self.take()
            return f
        if tok == "!":
            at = self.pos()
            self.take()
            name = self.peek()
            if name is None or name in _UNARY or name in _BINARY or not name.isidentifier():
                raise FormatError("negation is only allowed on letters", at)
            self.take()
            if name not in self.alphabet:
                raise FormatError(f"unknown letter {name!r}", at)
            return NegLetter(name)
        if tok in _UNARY or tok in _BINARY or tok in (")", "&", "|"):
            raise FormatError(f"unexpected token {tok!r}", self.pos())
        at = self.pos()
        self.take()
        if tok not in self.alphabet:
            raise FormatError(f"unknown letter {tok!r}", at)
        return Letter(tok)


def parse_ltl(text: str, alphabet: Alphabet) -> LtlFormula:
    return _LtlParser(text, alphabet).parse()


def format_ltl(f: LtlFormula) -> str:
    if isinstance(f, Letter):
        return f.name
    if isinstance(f, NegLetter):
        return f"!{f.name}"
    if isinstance(f, Next):
        return f"X ({format_ltl(f.operand)})"
    if isinstance(f, Eventually):
        return f"F ({format_ltl(f.operand)})"
    if isinstance(f, Always):
        return f"G ({format_ltl(f.operand)})"
    if isinstance(f, Or):
        return f"({format_ltl(f.left)} | {format_ltl(f.right)})"
    if isinstance(f, And):
        return f"({format_ltl(f.left)} & {format_ltl(f.right)})"
    if isinstance(f, Until):
        return f"({format_ltl(f.left)} U {format_ltl(f.right)})"
    if isinstance(f, Release):
        return f"({format_ltl(f.left)} R {format_ltl(f.right)})"
    raise TypeError(f"not an LTL formula: {f!r}")


def subformulas(f: LtlFormula) -> list[LtlFormula]:
    """Distinct subformulas, children before parents."""
    seen = set()
    out = []

    def walk(g):
        if g in seen:
            return
        if isinstance(g, (Or, And, Until, Release)):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (Next, Eventually, Always)):
            walk(g.operand)
        seen.add(g)
        out.append(g)

    walk(f)
    return out


def negate(f: LtlFormula) -> LtlFormula:
    """NNF dual; test helper, not part of the surface language."""
    if isinstance(f, Letter):
        return NegLetter(f.name)
    if isinstance(f, NegLetter):
        return Letter(f.name)
    if isinstance(f, Or):
        return And(negate(f.left), negate(f.right))
    if isinstance(f, And):
        return Or(negate(f.left), negate(f.right))
    if isinstance(f, Next):
        return Next(negate(f.operand))
    if isinstance(f, Eventually):
        return Always(negate(f.operand))
    if isinstance(f, Always):
        return Eventually(negate(f.operand))
    if isinstance(f, Until):
        return Release(negate(f.left), negate(f.right))
    if isinstance(f, Release):
        return Until(negate(f.left), negate(f.right))
    raise TypeError(f"not an LTL formula: {f!r}")


def _compact(f: LtlFormula) -> str:
    if isinstance(f, Letter):
        return f.name
    if isinstance(f, NegLetter):
        return f"not_{f.name}"
    if isinstance(f, Next):
        return f"X_{_compact(f.operand)}"
    if isinstance(f, Eventually):
        return f"F_{_compact(f.operand)}"
    if isinstance(f, Always):
        return f"G_{_compact(f.operand)}"
    ops = {Or: "or", And: "and", Until: "U", Release: "R"}
    return f"{ops[type(f)]}__{_compact(f.left)}__{_compact(f.right)}"


def ltl_to_waa(phi: LtlFormula, alphabet: Alphabet) -> WeakAlternatingAutomaton:
    """One state per distinct subformula; the result is very weak.

    Eventually/until states are non-recurring, always/release states
    recurring; states that lie on no cycle are fixed to non-recurring.
    """
    subs = subformulas(phi)
    names = {}
    used = set()
    for g in subs:
        name = "q_" + _compact(g)
        while name in used:
            name += "_"
        used.add(name)
        names[g] = name

    cond = {}

    def build(g):
        c = cond.get(g)
        if c is not None:
            return c
        if isinstance(g, Letter):
            c = LetterSet(frozenset({g.name}))
        elif isinstance(g, NegLetter):
            c = LetterSet(frozenset(alphabet.letters) - {g.name})
        elif isinstance(g, Or):
            c = COr(build(g.left), build(g.right))
        elif isinstance(g, And):
            c = CAnd(build(g.left), build(g.right))
        elif isinstance(g, Next):
            c = NextState(names[g.operand])
        elif isinstance(g, Eventually):
            c = COr(build(g.operand), NextState(names[g]))
        elif isinstance(g, Always):
            c = CAnd(build(g.operand), NextState(names[g]))
        elif isinstance(g, Until):
            c = COr(build(g.right), CAnd(build(g.left), NextState(names[g])))
        elif isinstance(g, Release):
            c = CAnd(build(g.right), COr(build(g.left), NextState(names[g])))
        else:
            raise TypeError(f"not an LTL formula: {g!r}")
        cond[g] = c
        return c

    delta = {names[g]: build(g) for g in subs}
    recurring = {names[g] for g in subs if isinstance(g, (Always, Release))}
    return WeakAlternatingAutomaton(
        alphabet, names.values(), delta, recurring, initial={names[phi]}
    )


def ltl_eval_lasso(phi: LtlFormula, w: LassoWord, i: int) -> bool:
    """Direct semantics on the lasso quotient; non-strict F/G/U/R, strict X."""
    if not 0 <= i < w.positions:
        raise ValueError(f"position {i} outside quotient range")
    return ltl_truth_vector(phi, w)[i]


def ltl_truth_vector(phi: LtlFormula, w: LassoWord) -> list[bool]:
    """Truth of phi at every quotient position."""
    npos = w.positions
    cache = {}

    def vec(f):
        v = cache.get(f)
        if v is not None:
            return v
        if isinstance(f, Letter):
            v = [w.letter(i) == f.name for i in range(npos)]
        elif isinstance(f, NegLetter):
            v = [w.letter(i) != f.name for i in range(npos)]
        elif isinstance(f, Or):
            a, b = vec(f.left), vec(f.right)
            v = [x or y for x, y in zip(a, b)]
        elif isinstance(f, And):
            a, b = vec(f.left), vec(f.right)
            v = [x and y for x, y in zip(a, b)]
        elif isinstance(f, Next):
            a = vec(f.operand)
            v = [a[w.succ(i)] for i in range(npos)]
        elif isinstance(f, (Eventually, Always, Until, Release)):
            v = _fixpoint_vector(f, vec, w)
        else:
            raise TypeError(f"not an LTL formula: {f!r}")
        cache[f] = v
        return v

    return vec(phi)


def _fixpoint_vector(f, vec, w):
    npos = w.positions
    if isinstance(f, Eventually):
        a = vec(f.operand)
        cur = [False] * npos
        step = lambda i: a[i] or cur[w.succ(i)]
    elif isinstance(f, Always):
        a = vec(f.operand)
        cur = [True] * npos
        step = lambda i: a[i] and cur[w.succ(i)]
    elif isinstance(f, Until):
        a, b = vec(f.left), vec(f.right)
        cur = [False] * npos
        step = lambda i: b[i] or (a[i] and cur[w.succ(i)])
    else:  # Release
        a, b = vec(f.left), vec(f.right)
        cur = [True] * npos
        step = lambda i: b[i] and (a[i] or cur[w.succ(i)])
    changed = True
    while changed:
        changed = False
        for i in range(npos):
            val = step(i)
            if val != cur[i]:
                cur[i] = val
                changed = True
    return cur


def random_ltl(rng, alphabet: Alphabet, size: int) -> LtlFormula:
    """Random NNF formula with at most ``size`` operator/letter nodes."""
    letters = list(alphabet.letters)
    if size <= 1:
        name = rng.choice(letters)
        return rng.choice([Letter(name), NegLetter(name)])
    # binary nodes need at least 3 nodes of budget (node + two leaves)
    kinds = ["X", "F", "G", "U", "R", "&", "|"] if size >= 3 else ["X", "F", "G"]
    kind = rng.choice(kinds)
    if kind in ("X", "F", "G"):
        sub = random_ltl(rng, alphabet, size - 1)
        return {"X": Next, "F": Eventually, "G": Always}[kind](sub)
    left_size = rng.randint(1, size - 2)
    left = random_ltl(rng, alphabet, left_size)
    right = random_ltl(rng, alphabet, size - 1 - left_size)
    return {"U": Until, "R": Release, "&": And, "|": Or}[kind](left, right)
