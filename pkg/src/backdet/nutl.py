"""Vectorial linear-time fixed-point formulas (alternation-free fragment).

Formulas are built from letters, negated letters, variables, a next-step
operator, boolean connectives, and vectorial least/greatest fixed points
``mu_i (X0,...,Xr-1).(phi0; ...; phir-1)`` selecting component i.

Structurally identical subformulas are shared, so a variable may appear
bound by several fix nodes as long as they agree on the variable vector and
the bodies (they may differ in the selected component).  This keeps the
rank-formula tables compact: each vector level binds its variables once.

Cycles are detected on the dependence graph closed under an edge from each
variable occurrence to the body it selects in its binder; guardedness
requires a next-step vertex on every cycle, alternation-freeness forbids
cycles through variables of both a least and a greatest fixed point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .automata import Alphabet, And as CAnd, LetterSet, NextState, Or as COr, WeakAlternatingAutomaton
from .errors import FormatError, SemanticError
from .lasso import LassoWord

MU = "mu"
NU = "nu"


class NutlFormula:
    __slots__ = ()


@dataclass(frozen=True)
class Letter(NutlFormula):
    name: str


@dataclass(frozen=True)
class NegLetter(NutlFormula):
    name: str


@dataclass(frozen=True)
class Var(NutlFormula):
    name: str


@dataclass(frozen=True)
class Next(NutlFormula):
    operand: NutlFormula


@dataclass(frozen=True)
class Or(NutlFormula):
    left: NutlFormula
    right: NutlFormula


@dataclass(frozen=True)
class And(NutlFormula):
    left: NutlFormula
    right: NutlFormula


@dataclass(frozen=True)
class Fix(NutlFormula):
    kind: str
    index: int
    vars: tuple[str, ...]
    bodies: tuple[NutlFormula, ...]

    def __post_init__(self):
        if self.kind not in (MU, NU):
            raise ValueError(f"fix kind must be '{MU}' or '{NU}'")
        if len(self.vars) != len(self.bodies):
            raise ValueError("variable vector and body vector differ in length")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("fix variables must be distinct")
        if not 0 <= self.index < len(self.vars):
            raise ValueError(f"fix index {self.index} out of range")


_FIX_NAME = re.compile(r"^(mu|nu)_(\d+)$")


def _tokenize(text):
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "().;,|&!":
            out.append((ch, i))
            i += 1
            continue
        m = re.match(r"[A-Za-z_][A-Za-z0-9_]*", text[i:])
        if not m:
            raise FormatError(f"unexpected character {ch!r}", i)
        out.append((m.group(0), i))
        i += len(m.group(0))
    return out


class _NutlParser:
    def __init__(self, text, alphabet):
        self.tokens = _tokenize(text)
        self.i = 0
        self.alphabet = alphabet

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else -1

    def take(self, expect=None):
        tok = self.peek()
        if tok is None:
            raise FormatError("unexpected end of formula")
        if expect is not None and tok != expect:
            raise FormatError(f"expected {expect!r}, got {tok!r}", self.pos())
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
        f = self.parse_atom()
        while self.peek() == "&":
            self.take()
            f = And(f, self.parse_atom())
        return f

    def parse_atom(self):
        tok = self.peek()
        if tok is None:
            raise FormatError("unexpected end of formula")
        if tok == "(":
            self.take()
            f = self.parse_or()
            self.take(")")
            return f
        if tok == "!":
            self.take()
            name = self.take()
            if name not in self.alphabet:
                raise FormatError(f"negation is only allowed on letters, got {name!r}", self.pos())
            return NegLetter(name)
        if tok == "O":
            self.take()
            return Next(self.parse_atom())
        m = _FIX_NAME.match(tok)
        if m:
            return self.parse_fix(m.group(1), int(m.group(2)))
        self.take()
        if tok in self.alphabet:
            return Letter(tok)
        return Var(tok)

    def parse_fix(self, kind, index):
        self.take()
        self.take("(")
        names = [self.take()]
        while self.peek() == ",":
            self.take()
            names.append(self.take())
        self.take(")")
        self.take(".")
        self.take("(")
        bodies = [self.parse_or()]
        while self.peek() == ";":
            self.take()
            bodies.append(self.parse_or())
        self.take(")")
        for name in names:
            if name in self.alphabet:
                raise FormatError(f"variable {name!r} clashes with an alphabet letter")
        if index >= len(names):
            raise FormatError(f"fix index {index} out of range for {len(names)} variables")
        return Fix(kind, index, tuple(names), tuple(bodies))


def parse_nutl(text: str, alphabet: Alphabet) -> NutlFormula:
    return _NutlParser(text, alphabet).parse()


def format_nutl(f: NutlFormula) -> str:
    if isinstance(f, Letter):
        return f.name
    if isinstance(f, NegLetter):
        return f"!{f.name}"
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Next):
        return f"O ({format_nutl(f.operand)})"
    if isinstance(f, Or):
        return f"({format_nutl(f.left)} | {format_nutl(f.right)})"
    if isinstance(f, And):
        return f"({format_nutl(f.left)} & {format_nutl(f.right)})"
    if isinstance(f, Fix):
        bodies = "; ".join(format_nutl(b) for b in f.bodies)
        return f"{f.kind}_{f.index} ({','.join(f.vars)}).({bodies})"
    raise TypeError(f"not a nutl formula: {f!r}")


def _children(f):
    if isinstance(f, Next):
        return (f.operand,)
    if isinstance(f, (Or, And)):
        return (f.left, f.right)
    if isinstance(f, Fix):
        return f.bodies
    return ()


def subformulas(roots) -> list[NutlFormula]:
    """Distinct subformula nodes of one formula or a tuple, preorder."""
    if isinstance(roots, NutlFormula):
        roots = [roots]
    seen = set()
    out = []

    def walk(f):
        if f in seen:
            return
        seen.add(f)
        out.append(f)
        for c in _children(f):
            walk(c)

    for r in roots:
        walk(r)
    return out


def binder_table(roots) -> dict:
    """Variable name -> (fix node, component index) for every bound variable.

    A name bound by several fix nodes is accepted only when the binders
    agree on variable vector and bodies (structural sharing across the
    components of a vector fix).
    """
    table = {}
    for f in subformulas(roots):
        if not isinstance(f, Fix):
            continue
        for j, name in enumerate(f.vars):
            prior = table.get(name)
            if prior is not None:
                if (prior[0].vars, prior[0].bodies) != (f.vars, f.bodies):
                    raise SemanticError(f"variable {name!r} bound more than once")
            else:
                table[name] = (f, j)
    return table


def free_vars(f: NutlFormula, _cache=None) -> frozenset:
    if _cache is None:
        _cache = {}
    got = _cache.get(f)
    if got is not None:
        return got
    if isinstance(f, Var):
        result = frozenset({f.name})
    elif isinstance(f, Fix):
        result = frozenset().union(*(free_vars(b, _cache) for b in f.bodies)) - set(f.vars)
    else:
        result = frozenset().union(
            *(free_vars(c, _cache) for c in _children(f))
        ) if _children(f) else frozenset()
    _cache[f] = result
    return result


def is_closed(f: NutlFormula) -> bool:
    return not free_vars(f)


def dependence_graph(roots):
    """Subformula vertices and successor lists, closure edges included."""
    binders = binder_table(roots)
    nodes = subformulas(roots)
    succ = {}
    for f in nodes:
        if isinstance(f, Fix):
            succ[f] = [f.bodies[f.index]]
        elif isinstance(f, Var):
            if f.name not in binders:
                raise SemanticError(f"free variable {f.name!r}")
            fix, j = binders[f.name]
            succ[f] = [fix.bodies[j]]
        else:
            succ[f] = list(_children(f))
    return nodes, succ


def _sccs(nodes, succ):
    index = {}
    lowlink = {}
    on_stack = set()
    stack = []
    counter = [0]
    result = []

    def connect(root):
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
                result.append(comp)

    for v in nodes:
        if v not in index:
            connect(v)
    return result


def _cyclic(comp, succ):
    if len(comp) > 1:
        return True
    v = comp[0]
    return v in succ[v]


def _find_cycle(start, succ, allowed):
    """Some cycle through ``start`` inside the vertex set ``allowed``."""
    path = [start]
    on_path = {start}
    visited = set()

    def dfs(v):
        for w in succ[v]:
            if w not in allowed:
                continue
            if w == start:
                return True
            if w in on_path or w in visited:
                continue
            path.append(w)
            on_path.add(w)
            if dfs(w):
                return True
            on_path.remove(w)
            path.pop()
            visited.add(w)
        return False

    if dfs(start):
        return list(path)
    return None


def check_guarded(phi) -> list | None:
    """None if every dependence cycle passes a next-step vertex; otherwise
    a cycle avoiding them (as a list of subformulas)."""
    nodes, succ = dependence_graph(phi)
    allowed = {f for f in nodes if not isinstance(f, Next)}
    sub_succ = {f: [w for w in succ[f] if w in allowed] for f in allowed}
    for comp in _sccs(list(allowed), sub_succ):
        if _cyclic(comp, sub_succ):
            cycle = _find_cycle(comp[0], sub_succ, set(comp))
            return cycle or comp
    return None


def check_alternation_free(phi) -> list | None:
    """None if no cycle mixes least- and greatest-fixed-point recursion;
    otherwise a closed walk through variables of both kinds."""
    nodes, succ = dependence_graph(phi)
    binders = binder_table(phi)
    for comp in _sccs(nodes, succ):
        if not _cyclic(comp, succ):
            continue
        kinds = {}
        for f in comp:
            if isinstance(f, Var):
                kinds.setdefault(binders[f.name][0].kind, f)
            elif isinstance(f, Fix):
                kinds.setdefault(f.kind, f)
        if MU in kinds and NU in kinds:
            walk = _closed_walk(kinds[MU], kinds[NU], succ, set(comp))
            return walk or comp
    return None


def _closed_walk(a, b, succ, allowed):
    path_ab = _path(a, b, succ, allowed)
    path_ba = _path(b, a, succ, allowed)
    if path_ab is None or path_ba is None:
        return None
    return path_ab + path_ba[1:-1]


def _path(src, dst, succ, allowed):
    prev = {src: None}
    frontier = [src]
    while frontier:
        nxt = []
        for v in frontier:
            for w in succ[v]:
                if w in allowed and w not in prev:
                    prev[w] = v
                    nxt.append(w)
                    if w == dst:
                        frontier = []
                        nxt = []
                        break
        frontier = nxt
    if dst not in prev:
        return None
    out = []
    v = dst
    while v is not None:
        out.append(v)
        v = prev[v]
    return out[::-1]


def _require_translatable(roots):
    for f in roots:
        if not is_closed(f):
            raise SemanticError(f"formula is not closed: free {sorted(free_vars(f))}")
    cycle = check_guarded(list(roots))
    if cycle is not None:
        raise SemanticError(
            "formula is not guarded; cycle without a next-step operator: "
            + " -> ".join(format_nutl(f) for f in cycle[:6])
        )
    cycle = check_alternation_free(list(roots))
    if cycle is not None:
        raise SemanticError("formula has a fixed-point alternation on a cycle")


def nutl_to_waa(phi_tuple, alphabet: Alphabet | None = None) -> tuple[WeakAlternatingAutomaton, list[str]]:
    """Subformula-per-state translation.

    Returns the automaton and the list of state names corresponding to the
    tuple components; the automaton's initial set collects them.  When no
    alphabet is given it is inferred from the letters that occur.
    """
    roots = list(phi_tuple)
    _require_translatable(roots)
    nodes, succ = dependence_graph(roots)
    binders = binder_table(roots)
    names = {f: f"s{i}" for i, f in enumerate(nodes)}

    if alphabet is None:
        alphabet = _alphabet_of(roots)

    cond_cache = {}

    def delta_of(f):
        c = cond_cache.get(f)
        if c is not None:
            return c
        if isinstance(f, Letter):
            c = LetterSet(frozenset({f.name}))
        elif isinstance(f, NegLetter):
            c = LetterSet(frozenset(alphabet.letters) - {f.name})
        elif isinstance(f, Next):
            c = NextState(names[f.operand])
        elif isinstance(f, Or):
            c = COr(delta_of(f.left), delta_of(f.right))
        elif isinstance(f, And):
            c = CAnd(delta_of(f.left), delta_of(f.right))
        elif isinstance(f, Fix):
            c = delta_of(f.bodies[f.index])
        elif isinstance(f, Var):
            fix, j = binders[f.name]
            c = delta_of(fix.bodies[j])
        else:
            raise TypeError(f"not a nutl formula: {f!r}")
        cond_cache[f] = c
        return c

    delta = {names[f]: delta_of(f) for f in nodes}

    recurring = set()
    for comp in _sccs(nodes, succ):
        if not _cyclic(comp, succ):
            continue
        kinds = set()
        for f in comp:
            if isinstance(f, Var):
                kinds.add(binders[f.name][0].kind)
            elif isinstance(f, Fix):
                kinds.add(f.kind)
        if kinds == {NU}:
            recurring.update(names[f] for f in comp)

    initial_states = [names[f] for f in roots]
    waa = WeakAlternatingAutomaton(
        alphabet, names.values(), delta, recurring, initial=set(initial_states)
    )
    return waa, initial_states


def nutl_to_waa_optimized(phi_tuple, alphabet: Alphabet | None = None) -> tuple[WeakAlternatingAutomaton, list[str]]:
    """Variable-per-state translation.

    Applicable when every next-step operand denotes a fixed-point variable
    (directly or through a fix selecting one); then the automaton has
    exactly one state per fixed-point variable.
    """
    roots = list(phi_tuple)
    _require_translatable(roots)
    binders = binder_table(roots)
    if alphabet is None:
        alphabet = _alphabet_of(roots)

    def resolve(f):
        if isinstance(f, Var):
            return f.name
        if isinstance(f, Fix):
            return f.vars[f.index]
        raise SemanticError(
            "optimized translation inapplicable: next-step operand "
            f"{format_nutl(f)} does not denote a fixed-point variable; "
            "use the subformula translation instead"
        )

    cond_cache = {}

    def build(f):
        c = cond_cache.get(f)
        if c is not None:
            return c
        if isinstance(f, Letter):
            c = LetterSet(frozenset({f.name}))
        elif isinstance(f, NegLetter):
            c = LetterSet(frozenset(alphabet.letters) - {f.name})
        elif isinstance(f, Next):
            c = NextState(resolve(f.operand))
        elif isinstance(f, Or):
            c = COr(build(f.left), build(f.right))
        elif isinstance(f, And):
            c = CAnd(build(f.left), build(f.right))
        elif isinstance(f, Fix):
            c = build(f.bodies[f.index])
        elif isinstance(f, Var):
            fix, j = binders[f.name]
            c = build(fix.bodies[j])
        else:
            raise TypeError(f"not a nutl formula: {f!r}")
        cond_cache[f] = c
        return c

    delta = {}
    recurring = set()
    for name, (fix, j) in binders.items():
        delta[name] = build(fix.bodies[j])
        if fix.kind == NU:
            recurring.add(name)

    initial_states = [resolve(f) for f in roots]
    waa = WeakAlternatingAutomaton(
        alphabet, binders.keys(), delta, recurring, initial=set(initial_states)
    )
    return waa, initial_states


def _alphabet_of(roots) -> Alphabet:
    letters = set()
    for f in subformulas(roots):
        if isinstance(f, (Letter, NegLetter)):
            letters.add(f.name)
    if not letters:
        raise SemanticError("cannot infer an alphabet from a letter-free formula")
    return Alphabet(tuple(letters))


def dual_nutl(f: NutlFormula) -> NutlFormula:
    """De Morgan dual: complements the defined language; an involution."""
    if isinstance(f, Letter):
        return NegLetter(f.name)
    if isinstance(f, NegLetter):
        return Letter(f.name)
    if isinstance(f, Var):
        return f
    if isinstance(f, Next):
        return Next(dual_nutl(f.operand))
    if isinstance(f, Or):
        return And(dual_nutl(f.left), dual_nutl(f.right))
    if isinstance(f, And):
        return Or(dual_nutl(f.left), dual_nutl(f.right))
    if isinstance(f, Fix):
        kind = NU if f.kind == MU else MU
        return Fix(kind, f.index, f.vars, tuple(dual_nutl(b) for b in f.bodies))
    raise TypeError(f"not a nutl formula: {f!r}")


class _Evaluator:
    """Kleene evaluation of formulas as position sets on a lasso quotient."""

    def __init__(self, w: LassoWord):
        self.w = w
        self.all_positions = frozenset(range(w.positions))
        self._closed_cache = {}
        self._free_cache = {}

    def eval(self, f, env):
        if not free_vars(f, self._free_cache):
            got = self._closed_cache.get(f)
            if got is not None:
                return got
            result = self._eval(f, env)
            self._closed_cache[f] = result
            return result
        return self._eval(f, env)

    def _eval(self, f, env):
        w = self.w
        if isinstance(f, Letter):
            return frozenset(i for i in self.all_positions if w.letter(i) == f.name)
        if isinstance(f, NegLetter):
            return frozenset(i for i in self.all_positions if w.letter(i) != f.name)
        if isinstance(f, Var):
            try:
                return env[f.name]
            except KeyError:
                raise SemanticError(f"free variable {f.name!r}") from None
        if isinstance(f, Next):
            sub = self.eval(f.operand, env)
            return frozenset(i for i in self.all_positions if w.succ(i) in sub)
        if isinstance(f, Or):
            return self.eval(f.left, env) | self.eval(f.right, env)
        if isinstance(f, And):
            return self.eval(f.left, env) & self.eval(f.right, env)
        if isinstance(f, Fix):
            init = frozenset() if f.kind == MU else self.all_positions
            cur = {name: init for name in f.vars}
            limit = w.positions * len(f.vars) + 2
            for _ in range(limit):
                inner = dict(env)
                inner.update(cur)
                nxt = {
                    name: self.eval(body, inner)
                    for name, body in zip(f.vars, f.bodies)
                }
                if nxt == cur:
                    break
                cur = nxt
            else:
                raise AssertionError("fixed-point iteration failed to converge")
            return cur[f.vars[f.index]]
        raise TypeError(f"not a nutl formula: {f!r}")


def nutl_eval_lasso(phi_tuple, w: LassoWord) -> list[frozenset]:
    """Per-position truth sets: position i maps to the set of component
    indices whose formula holds on the suffix from i."""
    roots = list(phi_tuple)
    for f in roots:
        if not is_closed(f):
            raise SemanticError(f"formula is not closed: free {sorted(free_vars(f))}")
    ev = _Evaluator(w)
    truths = [ev.eval(f, {}) for f in roots]
    return [
        frozenset(j for j, positions in enumerate(truths) if i in positions)
        for i in range(w.positions)
    ]


def nutl_truth_set(phi: NutlFormula, w: LassoWord) -> frozenset:
    """Positions where a single closed formula holds."""
    return frozenset(
        i for i, s in enumerate(nutl_eval_lasso([phi], w)) if 0 in s
    )
