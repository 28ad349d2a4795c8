"""Graphviz rendering of automata and run structures."""

from __future__ import annotations

from .automata import WeakAlternatingAutomaton
from .construction import BackwardDetAutomaton
from .formats import format_condition
from .lasso import LassoWord, _functional_graph_cycles, _period_step


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def waa_to_dot(waa: WeakAlternatingAutomaton) -> str:
    """Transition graph with one cluster per SCC; recurring states are drawn
    with double circles, initial states with a bold border."""
    lines = ["digraph waa {", "  rankdir=LR;", "  node [shape=circle];"]
    for s, scc in enumerate(waa.sccs):
        polarity = "recurring" if scc.recurring else "nonrecurring"
        lines.append(f"  subgraph cluster_{s} {{")
        lines.append(f'    label="SCC {s} ({polarity})";')
        for q in scc.states:
            attrs = []
            if waa.is_recurring(q):
                attrs.append("shape=doublecircle")
            if waa.initial is not None and q in waa.initial:
                attrs.append("style=bold")
            attrs.append(f'label="{_dot_escape(q)}"')
            lines.append(f'    "{_dot_escape(q)}" [{", ".join(attrs)}];')
        lines.append("  }")
    for q in waa.states:
        label = _dot_escape(format_condition(waa.delta[q]))
        for q2 in sorted(waa.successors(q)):
            lines.append(f'  "{_dot_escape(q)}" -> "{_dot_escape(q2)}";')
        lines.append(f'  "{_dot_escape(q)}" [xlabel="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def period_graph_to_dot(bda: BackwardDetAutomaton, w: LassoWord, cap: int = 1 << 10) -> str:
    """Functional graph of the one-period backward composition, with the
    cycles highlighted.  Only usable when the state space fits the cap."""
    nodes = bda.enumerate_state_space(cap)

    def h(f):
        return _period_step(bda, w, f)[0]

    cycle_nodes = set()
    for cyc in _functional_graph_cycles(h, nodes):
        cycle_nodes.update(cyc)

    def node_id(f):
        return _dot_escape(bda.format_family(f))

    lines = ["digraph period {", "  node [shape=box, fontsize=10];"]
    for f in nodes:
        attrs = ""
        if f in cycle_nodes:
            attrs = ' [style=filled, fillcolor="#c6e2ff"]'
        lines.append(f'  "{node_id(f)}"{attrs};')
        lines.append(f'  "{node_id(f)}" -> "{node_id(h(f))}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
