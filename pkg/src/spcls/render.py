"""Graphviz DOT text for the property lattice and the closed-set diagram."""

from __future__ import annotations

from spcls.categorical import closed_set_lattice, functor_F_obj
from spcls.core import ClosureSpace, FiniteLattice, StatePropertySystem


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(lattice: FiniteLattice, graph: str) -> str:
    """Cover relation drawn bottom to top; nodes and edges in index order."""
    lines = [f"digraph {graph} {{", "  rankdir=BT;", "  node [shape=box];"]
    for name in lattice.names:
        lines.append(f"  {_quote(name)};")
    for lo, hi in lattice.covers():
        lines.append(f"  {_quote(lattice.names[lo])} -> {_quote(lattice.names[hi])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_dot(obj: StatePropertySystem | ClosureSpace) -> str:
    """The property lattice followed by the inclusion diagram of closed sets."""
    if isinstance(obj, StatePropertySystem):
        lattice = obj.lattice
        cs = functor_F_obj(obj)
    else:
        cs = obj
        lattice = closed_set_lattice(cs)
    closed = closed_set_lattice(cs)
    return hasse_dot(lattice, "lattice") + "\n" + hasse_dot(closed, "closed_sets")
