"""
Poset structure of Δn and Γn under inclusion of 1-bits.
Meet is bitwise AND; join is the least member above the bitwise OR.
"""
import logging
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Tuple, Union

import networkx as nx

from app.errors import LengthMismatchError
from app.schemas import JordanDedekindResult
from app.sets import DeltaSet, GammaSet, decompose, enumerate_delta, is_valid_correlation
from app.words import Correlation

logger = logging.getLogger(__name__)

CorrelationSet = Union[GammaSet, DeltaSet]


def _check_pair(t: Correlation, u: Correlation) -> None:
    if t.n != u.n:
        raise LengthMismatchError(f"correlation lengths differ: {t.n} vs {u.n}")
    decompose(t)
    decompose(u)


@lru_cache(maxsize=None)
def _member_codes(n: int) -> Tuple[int, ...]:
    return tuple(member.to_int() for member in enumerate_delta(n).members)


def meet(t: Correlation, u: Correlation) -> Correlation:
    _check_pair(t, u)
    result = t & u
    decompose(result)
    return result


def join(t: Correlation, u: Correlation) -> Correlation:
    """Intersection of every member of Δn containing t | u."""
    _check_pair(t, u)
    target = (t | u).to_int()
    n = t.n
    code = (1 << n) - 1
    for m in _member_codes(n):
        if m & target == target:
            code &= m
    return Correlation.from_int(code, n)


class HasseDiagram:
    """Covering graph of a correlation set; edges point from t to its covers."""

    def __init__(self, graph: nx.DiGraph, n: int):
        self.graph = graph
        self.n = n

    @property
    def nodes(self) -> List[str]:
        return sorted(self.graph.nodes)

    @property
    def edges(self) -> List[Tuple[str, str]]:
        return sorted(self.graph.edges)

    @property
    def bottom(self) -> Optional[str]:
        minimal = [v for v in self.nodes if self.graph.in_degree(v) == 0]
        return minimal[0] if len(minimal) == 1 else None

    @property
    def top(self) -> Optional[str]:
        maximal = [v for v in self.nodes if self.graph.out_degree(v) == 0]
        return maximal[0] if len(maximal) == 1 else None

    def gamma_nodes(self) -> List[str]:
        return [v for v in self.nodes if self.graph.nodes[v]["gamma"]]

    def to_adjacency(self) -> Dict[str, List[str]]:
        return {v: sorted(self.graph.successors(v)) for v in self.nodes}


def hasse(collection: CorrelationSet) -> HasseDiagram:
    """Transitive reduction of strict inclusion over the members of the set."""
    bits = sorted(collection.bit_strings())
    codes = {b: int(b, 2) if b else 0 for b in bits}
    order = nx.DiGraph()
    order.add_nodes_from(bits)
    for a, b in combinations(bits, 2):
        ca, cb = codes[a], codes[b]
        if ca & cb == ca:
            order.add_edge(a, b)
        elif ca & cb == cb:
            order.add_edge(b, a)
    reduced = nx.transitive_reduction(order)
    for b in bits:
        reduced.nodes[b]["gamma"] = b.startswith("1")
    logger.debug("[LATTICE] Hasse diagram of length %d: %d nodes, %d edges", collection.n, len(bits), reduced.number_of_edges())
    return HasseDiagram(reduced, collection.n)


def check_jordan_dedekind(diagram: HasseDiagram) -> JordanDedekindResult:
    """
    Every bottom-to-top path of the covering graph is a maximal chain, so the
    condition holds iff the shortest and longest such paths have equal length.
    """
    bottom, top = diagram.bottom, diagram.top
    if bottom is None or top is None:
        raise ValueError("Jordan-Dedekind check needs a unique bottom and top")
    shortest = nx.shortest_path(diagram.graph, bottom, top)
    longest = nx.dag_longest_path(diagram.graph)
    return JordanDedekindResult(
        holds=len(shortest) == len(longest),
        shortest_chain=shortest,
        longest_chain=longest,
    )


def export_dot(diagram: HasseDiagram, name: str = "correlations") -> str:
    """Graphviz text, nodes and edges in sorted order; Γ members filled green."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    for v in diagram.nodes:
        label = v or "ε"
        style = ', style=filled, fillcolor="palegreen"' if diagram.graph.nodes[v]["gamma"] else ""
        lines.append(f'  "{v}" [label="{label}"{style}];')
    for a, b in diagram.edges:
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def check_meet_closure(n: int, cap: Optional[int] = None) -> Tuple[bool, Optional[Tuple[str, str]]]:
    """Exhaustive check that Δn is closed under bitwise AND; returns a counterexample pair if not."""
    members = enumerate_delta(n, cap).members
    for a, b in combinations(members, 2):
        if not is_valid_correlation(a & b)[0]:
            logger.warning("[LATTICE] %s & %s leaves Δ%d", a.bits, b.bits, n)
            return False, (a.bits, b.bits)
    return True, None
