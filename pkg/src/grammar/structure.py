from typing import Dict, List

import networkx as nx

from ..models.base import StructureReport
from ..models.grammar import Grammar


def derives_graph(grammar: Grammar) -> nx.DiGraph:
    """One-step derives relation: X -> Y when Y occurs on a right side of X."""
    graph = nx.DiGraph()
    graph.add_nodes_from(grammar.nonterminals)
    for lhs, rhs in grammar.rules():
        for symbol in rhs:
            if not grammar.is_terminal(symbol):
                graph.add_edge(lhs, symbol)
    return graph


def structure(grammar: Grammar) -> StructureReport:
    """Strong components, their order, heights and recursive nonterminals.

    Height counts the longest strict chain of components reachable from a
    component, so components deriving no other component have height 0.
    """
    graph = derives_graph(grammar)
    position = {n: i for i, n in enumerate(grammar.nonterminals)}
    components: List[List[str]] = sorted(
        (sorted(c, key=position.__getitem__) for c in nx.strongly_connected_components(graph)),
        key=lambda c: position[c[0]],
    )
    component_of: Dict[str, int] = {n: i for i, c in enumerate(components) for n in c}

    dag = nx.condensation(graph, scc=[set(c) for c in components])
    height = [0] * len(components)
    for node in reversed(list(nx.topological_sort(dag))):
        height[node] = max((height[child] + 1 for child in dag.successors(node)), default=0)

    order = sorted((i, j) for i in dag.nodes for j in nx.descendants(dag, i))
    recursive = {
        n: len(components[component_of[n]]) > 1 or graph.has_edge(n, n)
        for n in grammar.nonterminals
    }
    return StructureReport(
        components=components,
        order=order,
        height=height,
        component_of=component_of,
        recursive=recursive,
    )
