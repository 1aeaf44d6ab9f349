"""Exact order analysis of regular languages under the lexicographic order.

Every function expects a trimmed automaton (see `Dfa.trim`).
"""

import logging
from itertools import islice
from typing import Dict, Iterator, List, Set

import networkx as nx

from ..errors import NotWellOrderedError
from ..models.base import (
    DenseWitness,
    MarkingTable,
    RankResult,
    Verdict,
    WellOrderResult,
    WellOrderVerdict,
)
from ..models.ordinal import OMEGA, ZERO, Ordinal, ord_add, ord_mul
from .dfa import LETTERS, Dfa, cycle_nodes

logger = logging.getLogger(__name__)


def _children_in(dfa: Dfa, state: int, region: Set[int]) -> List[int]:
    return [t for t in dfa.transitions[state] if t in region]


def regular_scattered_rank(dfa: Dfa) -> RankResult:
    """Exact Hausdorff rank by peeling, or a dense witness when there is none.

    Round k assigns k to every unassigned state whose unassigned reach has no
    branching state (both letter children unassigned) after a cycle.
    """
    value: Dict[int, Ordinal] = {q: ZERO for q in dfa.states}
    unassigned = dfa.infinite_states()
    k = 0
    while unassigned:
        k += 1
        region = dfa.graph(unassigned)
        branching = {q for q in unassigned if len(_children_in(dfa, q, unassigned)) == 2}
        on_cycle = cycle_nodes(region)
        after_cycle: Dict[int, Set[int]] = {
            c: nx.descendants(region, c) | {c} for c in on_cycle
        }
        assigned = []
        for q in unassigned:
            reach = nx.descendants(region, q) | {q}
            if not any(after_cycle[c] & branching for c in reach & on_cycle):
                assigned.append(q)
        if not assigned:
            return RankResult(verdict=Verdict.NOT_SCATTERED, witness=_dense_witness(dfa, region))
        for q in assigned:
            value[q] = Ordinal.of(k)
        unassigned -= set(assigned)
        logger.debug("peeling round %d assigned %d states", k, len(assigned))

    return RankResult(
        verdict=Verdict.SCATTERED,
        rank=value[dfa.initial],
        marking=MarkingTable(value=value),
    )


def _dense_witness(dfa: Dfa, region: nx.DiGraph) -> DenseWitness:
    condensed = nx.condensation(region)
    members = condensed.graph["mapping"]
    bottoms = [c for c in condensed if condensed.out_degree(c) == 0]
    for component in sorted(bottoms):
        block = {q for q, c in members.items() if c == component}
        for v in sorted(block):
            c0, c1 = dfa.transitions[v]
            if c0 in block and c1 in block:
                x = "0" + dfa.shortest_path(c0, v, block)
                y = "1" + dfa.shortest_path(c1, v, block)
                access = dfa.shortest_words().get(v, "")
                return DenseWitness(state=v, access=access, x=x, y=y)
    raise AssertionError("stuck peeling without a branching bottom component")


def regular_well_ordered(dfa: Dfa) -> WellOrderResult:
    """Exact well-order test.

    L is not well-ordered iff some reachable state loops back to itself
    through its 0-child while its 1-child is live; then u v^n w descends with
    u the access word, v = 0·(return path) and w = 1·(shortest continuation).
    """
    graph = dfa.graph()
    component: Dict[int, int] = {}
    for index, members in enumerate(nx.strongly_connected_components(graph)):
        for q in members:
            component[q] = index
    access = dfa.shortest_words()
    candidates = sorted(
        (q for q in graph if q in access),
        key=lambda q: (len(access[q]), access[q]),
    )
    for s in candidates:
        zero, one = dfa.transitions[s]
        if zero in dfa.live and component[zero] == component[s] and one in dfa.live:
            block = {q for q in graph if component[q] == component[s]}
            v = "0" + dfa.shortest_path(zero, s, block)
            w = "1" + dfa.shortest_accepted(one)
            return WellOrderResult(verdict=WellOrderVerdict.DESCENDING, u=access[s], v=v, w=w)
    return WellOrderResult(verdict=WellOrderVerdict.WELL_ORDERED)


def _require_well_ordered(dfa: Dfa) -> None:
    result = regular_well_ordered(dfa)
    if not result.well_ordered:
        raise NotWellOrderedError(
            f"language is not well-ordered: {result.u}({result.v})^n{result.w} descends"
        )


def regular_order_type(dfa: Dfa) -> Ordinal:
    """Least solution of ot(q) = [q accepting] + ot(q·0) + ot(q·1) over live states."""
    _require_well_ordered(dfa)
    graph = dfa.graph()
    condensed = nx.condensation(graph)
    members: Dict[int, List[int]] = {}
    for q, c in condensed.graph["mapping"].items():
        members.setdefault(c, []).append(q)

    ot: Dict[int, Ordinal] = {}

    def value(q: int) -> Ordinal:
        return ot.get(q, ZERO) if q in dfa.live else ZERO

    def accept(q: int) -> Ordinal:
        return Ordinal.of(1) if q in dfa.accepting else ZERO

    for c in reversed(list(nx.topological_sort(condensed))):
        block = members[c]
        if len(block) == 1 and not graph.has_edge(block[0], block[0]):
            q = block[0]
            zero, one = dfa.transitions[q]
            ot[q] = ord_add(ord_add(accept(q), value(zero)), value(one))
            continue
        cycle = _simple_cycle(dfa, set(block))
        pieces = []
        for q in cycle:
            zero, one = dfa.transitions[q]
            if one in block:
                pieces.append(ord_add(accept(q), value(zero)))
            else:
                pieces.append(accept(q))
        for i, q in enumerate(cycle):
            period = ZERO
            for piece in pieces[i:] + pieces[:i]:
                period = ord_add(period, piece)
            ot[q] = ord_mul(period, OMEGA)
    return value(dfa.initial)


def _simple_cycle(dfa: Dfa, block: Set[int]) -> List[int]:
    start = min(block)
    cycle = [start]
    while True:
        inside = [t for t in dfa.transitions[cycle[-1]] if t in block]
        if len(inside) != 1:
            raise NotWellOrderedError("a strong component branches inside itself")
        if inside[0] == start:
            break
        cycle.append(inside[0])
    if len(cycle) != len(block):
        raise NotWellOrderedError("a strong component is not a simple cycle")
    return cycle


def lex_members(dfa: Dfa) -> Iterator[str]:
    """Members of a well-ordered L(D) in <lex order, produced lazily."""
    stack = [(dfa.initial, "")]
    while stack:
        q, word = stack.pop()
        if q not in dfa.live:
            continue
        if q in dfa.accepting:
            yield word
        stack.append((dfa.transitions[q][1], word + LETTERS[1]))
        stack.append((dfa.transitions[q][0], word + LETTERS[0]))


def lex_prefix(dfa: Dfa, n: int) -> List[str]:
    """The first n members of a well-ordered L(D) in <lex order."""
    _require_well_ordered(dfa)
    return list(islice(lex_members(dfa), n))
