"""Scatteredness and Hausdorff-rank analysis of context-free grammars.

The decision works per strong component: a pumping word fixes a primitive
word u0, and every prefix language between two members of the component has
to fit inside some v0* v1 with v0 a rotation of u0 and v1 a proper prefix of v0.
"""

import logging
from collections import deque
from typing import Dict, List, Optional, Tuple

import networkx as nx

from ..automata.dfa import Dfa, cfg_regular_inclusion, cycle_nodes
from ..errors import InvalidMarkingError, PreconditionError, RankExpressionError
from ..grammar.structure import structure as grammar_structure
from ..grammar.transform import binary_encode_grammar, derives_epsilon, reduce_grammar, to_gnf
from ..models.base import (
    ComponentCertificate,
    MarkingCheck,
    MarkingCondition,
    MarkingTable,
    PairCertificate,
    RankBound,
    RankBoundReport,
    RankExpr,
    RankOp,
    ScatterFailure,
    ScatterReport,
    StructureReport,
    Verdict,
)
from ..models.grammar import Grammar, Rhs
from ..models.ordinal import ONE, ZERO, Ordinal, ord_add, ord_max, ord_omega_pow
from ..models.words import conjugate_align, primitive_root, rotations

logger = logging.getLogger(__name__)

MAX_MARKING_DEPTH = 16


def prepare_for_analysis(grammar: Grammar) -> Tuple[Optional[Grammar], bool]:
    """Binary-encode, reduce and convert to GNF; also report whether ε ∈ L(G)."""
    encoded = binary_encode_grammar(grammar)
    return to_gnf(encoded), derives_epsilon(encoded)


def _require_gnf(grammar: Grammar) -> None:
    if not grammar.is_gnf_form():
        raise PreconditionError("grammar must be in Greibach normal form")
    if not grammar.alphabet.is_binary:
        raise PreconditionError("grammar must be over the binary alphabet 0 < 1")


def _spine(nonterminal: str, target: str) -> str:
    return f"[{nonterminal}/{target}]"


def left_prefix_grammar(grammar: Grammar, source: str, target: str) -> Grammar:
    """Grammar for {w : source ⇒+ w target p for some p}."""
    _require_gnf(grammar)
    for name in (source, target):
        if name not in grammar.nonterminals:
            raise PreconditionError(f"{name} is not a nonterminal of the grammar")

    def spine_rules(lhs: str) -> List[Rhs]:
        rules = []
        for rhs in grammar.alternatives(lhs):
            for j in range(1, len(rhs)):
                rules.append(rhs[:j] + (_spine(rhs[j], target),))
        return rules

    start = f"{_spine(source, target)}+"
    productions: Dict[str, List[Rhs]] = {start: spine_rules(source)}
    for lhs in grammar.nonterminals:
        productions[_spine(lhs, target)] = spine_rules(lhs)
    productions[_spine(target, target)].append(())
    for lhs in grammar.nonterminals:
        productions[lhs] = list(grammar.alternatives(lhs))
    return Grammar.build(start, productions, grammar.alphabet)


def shortest_word(grammar: Grammar) -> Optional[str]:
    """Shortest, then lex-least, word of L(G); None for the empty language."""
    best: Dict[str, Tuple[int, str]] = {}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in grammar.rules():
            parts = []
            for symbol in rhs:
                if grammar.is_terminal(symbol):
                    parts.append(symbol)
                elif symbol in best:
                    parts.append(best[symbol][1])
                else:
                    break
            else:
                word = "".join(parts)
                if lhs not in best or (len(word), word) < best[lhs]:
                    best[lhs] = (len(word), word)
                    changed = True
    found = best.get(grammar.start)
    return None if found is None else found[1]


def _pair_certificate(
    prefixes: Optional[Grammar], component: List[str], source: str, target: str, u0: str
) -> Tuple[PairCertificate, Optional[ScatterFailure]]:
    if prefixes is None:
        return PairCertificate(source=source, target=target, vacuous=True), None
    hint = conjugate_align(u0, shortest_word(prefixes) or "")
    candidates = [(v0, v0[:cut]) for v0 in rotations(u0) for cut in range(len(v0))]
    candidates.sort(key=lambda pair: pair != hint)
    refuted: Optional[Tuple[str, str, str]] = None
    for v0, v1 in candidates:
        result = cfg_regular_inclusion(prefixes, Dfa.power_prefix(v0, v1))
        if result.holds:
            return PairCertificate(source=source, target=target, v0=v0, v1=v1), None
        if refuted is None:
            refuted = (result.counterexample or "", v0, v1)
    counterexample, v0, v1 = refuted or ("", u0, "")
    failure = ScatterFailure(
        component=component,
        source=source,
        target=target,
        counterexample=counterexample,
        v0=v0,
        v1=v1,
        reason=f"prefix language is not contained in v0* v1 for any rotation of {u0}",
    )
    return PairCertificate(source=source, target=target), failure


def check_scattered_cfg(grammar: Grammar) -> ScatterReport:
    """Decide whether (L(G), <lex) is scattered, for a reduced binary GNF grammar."""
    _require_gnf(grammar)
    reduced = grammar if grammar.reduced else reduce_grammar(grammar)
    if reduced is None:
        return ScatterReport(verdict=Verdict.SCATTERED)
    report = grammar_structure(reduced)
    certificates: List[ComponentCertificate] = []

    for component in report.recursive_components():
        witnesses: Dict[str, str] = {}
        for member in component:
            pumped = shortest_word(left_prefix_grammar(reduced, member, member))
            if pumped is None:
                raise AssertionError(f"recursive nonterminal {member} has no pumping word")
            witnesses[member] = pumped
        u0 = primitive_root(witnesses[component[0]])[0]
        certificate = ComponentCertificate(component=component, u0=u0, witnesses=witnesses)

        for member, pumped in witnesses.items():
            root = primitive_root(pumped)[0]
            if root not in rotations(u0):
                logger.info("%s pumps %s, not conjugate to %s", member, pumped, u0)
                failure = ScatterFailure(
                    component=component,
                    source=member,
                    target=member,
                    counterexample=pumped,
                    v0=u0,
                    v1="",
                    reason=f"pumping word of {member} is not a power of a conjugate of {u0}",
                )
                return ScatterReport(
                    verdict=Verdict.NOT_SCATTERED, certificates=certificates, failure=failure
                )

        for source in component:
            for target in component:
                prefixes = reduce_grammar(left_prefix_grammar(reduced, source, target))
                pair, failure = _pair_certificate(prefixes, component, source, target, u0)
                if failure is not None:
                    return ScatterReport(
                        verdict=Verdict.NOT_SCATTERED, certificates=certificates, failure=failure
                    )
                certificate.pairs.append(pair)
        certificates.append(certificate)

    return ScatterReport(verdict=Verdict.SCATTERED, certificates=certificates)


def rank_bound_cfg(
    grammar: Grammar,
    report: Optional[StructureReport] = None,
    scatter: Optional[ScatterReport] = None,
) -> RankBoundReport:
    """Per-nonterminal upper bounds on the Hausdorff rank, all below ω^ω.

    Recursive nonterminals of height h get ω^h + 1. Non-recursive ones combine
    their children's bounds along each production (rightmost child first) and
    take the maximum over alternatives, capped by the same ω^h + 1.
    """
    if scatter is not None and not scatter.scattered:
        raise PreconditionError("rank bounds need a scattered language")
    report = report or grammar_structure(grammar)
    bounds: Dict[str, Ordinal] = {}
    order = sorted(grammar.nonterminals, key=report.height_of)
    for nonterminal in order:
        height = report.height_of(nonterminal)
        cap = ord_add(ord_omega_pow(Ordinal.of(height)), ONE)
        if report.recursive[nonterminal]:
            bounds[nonterminal] = cap
            continue
        if height == 0:
            bounds[nonterminal] = ZERO
            continue
        best = ZERO
        for rhs in grammar.alternatives(nonterminal):
            total = ZERO
            for symbol in reversed(rhs):
                if not grammar.is_terminal(symbol):
                    total = ord_add(total, bounds[symbol])
            best = ord_max(best, total)
        bounds[nonterminal] = min(best, cap)
    return RankBoundReport(per_nonterminal=bounds, overall=bounds[grammar.start])


def rank_calculus(expr: RankExpr) -> RankBound:
    """Evaluate a rank expression; `tight` is False once an upper-bound rule is used."""
    if expr.op is RankOp.LEAF:
        if expr.rank is None or expr.operands:
            raise RankExpressionError("a leaf carries a rank and no operands")
        return RankBound(value=expr.rank, tight=True)
    if not expr.operands:
        raise RankExpressionError(f"{expr.op.value} needs operands")
    parts = [rank_calculus(operand) for operand in expr.operands]
    if expr.op in (RankOp.UNION, RankOp.SHUFFLE):
        return RankBound(
            value=ord_max(*(part.value for part in parts)),
            tight=all(part.tight for part in parts),
        )
    if expr.op is RankOp.CONCAT:
        total = ZERO
        for part in reversed(parts):
            total = ord_add(total, part.value)
        return RankBound(value=total, tight=len(parts) == 1 and parts[0].tight)
    if expr.op is RankOp.SUBST:
        if len(parts) != 2:
            raise RankExpressionError("SUBST takes the host rank and the substituted rank")
        host, substituted = parts
        return RankBound(value=ord_add(substituted.value, host.value), tight=False)
    raise RankExpressionError(f"unknown operator {expr.op}")


def _exact_value_violations(dfa: Dfa, values: Dict[int, Ordinal]) -> set:
    """States whose exact-value region unfolds to infinitely many paths."""
    bad = set()
    for level in {v for v in values.values() if v > 0}:
        same = {q for q, v in values.items() if v == level}
        region = dfa.graph(same)
        branching = {q for q in same if all(t in same for t in dfa.transitions[q])}
        on_cycle = cycle_nodes(region)
        tainted = {c for c in on_cycle if (nx.descendants(region, c) | {c}) & branching}
        for q in same:
            if (nx.descendants(region, q) | {q}) & tainted:
                bad.add(q)
    return bad


def validate_marking(dfa: Dfa, marking: MarkingTable, depth: int = 10) -> MarkingCheck:
    """Check the marking conditions on the tree of prefixes, breadth-first to `depth`."""
    if depth > MAX_MARKING_DEPTH:
        raise PreconditionError(f"marking depth is at most {MAX_MARKING_DEPTH}")
    values = {q: marking.value.get(q, ZERO) for q in dfa.states}
    infinite = dfa.infinite_states()
    violating = _exact_value_violations(dfa, values)

    queue = deque([("", dfa.initial)])
    while queue:
        node, q = queue.popleft()
        children = [values[t] for t in dfa.transitions[q]]
        if values[q].is_zero == (q in infinite):
            detail = "value 0 must mark exactly the finite subtrees"
            return MarkingCheck(valid=False, condition=MarkingCondition.I, node=node, detail=detail)
        if values[q] != ord_max(*children):
            detail = f"value {values[q]} differs from the children's maximum {ord_max(*children)}"
            return MarkingCheck(
                valid=False, condition=MarkingCondition.II, node=node, detail=detail
            )
        if q in violating:
            detail = f"nodes valued {values[q]} below here are not finitely many paths"
            return MarkingCheck(
                valid=False, condition=MarkingCondition.III, node=node, detail=detail
            )
        if q in dfa.live and len(node) < depth:
            queue.append((node + "0", dfa.transitions[q][0]))
            queue.append((node + "1", dfa.transitions[q][1]))
    return MarkingCheck(valid=True)


def merge_markings(
    first: Tuple[Dfa, MarkingTable],
    second: Tuple[Dfa, MarkingTable],
    depth: int = 10,
) -> Tuple[Dfa, MarkingTable]:
    """Pointwise maximum of two markings on the union product automaton."""
    for dfa, marking in (first, second):
        check = validate_marking(dfa, marking, depth)
        if not check.valid:
            raise InvalidMarkingError(
                f"condition {check.condition.value} fails at node {check.node!r}: {check.detail}"
            )
    (d0, m0), (d1, m1) = first, second
    product, pairs = d0.union_product(d1)
    values = {
        i: ord_max(m0.value.get(p, ZERO), m1.value.get(q, ZERO)) for i, (p, q) in enumerate(pairs)
    }
    return product, MarkingTable(value=values)
