"""Language-preserving grammar transformations.

`to_gnf` runs the pipeline reduce, ε-elimination, unit elimination,
reduce, left-recursion elimination by nonterminal ordering, head
substitution, and wrapping of non-head terminals. Transformations return
`None` when the language they would describe is empty.
"""

from itertools import product
from typing import Dict, Iterable, List, Optional, Set

import networkx as nx

from ..models.grammar import Grammar, Rhs
from ..models.words import BINARY, binary_encode

FRESH_PREFIX = "_G"


def _dedupe(alternatives: Iterable[Rhs]) -> List[Rhs]:
    return list(dict.fromkeys(alternatives))


def binary_encode_grammar(grammar: Grammar) -> Grammar:
    """Replace every terminal by its order-preserving code word over 0 < 1."""
    if grammar.alphabet.is_binary:
        return grammar
    codes = binary_encode(grammar.alphabet)
    productions = {}
    for lhs in grammar.nonterminals:
        encoded = []
        for rhs in grammar.alternatives(lhs):
            symbols: List[str] = []
            for symbol in rhs:
                symbols.extend(codes[symbol] if grammar.is_terminal(symbol) else [symbol])
            encoded.append(tuple(symbols))
        productions[lhs] = encoded
    return Grammar.build(
        grammar.start,
        productions,
        BINARY,
        epsilon_in_language=grammar.epsilon_in_language,
    )


def nullable_nonterminals(grammar: Grammar) -> Set[str]:
    nullable: Set[str] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in grammar.rules():
            if lhs not in nullable and all(symbol in nullable for symbol in rhs):
                nullable.add(lhs)
                changed = True
    return nullable


def derives_epsilon(grammar: Grammar) -> bool:
    return grammar.epsilon_in_language or grammar.start in nullable_nonterminals(grammar)


def productive_nonterminals(grammar: Grammar) -> Set[str]:
    productive: Set[str] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in grammar.rules():
            if lhs in productive:
                continue
            if all(grammar.is_terminal(symbol) or symbol in productive for symbol in rhs):
                productive.add(lhs)
                changed = True
    return productive


def reduce_grammar(grammar: Grammar) -> Optional[Grammar]:
    """Drop unproductive, then unreachable, nonterminals.

    Returns None when the start symbol derives no terminal word.
    """
    productive = productive_nonterminals(grammar)
    if grammar.start not in productive:
        return None

    def usable(rhs: Rhs) -> bool:
        return all(grammar.is_terminal(symbol) or symbol in productive for symbol in rhs)

    reachable = {grammar.start}
    frontier = [grammar.start]
    while frontier:
        lhs = frontier.pop()
        for rhs in grammar.alternatives(lhs):
            if not usable(rhs):
                continue
            for symbol in rhs:
                if not grammar.is_terminal(symbol) and symbol not in reachable:
                    reachable.add(symbol)
                    frontier.append(symbol)

    kept = tuple(n for n in grammar.nonterminals if n in reachable)
    return Grammar(
        nonterminals=kept,
        alphabet=grammar.alphabet,
        productions={n: tuple(rhs for rhs in grammar.alternatives(n) if usable(rhs)) for n in kept},
        start=grammar.start,
        epsilon_in_language=grammar.epsilon_in_language,
        gnf=grammar.gnf,
        reduced=True,
    )


def eliminate_epsilon(grammar: Grammar) -> Grammar:
    """Remove ε-rules; ε-membership of the start symbol moves into the flag."""
    nullable = nullable_nonterminals(grammar)
    productions: Dict[str, List[Rhs]] = {}
    for lhs in grammar.nonterminals:
        variants: List[Rhs] = []
        for rhs in grammar.alternatives(lhs):
            choices = [((symbol,), ()) if symbol in nullable else ((symbol,),) for symbol in rhs]
            for picked in product(*choices):
                expanded = tuple(symbol for part in picked for symbol in part)
                if expanded:
                    variants.append(expanded)
        productions[lhs] = _dedupe(variants)
    return Grammar.build(
        grammar.start,
        productions,
        grammar.alphabet,
        epsilon_in_language=grammar.epsilon_in_language or grammar.start in nullable,
    )


def eliminate_units(grammar: Grammar) -> Grammar:
    """Replace unit rules A -> B by B's non-unit alternatives."""

    def is_unit(rhs: Rhs) -> bool:
        return len(rhs) == 1 and not grammar.is_terminal(rhs[0])

    productions: Dict[str, List[Rhs]] = {}
    for lhs in grammar.nonterminals:
        closure = [lhs]
        for current in closure:
            for rhs in grammar.alternatives(current):
                if is_unit(rhs) and rhs[0] not in closure:
                    closure.append(rhs[0])
        productions[lhs] = _dedupe(
            rhs for member in closure for rhs in grammar.alternatives(member) if not is_unit(rhs)
        )
    return Grammar.build(
        grammar.start,
        productions,
        grammar.alphabet,
        epsilon_in_language=grammar.epsilon_in_language,
    )


class _GreibachBuilder:
    def __init__(self, grammar: Grammar):
        self.grammar = grammar
        self.order = list(grammar.nonterminals)
        self.prods: Dict[str, List[Rhs]] = {n: list(grammar.alternatives(n)) for n in self.order}
        self.tails: List[str] = []
        self.wrappers: Dict[str, str] = {}
        self.counter = 0

    def _fresh(self) -> str:
        while True:
            self.counter += 1
            name = f"{FRESH_PREFIX}{self.counter}"
            if name not in self.prods:
                return name

    def _substitute_heads(self, lhs: str, heads: Iterable[str]) -> None:
        targets = set(heads)
        expanded: List[Rhs] = []
        for rhs in self.prods[lhs]:
            if rhs[0] in targets:
                expanded.extend(beta + rhs[1:] for beta in self.prods[rhs[0]])
            else:
                expanded.append(rhs)
        self.prods[lhs] = _dedupe(expanded)

    def _remove_direct(self, lhs: str) -> None:
        recursive = [rhs[1:] for rhs in self.prods[lhs] if rhs[0] == lhs]
        if not recursive:
            return
        others = [rhs for rhs in self.prods[lhs] if rhs[0] != lhs]
        tail = self._fresh()
        self.tails.append(tail)
        self.prods[lhs] = _dedupe(others + [beta + (tail,) for beta in others])
        self.prods[tail] = _dedupe(recursive + [alpha + (tail,) for alpha in recursive])

    def _wrap(self, symbol: str) -> str:
        if not self.grammar.is_terminal(symbol):
            return symbol
        if symbol not in self.wrappers:
            self.wrappers[symbol] = self._fresh()
        return self.wrappers[symbol]

    def build(self) -> Optional[Grammar]:
        for i, lhs in enumerate(self.order):
            for earlier in self.order[:i]:
                self._substitute_heads(lhs, [earlier])
            self._remove_direct(lhs)

        for i in reversed(range(len(self.order))):
            self._substitute_heads(self.order[i], self.order[i + 1 :])
        for tail in self.tails:
            self._substitute_heads(tail, self.order)

        productions: Dict[str, List[Rhs]] = {}
        for lhs in self.order + self.tails:
            productions[lhs] = [
                (rhs[0],) + tuple(self._wrap(symbol) for symbol in rhs[1:])
                for rhs in self.prods[lhs]
            ]
        for terminal, name in self.wrappers.items():
            productions[name] = [(terminal,)]

        result = Grammar.build(
            self.grammar.start,
            productions,
            self.grammar.alphabet,
            epsilon_in_language=self.grammar.epsilon_in_language,
            gnf=True,
        )
        return reduce_grammar(result)


def to_gnf(grammar: Grammar) -> Optional[Grammar]:
    """Convert to an ε-free, reduced grammar in Greibach normal form.

    The result generates L(G) − {ε}; `epsilon_in_language` is set iff ε ∈ L(G).
    Returns None when L(G) − {ε} is empty.
    """
    reduced = reduce_grammar(grammar)
    if reduced is None:
        return None
    proper = reduce_grammar(eliminate_units(eliminate_epsilon(reduced)))
    if proper is None:
        return None
    if proper.is_gnf_form():
        return proper.model_copy(update={"gnf": True})
    return _GreibachBuilder(proper).build()


def left_recursive_nonterminals(grammar: Grammar) -> Set[str]:
    """Nonterminals X with X ⇒+ X α, found on the left-corner graph."""
    nullable = nullable_nonterminals(grammar)
    corners = nx.DiGraph()
    corners.add_nodes_from(grammar.nonterminals)
    for lhs, rhs in grammar.rules():
        for symbol in rhs:
            if grammar.is_terminal(symbol):
                break
            corners.add_edge(lhs, symbol)
            if symbol not in nullable:
                break
    found: Set[str] = set()
    for component in nx.strongly_connected_components(corners):
        if len(component) > 1 or any(corners.has_edge(n, n) for n in component):
            found.update(component)
    return found


def is_gnf(grammar: Grammar) -> bool:
    return grammar.is_gnf_form()


def is_right_linear(grammar: Grammar) -> bool:
    return grammar.is_right_linear()
