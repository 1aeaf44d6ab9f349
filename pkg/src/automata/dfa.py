"""Complete DFAs over 0 < 1 and the constructions the analyses need."""

from collections import deque
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
)

import networkx as nx

from ..errors import NotRightLinearError
from ..grammar.transform import binary_encode_grammar
from ..models.base import InclusionResult
from ..models.grammar import Grammar

LETTERS = ("0", "1")

State = Hashable


def crawl(
    initial: State,
    accepting: Callable[[State], bool],
    follow: Callable[[State, str], State],
) -> Tuple["Dfa", List[State]]:
    """Explore `follow` breadth-first from `initial` and number states in visit order."""
    seen: Dict[State, int] = {initial: 0}
    order: List[State] = [initial]
    transitions: List[Tuple[int, int]] = []
    final: Set[int] = set()
    i = 0
    while i < len(order):
        state = order[i]
        if accepting(state):
            final.add(i)
        targets = []
        for letter in LETTERS:
            nxt = follow(state, letter)
            if nxt not in seen:
                seen[nxt] = len(order)
                order.append(nxt)
            targets.append(seen[nxt])
        transitions.append((targets[0], targets[1]))
        i += 1
    return Dfa(transitions, 0, final), order


class Dfa:
    """A complete deterministic automaton; state q reads letter b into transitions[q][b]."""

    def __init__(
        self,
        transitions: Sequence[Tuple[int, int]],
        initial: int = 0,
        accepting: Iterable[int] = (),
    ):
        self.transitions: Tuple[Tuple[int, int], ...] = tuple(
            (int(t0), int(t1)) for t0, t1 in transitions
        )
        self.initial = initial
        self.accepting: FrozenSet[int] = frozenset(accepting)
        n = len(self.transitions)
        if not 0 <= initial < n:
            raise ValueError(f"initial state {initial} out of range")
        for q, pair in enumerate(self.transitions):
            if not all(0 <= t < n for t in pair):
                raise ValueError(f"state {q} has a transition out of range")
        if not all(0 <= q < n for q in self.accepting):
            raise ValueError("accepting state out of range")
        self.live: FrozenSet[int] = self._live_states()

    def _live_states(self) -> FrozenSet[int]:
        preds: Dict[int, List[int]] = {q: [] for q in self.states}
        for q, pair in enumerate(self.transitions):
            for t in pair:
                preds[t].append(q)
        live = set(self.accepting)
        queue = deque(self.accepting)
        while queue:
            for p in preds[queue.popleft()]:
                if p not in live:
                    live.add(p)
                    queue.append(p)
        return frozenset(live)

    @property
    def states(self) -> range:
        return range(len(self.transitions))

    @property
    def size(self) -> int:
        return len(self.transitions)

    def step(self, state: int, letter: str) -> int:
        return self.transitions[state][LETTERS.index(letter)]

    def run(self, word: str, state: Optional[int] = None) -> int:
        q = self.initial if state is None else state
        for letter in word:
            q = self.step(q, letter)
        return q

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.accepting

    @property
    def is_empty(self) -> bool:
        return self.initial not in self.live

    def graph(self, states: Optional[Iterable[int]] = None) -> nx.DiGraph:
        """Transition graph restricted to `states` (default: live states)."""
        keep = set(self.live if states is None else states)
        graph = nx.DiGraph()
        graph.add_nodes_from(keep)
        for q in keep:
            for t in self.transitions[q]:
                if t in keep:
                    graph.add_edge(q, t)
        return graph

    def infinite_states(self) -> Set[int]:
        """Live states with an infinite residual language."""
        graph = self.graph()
        on_cycle = cycle_nodes(graph)
        return {q for q in graph if on_cycle & (nx.descendants(graph, q) | {q})}

    def trim(self) -> "Dfa":
        """Keep reachable live states, send everything else to one dead state."""

        def follow(state: Optional[int], letter: str) -> Optional[int]:
            if state is None:
                return None
            target = self.step(state, letter)
            return target if target in self.live else None

        start = self.initial if self.initial in self.live else None
        dfa, _ = crawl(start, lambda q: q is not None and q in self.accepting, follow)
        return dfa

    def shortest_words(self, source: Optional[int] = None) -> Dict[int, str]:
        """Lex-least shortest word leading from `source` to each reachable state."""
        start = self.initial if source is None else source
        words = {start: ""}
        queue = deque([start])
        while queue:
            q = queue.popleft()
            for letter, t in zip(LETTERS, self.transitions[q]):
                if t not in words:
                    words[t] = words[q] + letter
                    queue.append(t)
        return words

    def shortest_path(self, source: int, target: int, within: Optional[Set[int]] = None) -> str:
        """Lex-least shortest word from source to target, staying inside `within`."""
        if source == target:
            return ""
        words = {source: ""}
        queue = deque([source])
        while queue:
            q = queue.popleft()
            for letter, t in zip(LETTERS, self.transitions[q]):
                if t in words or (within is not None and t not in within):
                    continue
                words[t] = words[q] + letter
                if t == target:
                    return words[t]
                queue.append(t)
        raise ValueError(f"state {target} is unreachable from {source}")

    def shortest_accepted(self, source: int) -> str:
        if source not in self.live:
            raise ValueError(f"state {source} accepts nothing")
        words = self.shortest_words(source)
        return min((words[q] for q in self.accepting if q in words), key=lambda w: (len(w), w))

    def words(self, max_len: int, state: Optional[int] = None) -> List[str]:
        """Accepted words of length <= max_len, in lexicographic order."""
        found: List[str] = []
        stack = [(self.initial if state is None else state, "")]
        while stack:
            q, word = stack.pop()
            if q not in self.live:
                continue
            if q in self.accepting:
                found.append(word)
            if len(word) < max_len:
                stack.append((self.transitions[q][1], word + "1"))
                stack.append((self.transitions[q][0], word + "0"))
        return found

    def union_product(self, other: "Dfa") -> Tuple["Dfa", List[Tuple[int, int]]]:
        """Product automaton for L(self) ∪ L(other) with the state pairs it was built from."""
        dfa, pairs = crawl(
            (self.initial, other.initial),
            lambda pq: pq[0] in self.accepting or pq[1] in other.accepting,
            lambda pq, b: (self.step(pq[0], b), other.step(pq[1], b)),
        )
        return dfa, list(pairs)

    @classmethod
    def universal(cls) -> "Dfa":
        return cls([(0, 0)], 0, [0])

    @classmethod
    def empty(cls) -> "Dfa":
        return cls([(0, 0)], 0, [])

    @classmethod
    def from_words(cls, words: Iterable[str]) -> "Dfa":
        """Trie automaton for a finite language."""
        members = set(words)
        prefixes = {w[:i] for w in members for i in range(len(w) + 1)}

        def follow(prefix: Optional[str], letter: str) -> Optional[str]:
            if prefix is None or prefix + letter not in prefixes:
                return None
            return prefix + letter

        return crawl("" if prefixes else None, lambda p: p in members, follow)[0]

    @classmethod
    def power_prefix(cls, v0: str, v1: str) -> "Dfa":
        """Automaton for v0* v1, where v1 is a proper prefix of v0."""
        if not v0:
            return cls.from_words([v1])
        if not (len(v1) < len(v0) and v0.startswith(v1)):
            raise ValueError(f"{v1!r} is not a proper prefix of {v0!r}")
        n = len(v0)

        def follow(i: Optional[int], letter: str) -> Optional[int]:
            if i is None or v0[i] != letter:
                return None
            return (i + 1) % n

        return crawl(0, lambda i: i == len(v1), follow)[0]

    def to_dict(self) -> Dict[str, object]:
        return {
            "states": self.size,
            "initial": self.initial,
            "accepting": sorted(self.accepting),
            "live": sorted(self.live),
            "edges": [[q, b, t] for q in self.states for b, t in zip(LETTERS, self.transitions[q])],
        }

    def __repr__(self) -> str:
        accepting = sorted(self.accepting)
        return f"Dfa(states={self.size}, initial={self.initial}, accepting={accepting})"


def cycle_nodes(graph: nx.DiGraph) -> Set[int]:
    nodes: Set[int] = set()
    for component in nx.strongly_connected_components(graph):
        if len(component) > 1 or any(graph.has_edge(q, q) for q in component):
            nodes.update(component)
    return nodes


def _split_right_linear(
    grammar: Grammar, rhs: Tuple[str, ...]
) -> Tuple[Tuple[str, ...], Optional[str]]:
    if rhs and not grammar.is_terminal(rhs[-1]):
        body, tail = rhs[:-1], rhs[-1]
    else:
        body, tail = rhs, None
    if any(not grammar.is_terminal(symbol) for symbol in body):
        raise NotRightLinearError(f"rule with right side {' '.join(rhs)} is not right-linear")
    return body, tail


def right_linear_to_dfa(grammar: Grammar) -> Dfa:
    """Determinize a right-linear grammar through an ε-NFA; the result is trimmed."""
    grammar = binary_encode_grammar(grammar)
    final = ("final",)
    initial: List[Hashable] = [grammar.start]
    if grammar.epsilon_in_language:
        initial.append(final)
    edges: Dict[Hashable, List[Tuple[Optional[str], Hashable]]] = {}

    for lhs in grammar.nonterminals:
        edges.setdefault(lhs, [])
        for index, rhs in enumerate(grammar.alternatives(lhs)):
            body, tail = _split_right_linear(grammar, rhs)
            current: Hashable = lhs
            for position, letter in enumerate(body):
                nxt: Hashable = (lhs, index, position + 1)
                if position == len(body) - 1:
                    nxt = tail if tail is not None else final
                edges.setdefault(current, []).append((letter, nxt))
                current = nxt
            if not body:
                edges[lhs].append((None, tail if tail is not None else final))

    def closure(states: Iterable[Hashable]) -> FrozenSet[Hashable]:
        found = set(states)
        stack = list(found)
        while stack:
            for label, target in edges.get(stack.pop(), []):
                if label is None and target not in found:
                    found.add(target)
                    stack.append(target)
        return frozenset(found)

    def follow(subset: FrozenSet[Hashable], letter: str) -> FrozenSet[Hashable]:
        return closure(
            target for state in subset for label, target in edges.get(state, []) if label == letter
        )

    dfa, _ = crawl(closure(initial), lambda subset: final in subset, follow)
    return dfa.trim()


def cfg_regular_inclusion(grammar: Grammar, dfa: Dfa) -> InclusionResult:
    """Decide L(G) ⊆ L(D); on failure report the shortest, then lex-least, word outside."""
    grammar = binary_encode_grammar(grammar)
    Best = Dict[int, Tuple[int, str]]

    def improve(table: Best, state: int, candidate: Tuple[int, str]) -> bool:
        if state not in table or candidate < table[state]:
            table[state] = candidate
            return True
        return False

    best: Dict[Tuple[str, int], Best] = {
        (n, p): {} for n in grammar.nonterminals for p in dfa.states
    }
    changed = True
    while changed:
        changed = False
        for lhs, rhs in grammar.rules():
            for p in dfa.states:
                current: Best = {p: (0, "")}
                for symbol in rhs:
                    following: Best = {}
                    for q, (length, word) in current.items():
                        if grammar.is_terminal(symbol):
                            improve(following, dfa.step(q, symbol), (length + 1, word + symbol))
                            continue
                        for r, (extra, tail) in best[(symbol, q)].items():
                            improve(following, r, (length + extra, word + tail))
                    current = following
                    if not current:
                        break
                for r, candidate in current.items():
                    changed |= improve(best[(lhs, p)], r, candidate)

    rejected = [
        candidate
        for r, candidate in best[(grammar.start, dfa.initial)].items()
        if r not in dfa.accepting
    ]
    if grammar.epsilon_in_language and not dfa.accepts(""):
        rejected.append((0, ""))
    if not rejected:
        return InclusionResult(holds=True)
    return InclusionResult(holds=False, counterexample=min(rejected)[1])


