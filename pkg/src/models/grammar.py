from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .words import OrderedAlphabet

Rhs = Tuple[str, ...]

EPSILON_TOKEN = "_eps"


class Grammar(BaseModel):
    """A context-free grammar G = (N, Σ, P, S) over an ordered alphabet.

    `productions` maps each nonterminal to its right-hand sides; an empty
    tuple is the empty right-hand side. The flags record which normal forms
    the grammar is known to satisfy.
    """

    model_config = ConfigDict(frozen=True)

    nonterminals: Tuple[str, ...]
    alphabet: OrderedAlphabet = Field(default_factory=OrderedAlphabet.binary)
    productions: Dict[str, Tuple[Rhs, ...]]
    start: str
    epsilon_in_language: bool = False
    gnf: bool = False
    reduced: bool = False

    @model_validator(mode="after")
    def _check_symbols(self) -> "Grammar":
        declared = set(self.nonterminals)
        if len(declared) != len(self.nonterminals):
            raise ValueError("duplicate nonterminal declaration")
        if self.start not in declared:
            raise ValueError(f"start symbol {self.start} is not declared")
        clash = declared.intersection(self.alphabet.letters)
        if clash:
            raise ValueError(f"symbols used both as terminal and nonterminal: {sorted(clash)}")
        for lhs, alternatives in self.productions.items():
            if lhs not in declared:
                raise ValueError(f"productions for undeclared nonterminal {lhs}")
            for rhs in alternatives:
                for symbol in rhs:
                    if symbol not in declared and symbol not in self.alphabet:
                        raise ValueError(f"undeclared symbol {symbol!r} in a rule for {lhs}")
        if self.gnf and not self.is_gnf_form():
            raise ValueError("grammar is flagged GNF but has a non-GNF rule")
        return self

    @classmethod
    def build(
        cls,
        start: str,
        productions: Mapping[str, Iterable[Iterable[str]]],
        alphabet: OrderedAlphabet = None,
        **flags: bool,
    ) -> "Grammar":
        """Assemble a grammar, declaring every non-letter symbol it mentions."""
        alphabet = alphabet or OrderedAlphabet.binary()
        order: List[str] = [start]
        rules: Dict[str, Tuple[Rhs, ...]] = {}
        for lhs, alternatives in productions.items():
            if lhs not in order:
                order.append(lhs)
            unique: Dict[Rhs, None] = {}
            for rhs in alternatives:
                unique[tuple(rhs)] = None
            rules[lhs] = tuple(unique)
        for alternatives in rules.values():
            for rhs in alternatives:
                for symbol in rhs:
                    if symbol not in alphabet and symbol not in order:
                        order.append(symbol)
        return cls(
            nonterminals=tuple(order),
            alphabet=alphabet,
            productions=rules,
            start=start,
            **flags,
        )

    def alternatives(self, nonterminal: str) -> Tuple[Rhs, ...]:
        return self.productions.get(nonterminal, ())

    def rules(self) -> Iterator[Tuple[str, Rhs]]:
        for lhs in self.nonterminals:
            for rhs in self.alternatives(lhs):
                yield lhs, rhs

    def is_terminal(self, symbol: str) -> bool:
        return symbol in self.alphabet

    def is_nonterminal(self, symbol: str) -> bool:
        return symbol in self.productions or symbol in self.nonterminals

    def is_gnf_form(self) -> bool:
        for _, rhs in self.rules():
            if not rhs or not self.is_terminal(rhs[0]):
                return False
            if any(self.is_terminal(symbol) for symbol in rhs[1:]):
                return False
        return True

    def is_right_linear(self) -> bool:
        return all(
            not any(self.is_nonterminal(symbol) for symbol in rhs[:-1]) for _, rhs in self.rules()
        )

    def rule_count(self) -> int:
        return sum(len(alternatives) for alternatives in self.productions.values())
