"""Grammars with a prescribed well-ordered order type.

Every ordinal 0 < α < ω^(ω^ω) is realized. Terms ω^β·c of the Cantor
normal form are built from β's own terms, repeated c times and joined
largest-first; below ω^ω the emitted grammar is right-linear.
"""

from itertools import islice
from typing import Dict, Iterator, List, Optional, Set, Tuple

from ..errors import OrdinalRangeError
from ..grammar.transform import reduce_grammar
from ..models.certificate import (
    Certificate,
    CertKind,
    fin,
    omega,
    omega_iter,
    product,
    sum_of,
)
from ..models.grammar import Grammar, Rhs
from ..models.ordinal import Ordinal
from ..models.words import sort_words

BOUND_TEXT = "w^(w^w)"
MAX_ENUMERATE = 100_000


def check_synthesizable(alpha: Ordinal) -> None:
    if alpha.is_zero:
        raise OrdinalRangeError("the empty language has order type 0; ask for at least 1")
    for exponent, _ in alpha.terms:
        if any(not inner.is_finite for inner, _ in exponent.terms):
            raise OrdinalRangeError(
                f"{alpha} is not below {BOUND_TEXT}; context-free order types stop there"
            )


def _power_tower(k: int) -> Certificate:
    """Type ω^(ω^k)."""
    node = omega()
    for _ in range(k):
        node = omega_iter(node)
    return node


def _omega_power(beta: Ordinal) -> Certificate:
    """Type ω^β for β < ω^ω, one factor per unit of β's CNF."""
    if beta.is_zero:
        return fin(1)
    factors = [
        _power_tower(exponent.to_int()) for exponent, count in beta.terms for _ in range(count)
    ]
    node = factors[-1]
    for factor in reversed(factors[:-1]):
        node = product(node, factor)
    return node


def synth_certificate(alpha: Ordinal) -> Certificate:
    check_synthesizable(alpha)
    terms: List[Certificate] = []
    for exponent, coefficient in alpha.terms:
        if exponent.is_zero:
            terms.append(fin(coefficient))
            continue
        power = _omega_power(exponent)
        terms.append(power if coefficient == 1 else product(fin(coefficient), power))
    node = terms[-1]
    for term in reversed(terms[:-1]):
        node = sum_of(term, node)
    return node


class _Emitter:
    def __init__(self) -> None:
        self.rules: Dict[str, List[Rhs]] = {}
        self.memo: Dict[Tuple[str, Optional[str]], str] = {}

    def _new(self) -> str:
        name = f"_N{len(self.rules)}"
        self.rules[name] = []
        return name

    def emit(self, node: Certificate, cont: Optional[str]) -> str:
        """A nonterminal for L(node)·L(cont); cont None stands for {ε}."""
        key = (node.model_dump_json(), cont)
        if key in self.memo:
            return self.memo[key]
        tail: Rhs = (cont,) if cont else ()
        if node.kind is CertKind.PROD:
            first, second = node.children
            name = self.emit(first, self.emit(second, cont))
        elif node.kind is CertKind.OMEGA_ITER:
            loop = self._new()
            operand = self.emit(node.children[0], None)
            self.rules[loop] = [("0",), ("1", loop, operand)]
            if cont:
                name = self._new()
                self.rules[name] = [(loop, cont)]
            else:
                name = loop
        else:
            name = self._new()
            if node.kind is CertKind.FIN:
                self.rules[name] = [tuple("1" * i + "0") + tail for i in range(node.n or 0)]
            elif node.kind is CertKind.OMEGA:
                self.rules[name] = [("1", name), ("0",) + tail]
            else:
                low, high = node.children
                self.rules[name] = [
                    ("0", self.emit(low, cont)),
                    ("1", self.emit(high, cont)),
                ]
        self.memo[key] = name
        return name


def _rename(start: str, rules: Dict[str, List[Rhs]]) -> Dict[str, List[Rhs]]:
    names: Dict[str, str] = {start: "S"}
    queue = [start]
    for current in queue:
        for rhs in rules[current]:
            for symbol in rhs:
                if symbol in rules and symbol not in names:
                    names[symbol] = f"N{len(names)}"
                    queue.append(symbol)
    return {
        names[lhs]: [tuple(names.get(s, s) for s in rhs) for rhs in rules[lhs]] for lhs in queue
    }


def emit_grammar(certificate: Certificate) -> Grammar:
    emitter = _Emitter()
    start = emitter.emit(certificate, None)
    grammar = reduce_grammar(Grammar.build("S", _rename(start, emitter.rules)))
    if grammar is None:
        raise AssertionError("emitted grammar generates nothing")
    return grammar


def synth_grammar(alpha: Ordinal) -> Tuple[Grammar, Certificate]:
    certificate = synth_certificate(alpha)
    return emit_grammar(certificate), certificate


def _members(node: Certificate) -> Iterator[str]:
    if node.kind is CertKind.FIN:
        yield from ("1" * i + "0" for i in range(node.n or 0))
    elif node.kind is CertKind.OMEGA:
        i = 0
        while True:
            yield "1" * i + "0"
            i += 1
    elif node.kind is CertKind.SUM:
        low, high = node.children
        yield from ("0" + word for word in _members(low))
        yield from ("1" + word for word in _members(high))
    elif node.kind is CertKind.PROD:
        first, second = node.children
        for head in _members(first):
            yield from (head + word for word in _members(second))
    else:
        n = 0
        while True:
            yield from ("1" * n + "0" + word for word in _power_members(node.children[0], n))
            n += 1


def _power_members(node: Certificate, n: int) -> Iterator[str]:
    if n == 0:
        yield ""
        return
    for head in _members(node):
        yield from (head + word for word in _power_members(node, n - 1))


def cert_enumerate(certificate: Certificate, n: int) -> List[str]:
    """The first n members of the certified language in order, built from the tree alone."""
    if not 0 <= n <= MAX_ENUMERATE:
        raise ValueError(f"enumeration size must lie in [0, {MAX_ENUMERATE}]")
    return list(islice(_members(certificate), n))


def _bounded(node: Certificate, limit: int) -> Set[str]:
    if limit <= 0:
        return set()
    if node.kind is CertKind.FIN:
        return {"1" * i + "0" for i in range(min(node.n or 0, limit))}
    if node.kind is CertKind.OMEGA:
        return {"1" * i + "0" for i in range(limit)}
    if node.kind is CertKind.SUM:
        low, high = node.children
        return {"0" + w for w in _bounded(low, limit - 1)} | {
            "1" + w for w in _bounded(high, limit - 1)
        }
    if node.kind is CertKind.PROD:
        first, second = node.children
        return {
            head + word
            for head in _bounded(first, limit)
            for word in _bounded(second, limit - len(head))
        }
    operand = node.children[0]
    found: Set[str] = set()
    for n in range(limit):
        heads = {"1" * n + "0"}
        for _ in range(n):
            heads = {h + w for h in heads for w in _bounded(operand, limit - len(h))}
        found |= heads
    return found


def cert_words(certificate: Certificate, max_len: int) -> List[str]:
    """All certified words of length <= max_len, in <lex order."""
    return sort_words(_bounded(certificate, max_len))

