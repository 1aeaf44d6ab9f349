"""Reading and writing the grammar file format.

    # terminals: a < b < c
    S -> a S B | _eps
    B -> b        # comments run to the end of the line
"""

import re
from typing import Dict, List, Tuple

from ..errors import DuplicateRuleError, GrammarSyntaxError, UndeclaredSymbolError
from ..models.grammar import EPSILON_TOKEN, Grammar, Rhs
from ..models.words import OrderedAlphabet

HEADER = re.compile(r"^\s*#\s*terminals\s*:(.*)$")
NONTERMINAL = re.compile(r"^[A-Z][A-Za-z0-9_']*$")


def _parse_header(body: str, line_no: int) -> OrderedAlphabet:
    letters = tuple(part.strip() for part in body.split("<"))
    if any(not letter for letter in letters):
        raise GrammarSyntaxError("empty letter in terminals header", line_no)
    try:
        return OrderedAlphabet(letters=letters)
    except ValueError as exc:
        raise GrammarSyntaxError(f"bad terminals header: {exc}", line_no) from None


def parse_grammar(text: str) -> Grammar:
    alphabet = OrderedAlphabet.binary()
    rules: Dict[str, List[Tuple[Rhs, int]]] = {}
    order: List[str] = []
    header_seen = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        header = HEADER.match(raw)
        if header:
            if header_seen or order:
                raise GrammarSyntaxError("terminals header must come first and only once", line_no)
            alphabet = _parse_header(header.group(1), line_no)
            header_seen = True
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise GrammarSyntaxError("expected 'X -> RHS'", line_no)
        lhs, body = (part.strip() for part in line.split("->", 1))
        if not NONTERMINAL.match(lhs) or lhs in alphabet:
            raise GrammarSyntaxError(f"invalid nonterminal {lhs!r}", line_no)
        if lhs in rules:
            raise DuplicateRuleError(f"second rule block for {lhs}", line_no)
        order.append(lhs)
        rules[lhs] = []
        for alternative in body.split("|"):
            tokens = alternative.split()
            if not tokens:
                raise GrammarSyntaxError(
                    f"empty alternative for {lhs}; write {EPSILON_TOKEN}", line_no
                )
            if EPSILON_TOKEN in tokens:
                if len(tokens) > 1:
                    raise GrammarSyntaxError(f"{EPSILON_TOKEN} must stand alone", line_no)
                tokens = []
            rules[lhs].append((tuple(tokens), line_no))

    if not order:
        raise GrammarSyntaxError("no rules found", max(1, len(text.splitlines())))

    for lhs in order:
        for rhs, line_no in rules[lhs]:
            for token in rhs:
                if token in alphabet:
                    continue
                if NONTERMINAL.match(token):
                    if token not in rules:
                        raise UndeclaredSymbolError(f"nonterminal {token} has no rules", line_no)
                    continue
                raise UndeclaredSymbolError(
                    f"{token!r} is neither a terminal of {alphabet.describe()} nor a nonterminal",
                    line_no,
                )

    return Grammar(
        nonterminals=tuple(order),
        alphabet=alphabet,
        productions={lhs: tuple(dict.fromkeys(rhs for rhs, _ in rules[lhs])) for lhs in order},
        start=order[0],
    )


def format_grammar(grammar: Grammar) -> str:
    """Render a grammar in the file format; the start symbol's block comes first."""
    lines = []
    if not grammar.alphabet.is_binary:
        lines.append(f"# terminals: {grammar.alphabet.describe()}")
    ordered = [grammar.start] + [n for n in grammar.nonterminals if n != grammar.start]
    for lhs in ordered:
        alternatives = grammar.alternatives(lhs)
        if not alternatives:
            continue
        rendered = [" ".join(rhs) if rhs else EPSILON_TOKEN for rhs in alternatives]
        lines.append(f"{lhs} -> {' | '.join(rendered)}")
    return "\n".join(lines) + "\n"
