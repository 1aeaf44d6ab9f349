"""Ground truth by enumeration.

Finite samples never refute scatteredness or well-orderedness on their own,
so for general grammars this module only produces pumping-backed evidence;
exact answers come from the automata module on the right-linear fragment.
"""

import logging
from typing import Dict, Iterator, List, Optional, Set, Tuple

from ..automata.dfa import Dfa, right_linear_to_dfa
from ..automata.order import (
    lex_prefix,
    regular_order_type,
    regular_scattered_rank,
    regular_well_ordered,
)
from ..errors import EnumerationCapError
from ..grammar.transform import binary_encode_grammar, nullable_nonterminals
from ..models.base import (
    CheckResult,
    ConsistencyReport,
    DescendingEvidence,
    EnumSample,
    RankBoundReport,
    ScatterReport,
)
from ..models.certificate import Certificate
from ..models.grammar import Grammar, Rhs
from ..models.ordinal import Ordinal
from ..models.words import lex_less, sort_words, strictly_less
from .scatter import validate_marking
from .synth import cert_words

logger = logging.getLogger(__name__)

MAX_LENGTH_CAP = 20


def enumerate_words(grammar: Grammar, length_cap: int) -> EnumSample:
    """Every word of L(G) of length <= length_cap, in <lex order."""
    if not 0 <= length_cap <= MAX_LENGTH_CAP:
        raise EnumerationCapError(f"length cap must lie in [0, {MAX_LENGTH_CAP}], got {length_cap}")
    found: Dict[str, Set[str]] = {n: set() for n in grammar.nonterminals}

    def expand(rhs: Rhs) -> Set[str]:
        partial = {""}
        for symbol in rhs:
            if grammar.is_terminal(symbol):
                partial = {w + symbol for w in partial if len(w) < length_cap}
            else:
                partial = {
                    w + tail
                    for w in partial
                    for tail in found[symbol]
                    if len(w) + len(tail) <= length_cap
                }
            if not partial:
                break
        return partial

    changed = True
    while changed:
        changed = False
        for lhs, rhs in grammar.rules():
            fresh = expand(rhs) - found[lhs]
            if fresh:
                found[lhs] |= fresh
                changed = True

    words = set(found[grammar.start])
    if grammar.epsilon_in_language:
        words.add("")
    return EnumSample(
        words=sort_words(words, grammar.alphabet),
        length_cap=length_cap,
        alphabet=grammar.alphabet,
    )


def derives(grammar: Grammar, word: str) -> bool:
    """Membership by a span table; each span is closed under unit and nullable rules."""
    if word == "" and grammar.epsilon_in_language:
        return True
    n = len(word)
    nullable = nullable_nonterminals(grammar)
    table: Dict[Tuple[int, int], Set[str]] = {(i, i): set(nullable) for i in range(n + 1)}

    def matches(rhs: Rhs, i: int, j: int) -> bool:
        positions = {i}
        for symbol in rhs:
            following = set()
            for p in positions:
                if grammar.is_terminal(symbol):
                    if p < j and word[p] == symbol:
                        following.add(p + 1)
                    continue
                for q in range(p, j + 1):
                    if symbol in table.get((p, q), ()):
                        following.add(q)
            positions = following
            if not positions:
                return False
        return j in positions

    for width in range(1, n + 1):
        for i in range(n - width + 1):
            j = i + width
            cell: Set[str] = set()
            table[(i, j)] = cell
            changed = True
            while changed:
                changed = False
                for lhs, rhs in grammar.rules():
                    if lhs not in cell and matches(rhs, i, j):
                        cell.add(lhs)
                        changed = True
    return grammar.start in table[(0, n)]


def _single_pumps(word: str) -> Iterator[Tuple[str, str, str, str, str]]:
    n = len(word)
    for a in range(n):
        for b in range(a + 1, n):
            yield word[:a], word[a:b], word[b:], "", ""


def _double_pumps(word: str) -> Iterator[Tuple[str, str, str, str, str]]:
    n = len(word)
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                for d in range(c + 1, n + 1):
                    yield word[:a], word[a:b], word[b:c], word[c:d], word[d:]


def find_descending_evidence(
    grammar: Grammar, sample: EnumSample, pump_checks: int = 8
) -> Optional[DescendingEvidence]:
    """Search the sample for a pumped family x v^i w z^i tail with vw <s w.

    Every member up to i = pump_checks is checked by `derives`; one-sided
    pumps (z and tail empty) are tried on the whole sample before two-sided ones.
    """
    cache: Dict[str, bool] = {}

    def member(word: str) -> bool:
        if word not in cache:
            cache[word] = derives(grammar, word)
        return cache[word]

    by_length = sorted(sample.words, key=lambda w: (len(w), sample.alphabet.sort_key(w)))
    for splits in (_single_pumps, _double_pumps):
        for word in by_length:
            for x, v, w, z, tail in splits(word):
                if not strictly_less(v + w, w, sample.alphabet):
                    continue
                family = (x + v * i + w + z * i + tail for i in range(pump_checks + 1))
                if all(member(candidate) for candidate in family):
                    logger.debug("descending family found in %r", word)
                    return DescendingEvidence(x=x, v=v, w=w, z=z, tail=tail, checked=pump_checks)
    return None


def _first_difference(left: List[str], right: List[str]) -> Optional[str]:
    diff = set(left) ^ set(right)
    return min(diff, key=lambda w: (len(w), w)) if diff else None


def cross_validate(
    grammar: Grammar,
    scatter: Optional[ScatterReport] = None,
    rank_bound: Optional[RankBoundReport] = None,
    certificate: Optional[Certificate] = None,
    expected: Optional[Ordinal] = None,
    max_len: int = 12,
    prefix_window: int = 50,
    pump_checks: int = 8,
    sample_cap: int = 10,
    marking_depth: int = 10,
) -> ConsistencyReport:
    """Tie each analytic result that was supplied to data computed independently."""
    grammar = binary_encode_grammar(grammar)
    report = ConsistencyReport()
    checks = report.checks
    dfa: Optional[Dfa] = right_linear_to_dfa(grammar) if grammar.is_right_linear() else None
    exact_type: Optional[Ordinal] = None

    if dfa is not None:
        exact = regular_scattered_rank(dfa)
        if scatter is not None:
            witness = None
            if exact.witness is not None:
                witness = exact.witness.access + exact.witness.x
            elif scatter.failure is not None:
                witness = scatter.failure.counterexample
            checks.append(
                CheckResult(
                    name="scatter-vs-regular",
                    passed=scatter.verdict is exact.verdict,
                    detail=f"grammar {scatter.verdict.value}, automaton {exact.verdict.value}",
                    witness=witness,
                )
            )
        if exact.marking is not None:
            marking = validate_marking(dfa, exact.marking, marking_depth)
            checks.append(
                CheckResult(
                    name="marking-valid",
                    passed=marking.valid,
                    detail=marking.detail or f"canonical marking holds to depth {marking_depth}",
                    witness=marking.node,
                )
            )
        if rank_bound is not None and exact.rank is not None:
            checks.append(
                CheckResult(
                    name="rank-bound-vs-exact",
                    passed=exact.rank <= rank_bound.overall,
                    detail=f"exact rank {exact.rank}, bound {rank_bound.overall}",
                )
            )

        triple = regular_well_ordered(dfa)
        evidence = find_descending_evidence(
            grammar, enumerate_words(grammar, sample_cap), pump_checks
        )
        if triple.well_ordered:
            checks.append(
                CheckResult(
                    name="well-order-vs-evidence",
                    passed=evidence is None,
                    detail="automaton says well-ordered"
                    + ("" if evidence is None else ", but a descending family was verified"),
                    witness=None if evidence is None else evidence.chain(1)[0],
                )
            )
        else:
            u, v, w = triple.u or "", triple.v or "", triple.w or ""
            chain = [u + v * i + w for i in range(pump_checks + 1)]
            verified = strictly_less(v + w, w) and all(
                dfa.accepts(word) and derives(grammar, word) for word in chain
            )
            checks.append(
                CheckResult(
                    name="well-order-vs-evidence",
                    passed=verified,
                    detail=f"descending family {u}({v})^i{w} checked to i = {pump_checks}",
                    witness=chain[0],
                )
            )

        if triple.well_ordered:
            exact_type = regular_order_type(dfa)
            checks.append(_check_prefix(grammar, dfa, exact_type, max_len, prefix_window))
            if certificate is not None:
                checks.append(
                    CheckResult(
                        name="certificate-type-vs-exact",
                        passed=certificate.order_type == exact_type,
                        detail=f"certificate {certificate.order_type}, automaton {exact_type}",
                    )
                )

    if certificate is not None:
        certified = cert_words(certificate, max_len)
        generated = enumerate_words(grammar, max_len).words
        checks.append(
            CheckResult(
                name="certificate-vs-enumeration",
                passed=certified == generated,
                detail=f"{len(certified)} certified and {len(generated)} generated words"
                f" up to length {max_len}",
                witness=_first_difference(certified, generated),
            )
        )

    if expected is not None:
        checks.append(_check_expected(expected, dfa, exact_type, certificate))

    for check in report.failures():
        logger.info("check %s failed: %s", check.name, check.detail)
    return report


def _check_prefix(
    grammar: Grammar, dfa: Dfa, exact_type: Ordinal, max_len: int, window: int
) -> CheckResult:
    """The automaton's initial segment agrees with the grammar's bounded enumeration."""
    prefix = lex_prefix(dfa, window)
    expected_size = min(exact_type.to_int(), window) if exact_type.is_finite else window
    generated = enumerate_words(grammar, max_len).words
    listed = set(prefix)
    known = set(generated)
    missing = [w for w in prefix if len(w) <= max_len and w not in known]
    skipped = [w for w in generated if prefix and w not in listed and lex_less(w, prefix[-1])]
    witness = (missing or skipped or [None])[0]
    return CheckResult(
        name="order-type-vs-enumeration",
        passed=len(prefix) == expected_size and witness is None,
        detail=f"type {exact_type}: {len(prefix)} of the first {window} members listed",
        witness=witness,
    )


def _check_expected(
    expected: Ordinal,
    dfa: Optional[Dfa],
    exact_type: Optional[Ordinal],
    certificate: Optional[Certificate],
) -> CheckResult:
    name = "requested-ordinal"
    if exact_type is not None:
        return CheckResult(
            name=name,
            passed=exact_type == expected,
            detail=f"requested {expected}, exact type {exact_type}",
        )
    if dfa is not None:
        return CheckResult(name=name, passed=False, detail="language is not well-ordered")
    if certificate is not None:
        return CheckResult(
            name=name,
            passed=certificate.order_type == expected,
            detail=f"requested {expected}, certified type {certificate.order_type}",
        )
    return CheckResult(
        name=name, passed=False, detail="no exact type or certificate to compare against"
    )
