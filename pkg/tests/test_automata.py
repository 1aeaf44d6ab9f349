from itertools import combinations

import pytest

from src.analysis.oracle import derives, enumerate_words
from src.analysis.scatter import merge_markings, validate_marking
from src.analysis.symorder import EMPTY, POINT, Fin, Sum, ZSum, expr_rank, omega_expr
from src.automata.dfa import Dfa, cfg_regular_inclusion, right_linear_to_dfa
from src.automata.order import (
    lex_prefix,
    regular_order_type,
    regular_scattered_rank,
    regular_well_ordered,
)
from src.errors import InvalidMarkingError, NotRightLinearError, NotWellOrderedError
from src.grammar.parser import parse_grammar
from src.models.base import MarkingCondition, MarkingTable, Verdict, WellOrderVerdict
from src.models.ordinal import ZERO, Ordinal, ord_max, ord_parse
from src.models.words import lex_less, strictly_less


def dfa_of(text):
    return right_linear_to_dfa(parse_grammar(text))


def ones_zero_power(k):
    """Right-linear grammar for (1*0)^k."""
    names = ["S"] + [f"A{i}" for i in range(1, k)]
    lines = [f"{name} -> 1 {name} | 0 {nxt}" for name, nxt in zip(names, names[1:])]
    lines.append(f"{names[-1]} -> 1 {names[-1]} | 0")
    return "\n".join(lines) + "\n"


# name, automaton, exact rank, order type (None when not well-ordered)
SUITE = [
    ("empty", Dfa.empty(), 0, "0"),
    ("epsilon", Dfa.from_words([""]), 0, "1"),
    ("two", Dfa.from_words(["", "0"]), 0, "2"),
    ("three", Dfa.from_words(["0", "01", "1"]), 0, "3"),
    ("zeros", dfa_of("S -> 0 S | _eps\n"), 1, "w"),
    ("zeros-plus", dfa_of("S -> 0 S | 0\n"), 1, "w"),
    ("ones-zero", dfa_of("S -> 1 S | 0\n"), 1, "w"),
    ("zeros-one", dfa_of("S -> 0 S | 1\n"), 1, None),
    ("ones-zero^2", dfa_of(ones_zero_power(2)), 2, "w^2"),
    ("ones-zero^3", dfa_of(ones_zero_power(3)), 3, "w^3"),
    ("ones-zero^4", dfa_of(ones_zero_power(4)), 4, "w^4"),
    ("zeros-or-one-zeros", dfa_of("S -> _eps | 0 A | 1 A\nA -> 0 A | _eps\n"), 1, "w*2"),
]
IDS = [name for name, *_ in SUITE]


def omega_power(k):
    """OrderExpr for w^k: w copies of w^(k-1) to the right of an empty middle."""
    expr = POINT
    for _ in range(k):
        expr = ZSum(left=EMPTY, right=expr)
    return expr


# the same orders written symbolically, keyed by suite name
ORDER_EXPRS = {
    "empty": EMPTY,
    "epsilon": POINT,
    "two": Fin(n=2),
    "three": Fin(n=3),
    "zeros": omega_expr(),
    "zeros-plus": omega_expr(),
    "ones-zero": omega_expr(),
    "zeros-one": ZSum(left=POINT, right=EMPTY),
    "ones-zero^2": omega_power(2),
    "ones-zero^3": omega_power(3),
    "ones-zero^4": omega_power(4),
    "zeros-or-one-zeros": Sum(parts=(omega_expr(), omega_expr())),
}


def test_right_linear_to_dfa():
    dfa = dfa_of("S -> 1 S | 0\n")
    assert len(dfa.live) == 2
    assert dfa.words(3) == ["0", "10", "110"]
    assert dfa.accepts("1110") and not dfa.accepts("01")
    assert dfa_of("S -> 0 A\nA -> 1\n").words(5) == ["01"]
    assert dfa_of("# terminals: a < b\nS -> b S | a\n").words(4) == ["0", "10", "110", "1110"]


def test_right_linear_to_dfa_rejects_other_grammars():
    with pytest.raises(NotRightLinearError):
        dfa_of("S -> S 0 | 1\n")
    with pytest.raises(NotRightLinearError):
        dfa_of("S -> 0 S 1 | 1\n")


def test_dfa_validation_and_helpers():
    with pytest.raises(ValueError):
        Dfa([(0, 2)], 0, [0])
    with pytest.raises(ValueError):
        Dfa([(0, 0)], 1, [])
    assert Dfa.empty().is_empty
    assert Dfa.universal().words(2) == ["", "0", "00", "01", "1", "10", "11"]
    assert Dfa.power_prefix("01", "0").words(5) == ["0", "010", "01010"]
    with pytest.raises(ValueError):
        Dfa.power_prefix("01", "01")
    dfa = dfa_of("S -> 1 S | 0\n")
    assert dfa.to_dict()["initial"] == 0
    assert dfa.shortest_accepted(dfa.initial) == "0"


def test_union_product():
    zeros = dfa_of("S -> 0 S | _eps\n")
    ones = dfa_of("S -> 1 S | _eps\n")
    union, pairs = zeros.union_product(ones)
    assert len(pairs) == union.size
    assert union.words(2) == ["", "0", "00", "1", "11"]


@pytest.mark.parametrize(
    "grammar, dfa, expected",
    [
        ("S -> 1 S | 0\n", Dfa.universal(), None),
        ("S -> 1 S | 0\n", Dfa([(1, 0), (1, 1)], 0, [0]), "0"),
        ("S -> 0 S A | 1\nA -> 0\n", Dfa([(0, 1), (1, 2), (2, 2)], 0, [1]), None),
        ("S -> 0 S A | 1\nA -> 0\n", Dfa([(0, 1), (2, 2), (2, 2)], 0, [1]), "010"),
        ("S -> 0 S | _eps\n", dfa_of("S -> 0 S | 0\n"), ""),
    ],
)
def test_cfg_regular_inclusion(grammar, dfa, expected):
    cfg = parse_grammar(grammar)
    result = cfg_regular_inclusion(cfg, dfa)
    assert result.holds == (expected is None)
    assert result.counterexample == expected
    if expected is not None:
        assert not dfa.accepts(expected)
        assert derives(cfg, expected)
        outside = [w for w in enumerate_words(cfg, len(expected)).words if not dfa.accepts(w)]
        assert min(outside, key=lambda w: (len(w), w)) == expected


@pytest.mark.parametrize("name, dfa, rank, order_type", SUITE, ids=IDS)
def test_exact_rank_of_suite(name, dfa, rank, order_type):
    result = regular_scattered_rank(dfa)
    assert result.verdict is Verdict.SCATTERED
    assert result.rank == Ordinal.of(rank)
    assert result.marking[dfa.initial] == rank


@pytest.mark.parametrize("name, dfa, rank, order_type", SUITE, ids=IDS)
def test_rank_matches_symbolic_order(name, dfa, rank, order_type):
    expected = expr_rank(ORDER_EXPRS[name])
    assert expected == Ordinal.of(rank)
    assert regular_scattered_rank(dfa).rank == expected


@pytest.mark.parametrize("name, dfa, rank, order_type", SUITE, ids=IDS)
def test_canonical_markings_are_valid(name, dfa, rank, order_type):
    marking = regular_scattered_rank(dfa).marking
    assert validate_marking(dfa, marking, 10).valid


@pytest.mark.parametrize("name, dfa, rank, order_type", SUITE, ids=IDS)
def test_order_type_of_suite(name, dfa, rank, order_type):
    if order_type is None:
        assert not regular_well_ordered(dfa).well_ordered
        with pytest.raises(NotWellOrderedError):
            regular_order_type(dfa)
        return
    assert regular_well_ordered(dfa).well_ordered
    assert regular_order_type(dfa) == ord_parse(order_type)


@pytest.mark.parametrize("name, dfa, rank, order_type", SUITE, ids=IDS)
def test_lex_prefix_agrees_with_sorted_words(name, dfa, rank, order_type):
    if order_type is None:
        return
    prefix = lex_prefix(dfa, 50)
    assert all(dfa.accepts(w) for w in prefix)
    assert all(lex_less(a, b) for a, b in zip(prefix, prefix[1:]))
    expected_type = ord_parse(order_type)
    assert len(prefix) == (expected_type.to_int() if expected_type.is_finite else 50)
    if prefix:
        below = [w for w in dfa.words(12) if not lex_less(prefix[-1], w)]
        assert below == [w for w in prefix if len(w) <= 12]


def test_dense_language_has_a_witness():
    result = regular_scattered_rank(Dfa.universal())
    assert result.verdict is Verdict.NOT_SCATTERED
    witness = result.witness
    assert (witness.state, witness.access, witness.x, witness.y) == (0, "", "0", "1")
    assert strictly_less(witness.x, witness.y)

    dense = dfa_of("S -> 0 S | 1 S | 0\n")
    found = regular_scattered_rank(dense).witness
    assert strictly_less(found.x, found.y)
    state = dense.run(found.access)
    assert dense.run(found.x, state) == state == dense.run(found.y, state)


def test_well_order_triples():
    assert regular_well_ordered(dfa_of("S -> 1 S | 0\n")).verdict is WellOrderVerdict.WELL_ORDERED
    descending = regular_well_ordered(dfa_of("S -> 0 S | 1\n"))
    assert descending.verdict is WellOrderVerdict.DESCENDING
    assert (descending.u, descending.v, descending.w) == ("", "0", "1")

    other = dfa_of("S -> 0 A | 1\nA -> 0 A | 1\n")
    triple = regular_well_ordered(other)
    assert not triple.well_ordered
    chain = [triple.u + triple.v * i + triple.w for i in range(6)]
    assert all(other.accepts(w) for w in chain)
    assert all(lex_less(b, a) for a, b in zip(chain, chain[1:]))


def test_validate_marking_reports_violations():
    finite = Dfa.from_words(["0"])
    check = validate_marking(finite, MarkingTable(value={finite.initial: Ordinal.of(1)}))
    assert (check.valid, check.condition, check.node) == (False, MarkingCondition.I, "")

    union = SUITE[-1][1]
    values = {q: Ordinal.of(1) if q in union.infinite_states() else ZERO for q in union.states}
    values[union.initial] = Ordinal.of(2)
    check = validate_marking(union, MarkingTable(value=values))
    assert (check.valid, check.condition, check.node) == (False, MarkingCondition.II, "")

    check = validate_marking(Dfa.universal(), MarkingTable(value={0: Ordinal.of(1)}))
    assert (check.valid, check.condition, check.node) == (False, MarkingCondition.III, "")


def test_merge_with_the_empty_marking_is_identity():
    zeros = dfa_of("S -> 0 S | _eps\n")
    empty = Dfa.empty()
    product, merged = merge_markings(
        (zeros, regular_scattered_rank(zeros).marking),
        (empty, regular_scattered_rank(empty).marking),
    )
    assert merged[product.initial] == 1
    assert product.words(4) == zeros.words(4)


def test_merge_rejects_invalid_input():
    union = Dfa.universal()
    zeros = dfa_of("S -> 0 S | _eps\n")
    with pytest.raises(InvalidMarkingError):
        merge_markings(
            (union, MarkingTable(value={0: Ordinal.of(1)})),
            (zeros, regular_scattered_rank(zeros).marking),
        )


def test_merged_markings_of_every_pair():
    results = []
    for (_, d0, r0, _), (_, d1, r1, _) in combinations(SUITE, 2):
        m0 = regular_scattered_rank(d0).marking
        m1 = regular_scattered_rank(d1).marking
        product, merged = merge_markings((d0, m0), (d1, m1))
        valid = validate_marking(product, merged, 10).valid
        results.append(valid and merged[product.initial] == ord_max(Ordinal.of(r0), Ordinal.of(r1)))
    assert len(results) == 66
    assert all(results)
