import pytest

from src.analysis.oracle import derives, enumerate_words
from src.analysis.scatter import (
    check_scattered_cfg,
    left_prefix_grammar,
    prepare_for_analysis,
    rank_bound_cfg,
    rank_calculus,
    shortest_word,
)
from src.automata.dfa import Dfa, right_linear_to_dfa
from src.automata.order import regular_scattered_rank
from src.errors import PreconditionError, RankExpressionError
from src.grammar.parser import parse_grammar
from src.grammar.transform import reduce_grammar
from src.models.base import RankExpr, RankOp, Verdict
from src.models.ordinal import OMEGA, Ordinal, ord_parse

SCATTERED = [
    "S -> 1 S | 0\n",
    "S -> 0 S | 1\n",
    "S -> 0 S | 0\n",
    "S -> 1 S | 0 A\nA -> 1 A | 0\n",
    "S -> 1 S | 0 A\nA -> 1 A | 0 B\nB -> 1 B | 0\n",
    "S -> 0 A | 1 A\nA -> 0 A | 0\n",
    "S -> 0 1 S | 0\n",
    "S -> 1 A | 0\nA -> 0 A | 1\n",
    "S -> 0 0 S | 1 1 | 0\n",
    "S -> 0 A\nA -> 1 | 0\n",
]

DENSE = [
    "S -> 0 S | 1 S | 0\n",
    "S -> 0 S | 1 S | 1\n",
    "S -> 0 0 S | 1 S | 0\n",
    "S -> 0 A | 1 S | 1\nA -> 0 S | 1 A | 0\n",
    "S -> 0 1 S | 1 0 S | 1\n",
    "S -> 0 S | 1 A\nA -> 0 A | 1 S | 0\n",
    "S -> 1 S | 0 S | 0 1\n",
    "S -> 1 1 S | 0 S | 1\n",
    "S -> 0 S | 1 1 S | 0 1\n",
    "S -> 0 0 S | 0 1 S | 1\n",
]

OMEGA_OMEGA = "S -> 1 S A | 0\nA -> 1 A | 0\n"


def gnf_of(text):
    gnf, _ = prepare_for_analysis(parse_grammar(text))
    return gnf


@pytest.mark.parametrize("text", SCATTERED + DENSE)
def test_verdict_agrees_with_the_automaton(text):
    exact = regular_scattered_rank(right_linear_to_dfa(parse_grammar(text)))
    report = check_scattered_cfg(gnf_of(text))
    assert report.verdict is exact.verdict
    assert (report.failure is None) == report.scattered


@pytest.mark.parametrize("text", DENSE)
def test_dense_grammars_carry_a_counterexample(text):
    gnf = gnf_of(text)
    failure = check_scattered_cfg(gnf).failure
    assert failure is not None
    assert failure.counterexample
    assert failure.reason
    assert not Dfa.power_prefix(failure.v0, failure.v1).accepts(failure.counterexample)
    prefixes = left_prefix_grammar(gnf, failure.source, failure.target)
    assert derives(prefixes, failure.counterexample)


@pytest.mark.parametrize("text", SCATTERED)
def test_rank_bound_is_sound(text):
    exact = regular_scattered_rank(right_linear_to_dfa(parse_grammar(text)))
    gnf = gnf_of(text)
    bound = rank_bound_cfg(gnf, scatter=check_scattered_cfg(gnf))
    assert exact.rank <= bound.overall
    assert all(value < ord_parse("w^w") for value in bound.per_nonterminal.values())


def test_nested_recursion_is_scattered_with_unary_roots():
    grammar = parse_grammar(OMEGA_OMEGA)
    report = check_scattered_cfg(grammar)
    assert report.verdict is Verdict.SCATTERED
    assert [c.u0 for c in report.certificates] == ["1", "1"]
    assert all(pair.v0 == "1" or pair.vacuous for c in report.certificates for pair in c.pairs)


def test_rank_bound_of_nested_recursion():
    bound = rank_bound_cfg(parse_grammar(OMEGA_OMEGA))
    assert bound.per_nonterminal["A"] == 2
    assert bound.per_nonterminal["S"] == ord_parse("w+1")
    assert bound.overall == ord_parse("w+1")


def test_rank_bound_of_simple_grammars():
    assert rank_bound_cfg(parse_grammar("S -> 0 S | 0\n")).overall == 2
    finite = parse_grammar("S -> 0 A | 1 B\nA -> 0\nB -> 1\n")
    assert rank_bound_cfg(finite).overall == 0


def test_rank_bound_needs_a_scattered_language():
    gnf = gnf_of("S -> 0 S | 1 S | 0\n")
    with pytest.raises(PreconditionError):
        rank_bound_cfg(gnf, scatter=check_scattered_cfg(gnf))


def test_balanced_language_is_scattered():
    report = check_scattered_cfg(parse_grammar("S -> 0 S A | 1\nA -> 0\n"))
    assert report.scattered
    assert report.certificates[0].u0 == "0"


def test_check_requires_greibach_form():
    with pytest.raises(PreconditionError):
        check_scattered_cfg(parse_grammar("S -> S 0 | 1\n"))
    with pytest.raises(PreconditionError):
        check_scattered_cfg(parse_grammar("# terminals: a < b < c\nS -> a S | b\n"))


def test_left_prefix_grammar():
    grammar = parse_grammar(OMEGA_OMEGA)
    spine = left_prefix_grammar(grammar, "S", "S")
    assert enumerate_words(spine, 5).words == ["1", "11", "111", "1111", "11111"]
    assert reduce_grammar(left_prefix_grammar(grammar, "A", "S")) is None
    with pytest.raises(PreconditionError):
        left_prefix_grammar(grammar, "S", "B")


def test_shortest_word_and_preparation():
    assert shortest_word(parse_grammar(OMEGA_OMEGA)) == "0"
    assert shortest_word(parse_grammar("S -> 1 1 S | 0 1\n")) == "01"
    assert prepare_for_analysis(parse_grammar("S -> _eps\n")) == (None, True)


@pytest.mark.parametrize(
    "expr, value, tight",
    [
        (RankExpr.node(RankOp.UNION, RankExpr.leaf(1), RankExpr.leaf(1)), 1, True),
        (RankExpr.node(RankOp.SHUFFLE, RankExpr.leaf(2), RankExpr.leaf(1)), 2, True),
        (RankExpr.node(RankOp.CONCAT, RankExpr.leaf(1), RankExpr.leaf(1)), 2, False),
        (RankExpr.node(RankOp.SUBST, RankExpr.leaf(2), RankExpr.leaf(3)), 5, False),
        (RankExpr.node(RankOp.CONCAT, RankExpr.leaf(OMEGA), RankExpr.leaf(1)), OMEGA, False),
        (RankExpr.node(RankOp.CONCAT, RankExpr.leaf(1), RankExpr.leaf(OMEGA)), "w+1", False),
        (RankExpr.leaf(3), 3, True),
    ],
)
def test_rank_calculus(expr, value, tight):
    bound = rank_calculus(expr)
    assert bound.value == Ordinal.coerce(value)
    assert bound.tight is tight


@pytest.mark.parametrize(
    "expr",
    [
        RankExpr(op=RankOp.LEAF),
        RankExpr.node(RankOp.UNION),
        RankExpr.node(RankOp.SUBST, RankExpr.leaf(1), RankExpr.leaf(1), RankExpr.leaf(1)),
    ],
)
def test_rank_calculus_rejects_malformed_expressions(expr):
    with pytest.raises(RankExpressionError):
        rank_calculus(expr)
