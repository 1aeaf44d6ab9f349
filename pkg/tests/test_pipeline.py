import pytest

from src.analysis.synth import synth_grammar
from src.errors import PreconditionError
from src.grammar.parser import parse_grammar
from src.models.base import Exactness
from src.models.ordinal import ord_parse
from src.pipeline import EVIDENCE_NOTE, analyze_grammar, analyze_paths, verify_file
from src.settings import Settings
from src.storage.data_store import ArtifactStore


@pytest.fixture
def settings(tmp_path):
    return Settings(output_dir=str(tmp_path), max_len=10)


def test_regular_grammar_gets_exact_answers(settings):
    report = analyze_grammar(parse_grammar("S -> 1 S | 0 A\nA -> 1 A | 0\n"), settings=settings)
    assert report.right_linear
    assert report.scattered
    assert report.rank.value == 2 and report.rank.exactness is Exactness.EXACT
    assert report.rank_bound.overall >= report.rank.value
    assert report.well_ordered.value is True
    assert report.order_type.value == ord_parse("w^2")
    assert report.consistency.passed


def test_general_grammar_gets_bounds_and_evidence(settings):
    report = analyze_grammar(parse_grammar("S -> 1 S A | 0\nA -> 1 A | 0\n"), settings=settings)
    assert report.scattered
    assert report.transforms == ["reduce"]
    assert report.structure.components == [["S"], ["A"]]
    assert report.rank.value == ord_parse("w+1")
    assert report.rank.exactness is Exactness.UPPER_BOUND
    assert report.well_ordered.value is None
    assert report.well_ordered.exactness is Exactness.EVIDENCE
    assert report.order_type is None
    assert report.note == EVIDENCE_NOTE


def test_balanced_grammar_descends_by_evidence(settings):
    report = analyze_grammar(parse_grammar("S -> 0 S A | 1\nA -> 0\n"), settings=settings)
    assert report.scattered
    assert report.well_ordered.value is False
    assert report.well_ordered.evidence.v == "0"


def test_dense_general_grammar(settings):
    report = analyze_grammar(parse_grammar("S -> S S | 0 | 1\n"), settings=settings)
    assert "greibach" in report.transforms
    assert report.scattered is False
    assert report.rank is None
    assert report.well_ordered.value is False
    assert report.well_ordered.exactness is Exactness.EXACT


def test_letters_are_binary_encoded(settings):
    report = analyze_grammar(parse_grammar("# terminals: a < b\nS -> b S | a\n"), settings=settings)
    assert report.transforms[0] == "binary-encode"
    assert report.order_type.value == ord_parse("w")


@pytest.mark.parametrize(
    "text, empty, order_type",
    [("S -> 0 S\n", True, 0), ("S -> _eps\n", False, 1), ("S -> A\nA -> _eps\n", False, 1)],
)
def test_trivial_languages(settings, text, empty, order_type):
    report = analyze_grammar(parse_grammar(text), settings=settings, expected=ord_parse("1"))
    assert report.empty_language is empty
    assert report.epsilon_in_language is not empty
    assert report.order_type.value == order_type
    assert report.consistency.passed is (order_type == 1)


def test_verify_file_uses_the_certificate_next_to_the_grammar(settings, tmp_path):
    store = ArtifactStore(settings.output_dir)
    grammar, certificate = synth_grammar(ord_parse("w^w+2"))
    grammar_file, _ = store.save_synthesis("big", grammar, certificate)
    assert grammar_file == tmp_path / "big.cfg"
    report = verify_file(str(grammar_file), settings, expected=ord_parse("w^w+2"))
    assert report.consistency.passed
    names = [check.name for check in report.consistency.checks]
    assert "certificate-vs-enumeration" in names
    assert "certificate-is-scattered" in names


def test_verify_file_preconditions(settings, tmp_path):
    path = tmp_path / "general.cfg"
    path.write_text("S -> 1 S A | 0\nA -> 1 A | 0\n")
    with pytest.raises(PreconditionError):
        verify_file(str(path), settings)
    with pytest.raises(FileNotFoundError):
        verify_file(str(path), settings, cert=str(tmp_path / "missing.cert.json"))


def test_analyze_paths_collects_errors(settings, tmp_path):
    good = tmp_path / "good.cfg"
    good.write_text("S -> 1 S | 0\n")
    bad = tmp_path / "bad.cfg"
    bad.write_text("S -> -> 0\n")
    results = analyze_paths([str(good), str(bad)], settings)
    assert [path for path, _, _ in results] == [str(good), str(bad)]
    assert results[0][1] is not None and results[0][2] is None
    assert results[1][1] is None and "bad.cfg" in results[1][2]
