"""The analyze and verify pipelines behind the command line."""

import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .analysis.oracle import cross_validate, enumerate_words, find_descending_evidence
from .analysis.scatter import check_scattered_cfg, prepare_for_analysis, rank_bound_cfg
from .automata.dfa import right_linear_to_dfa
from .automata.order import regular_order_type, regular_scattered_rank, regular_well_ordered
from .errors import OrdlexError, PreconditionError
from .grammar.parser import format_grammar
from .grammar.structure import structure
from .grammar.transform import binary_encode_grammar
from .models.base import (
    CheckResult,
    ConsistencyReport,
    Exactness,
    OrderTypeEntry,
    RankEntry,
    Report,
    ScatterReport,
    Verdict,
    WellOrderEntry,
)
from .models.certificate import Certificate
from .models.grammar import Grammar
from .models.ordinal import ONE, ZERO, Ordinal
from .settings import Settings
from .storage.data_store import ArtifactStore, certificate_path

logger = logging.getLogger(__name__)

EVIDENCE_NOTE = (
    "finite samples cannot refute scatteredness or well-orderedness; "
    "results labelled evidence are pumping-backed, not proofs"
)


def _empty_or_epsilon(report: Report, epsilon: bool, expected: Optional[Ordinal]) -> Report:
    size = ONE if epsilon else ZERO
    report.empty_language = not epsilon
    report.scatter = ScatterReport(verdict=Verdict.SCATTERED)
    report.rank = RankEntry(value=ZERO, exactness=Exactness.EXACT)
    report.well_ordered = WellOrderEntry(value=True, exactness=Exactness.EXACT)
    report.order_type = OrderTypeEntry(value=size)
    report.note = "the language has at most the empty word"
    report.consistency = ConsistencyReport()
    if expected is not None:
        report.consistency.checks.append(
            CheckResult(
                name="requested-ordinal",
                passed=expected == size,
                detail=f"requested {expected}, exact type {size}",
            )
        )
    return report


def analyze_grammar(
    grammar: Grammar,
    path: str = "<grammar>",
    settings: Optional[Settings] = None,
    certificate: Optional[Certificate] = None,
    expected: Optional[Ordinal] = None,
) -> Report:
    """Run every analysis that applies to `grammar` and cross-check the results."""
    settings = settings or Settings()
    report = Report(path=path, grammar=format_grammar(grammar))
    encoded = binary_encode_grammar(grammar)
    if encoded is not grammar:
        report.transforms.append("binary-encode")
    report.transforms.append("reduce")
    if not encoded.is_gnf_form():
        report.transforms.append("greibach")
    report.right_linear = encoded.is_right_linear()

    gnf, epsilon = prepare_for_analysis(grammar)
    report.epsilon_in_language = epsilon
    if gnf is None:
        logger.info("%s: language is %s", path, "{ε}" if epsilon else "empty")
        return _empty_or_epsilon(report, epsilon, expected)

    report.structure = structure(gnf)
    report.scatter = check_scattered_cfg(gnf)
    logger.info("%s: %s", path, report.scatter.verdict.value)
    rank_bound = None
    if report.scatter.scattered:
        rank_bound = rank_bound_cfg(gnf, report.structure, report.scatter)
        report.rank_bound = rank_bound

    if report.right_linear:
        dfa = right_linear_to_dfa(encoded)
        exact = regular_scattered_rank(dfa)
        if exact.rank is not None:
            report.rank = RankEntry(value=exact.rank, exactness=Exactness.EXACT)
        triple = regular_well_ordered(dfa)
        report.well_ordered = WellOrderEntry(
            value=triple.well_ordered, exactness=Exactness.EXACT, triple=triple
        )
        if triple.well_ordered:
            report.order_type = OrderTypeEntry(value=regular_order_type(dfa))
    else:
        if rank_bound is not None:
            report.rank = RankEntry(value=rank_bound.overall, exactness=Exactness.UPPER_BOUND)
        if not report.scatter.scattered:
            report.well_ordered = WellOrderEntry(value=False, exactness=Exactness.EXACT)
        else:
            sample = enumerate_words(encoded, settings.sample_cap)
            evidence = find_descending_evidence(encoded, sample, settings.pump_checks)
            report.well_ordered = WellOrderEntry(
                value=False if evidence else None,
                exactness=Exactness.EVIDENCE,
                evidence=evidence,
            )
        report.note = EVIDENCE_NOTE

    report.consistency = cross_validate(
        grammar,
        scatter=report.scatter,
        rank_bound=rank_bound,
        certificate=certificate,
        expected=expected,
        max_len=settings.max_len,
        prefix_window=settings.prefix_window,
        pump_checks=settings.pump_checks,
        sample_cap=settings.sample_cap,
        marking_depth=settings.marking_depth,
    )
    if certificate is not None:
        report.consistency.checks.append(
            CheckResult(
                name="certificate-is-scattered",
                passed=report.scatter.scattered,
                detail="a certified well-order must be scattered",
            )
        )
    return report


def analyze_file(path: str, settings: Optional[Settings] = None) -> Report:
    """Load and analyze one grammar file; picklable for process pools."""
    settings = settings or Settings()
    grammar = ArtifactStore(settings.output_dir).load_grammar(path)
    return analyze_grammar(grammar, path, settings)


def verify_file(
    path: str,
    settings: Optional[Settings] = None,
    expected: Optional[Ordinal] = None,
    cert: Optional[str] = None,
) -> Report:
    """Analyze a grammar against its certificate, or exactly when it is right-linear."""
    settings = settings or Settings()
    store = ArtifactStore(settings.output_dir)
    grammar = store.load_grammar(path)
    cert_file = Path(cert) if cert else certificate_path(path)
    certificate = store.load_certificate(cert_file) if cert_file.exists() else None
    if cert and certificate is None:
        raise FileNotFoundError(f"certificate {cert} not found")
    if certificate is None and not binary_encode_grammar(grammar).is_right_linear():
        raise PreconditionError(
            f"{path} has no certificate ({cert_file} is missing) and is not right-linear, "
            "so neither enumeration agreement nor an exact order type can be checked"
        )
    return analyze_grammar(grammar, path, settings, certificate=certificate, expected=expected)


def _analyze_safely(path: str, settings: Settings) -> Tuple[Optional[Report], Optional[str]]:
    try:
        return analyze_file(path, settings), None
    except (OrdlexError, OSError, ValueError) as exc:
        return None, f"{path}: {exc}"


def analyze_paths(
    paths: Sequence[str], settings: Settings, jobs: int = 1
) -> List[Tuple[str, Optional[Report], Optional[str]]]:
    """Analyze several files, in a process pool when jobs > 1; results keep input order."""
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_analyze_safely, paths, repeat(settings)))
    else:
        outcomes = [_analyze_safely(path, settings) for path in paths]
    return [(path, report, error) for path, (report, error) in zip(paths, outcomes)]
