from .oracle import cross_validate, derives, enumerate_words, find_descending_evidence
from .scatter import (
    check_scattered_cfg,
    left_prefix_grammar,
    merge_markings,
    prepare_for_analysis,
    rank_bound_cfg,
    rank_calculus,
    validate_marking,
)
from .symorder import expr_embed_check, expr_rank, expr_truncate, format_expr, parse_expr
from .synth import cert_enumerate, cert_words, emit_grammar, synth_certificate, synth_grammar

__all__ = [
    "cert_enumerate",
    "cert_words",
    "check_scattered_cfg",
    "cross_validate",
    "derives",
    "emit_grammar",
    "enumerate_words",
    "expr_embed_check",
    "expr_rank",
    "expr_truncate",
    "find_descending_evidence",
    "format_expr",
    "left_prefix_grammar",
    "merge_markings",
    "parse_expr",
    "prepare_for_analysis",
    "rank_bound_cfg",
    "rank_calculus",
    "synth_certificate",
    "synth_grammar",
    "validate_marking",
]
