from .parser import format_grammar, parse_grammar
from .structure import structure
from .transform import (
    binary_encode_grammar,
    derives_epsilon,
    is_gnf,
    is_right_linear,
    left_recursive_nonterminals,
    reduce_grammar,
    to_gnf,
)

__all__ = [
    "binary_encode_grammar",
    "derives_epsilon",
    "format_grammar",
    "is_gnf",
    "is_right_linear",
    "left_recursive_nonterminals",
    "parse_grammar",
    "reduce_grammar",
    "structure",
    "to_gnf",
]
