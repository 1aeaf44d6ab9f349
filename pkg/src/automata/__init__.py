from .dfa import Dfa, cfg_regular_inclusion, right_linear_to_dfa
from .order import (
    lex_members,
    lex_prefix,
    regular_order_type,
    regular_scattered_rank,
    regular_well_ordered,
)

__all__ = [
    "Dfa",
    "cfg_regular_inclusion",
    "lex_members",
    "lex_prefix",
    "regular_order_type",
    "regular_scattered_rank",
    "regular_well_ordered",
    "right_linear_to_dfa",
]
