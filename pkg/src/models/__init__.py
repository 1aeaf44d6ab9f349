from .certificate import Certificate, CertKind
from .grammar import EPSILON_TOKEN, Grammar
from .ordinal import OMEGA, ONE, ZERO, Ordinal, ord_format, ord_parse
from .words import BINARY, OrderedAlphabet, lex_compare

__all__ = [
    "BINARY",
    "CertKind",
    "Certificate",
    "EPSILON_TOKEN",
    "Grammar",
    "OMEGA",
    "ONE",
    "OrderedAlphabet",
    "Ordinal",
    "ZERO",
    "lex_compare",
    "ord_format",
    "ord_parse",
]
