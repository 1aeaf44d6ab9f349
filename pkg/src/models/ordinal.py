"""Ordinals below epsilon-zero in Cantor normal form."""

from enum import Enum
from functools import total_ordering
from typing import Any, Iterable, List, Optional, Tuple, Union

from ..errors import OrdinalDepthError, OrdinalSyntaxError

MAX_DEPTH = 32


class Order(str, Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


@total_ordering
class Ordinal:
    """An ordinal as a strictly decreasing sequence of (exponent, coefficient) terms.

    The empty sequence is 0. Exponents are themselves ordinals, so values are
    finite trees; comparison and arithmetic are structural.
    """

    __slots__ = ("_terms", "_depth")

    def __init__(self, terms: Iterable[Tuple[Union["Ordinal", int], int]] = ()):
        normalized: List[Tuple[Ordinal, int]] = []
        for exponent, coefficient in terms:
            exponent = Ordinal.coerce(exponent)
            if int(coefficient) < 1:
                raise ValueError(f"coefficient must be positive, got {coefficient}")
            if normalized and _compare(exponent, normalized[-1][0]) >= 0:
                raise ValueError("exponents must be strictly decreasing")
            normalized.append((exponent, int(coefficient)))
        self._set(tuple(normalized))

    def _set(self, terms: Tuple[Tuple["Ordinal", int], ...]) -> None:
        depth = 1 + max((e._depth for e, _ in terms), default=-1)
        if depth > MAX_DEPTH:
            raise OrdinalDepthError(f"ordinal nesting depth {depth} exceeds {MAX_DEPTH}")
        self._terms = terms
        self._depth = depth

    @classmethod
    def _from_terms(cls, terms: Iterable[Tuple["Ordinal", int]]) -> "Ordinal":
        ins = cls.__new__(cls)
        ins._set(tuple(terms))
        return ins

    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError(f"ordinals are non-negative, got {n}")
        if n == 0:
            return ZERO
        return cls._from_terms(((ZERO, n),))

    @classmethod
    def coerce(cls, value: Any) -> "Ordinal":
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not ordinals")
        if isinstance(value, int):
            return cls.of(value)
        if isinstance(value, str):
            return ord_parse(value)
        raise TypeError(f"cannot interpret {value!r} as an ordinal")

    @classmethod
    def __get_pydantic_core_schema__(cls, source_type: Any, handler: Any) -> Any:
        from pydantic_core import core_schema

        return core_schema.no_info_plain_validator_function(
            cls.coerce,
            serialization=core_schema.plain_serializer_function_ser_schema(
                ord_format, when_used="always"
            ),
        )

    @property
    def terms(self) -> Tuple[Tuple["Ordinal", int], ...]:
        return self._terms

    @property
    def depth(self) -> int:
        return self._depth

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_finite(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0].is_zero)

    def to_int(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self._terms[0][1] if self._terms else 0

    @property
    def leading_exponent(self) -> "Ordinal":
        return self._terms[0][0] if self._terms else ZERO

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, int):
            return other >= 0 and _compare(self, Ordinal.of(other)) == 0
        if isinstance(other, Ordinal):
            return _compare(self, other) == 0
        return NotImplemented

    def __lt__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other)
        if isinstance(other, Ordinal):
            return _compare(self, other) < 0
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_finite:
            return hash(self.to_int())
        return hash(self._terms)

    def __add__(self, other: Union["Ordinal", int]) -> "Ordinal":
        return ord_add(self, Ordinal.coerce(other))

    def __radd__(self, other: int) -> "Ordinal":
        return ord_add(Ordinal.coerce(other), self)

    def __mul__(self, other: Union["Ordinal", int]) -> "Ordinal":
        return ord_mul(self, Ordinal.coerce(other))

    def __rmul__(self, other: int) -> "Ordinal":
        return ord_mul(Ordinal.coerce(other), self)

    def __str__(self) -> str:
        return ord_format(self)

    def __repr__(self) -> str:
        return f"Ordinal('{ord_format(self)}')"


ZERO = Ordinal()
ONE = Ordinal._from_terms(((ZERO, 1),))
OMEGA = Ordinal._from_terms(((ONE, 1),))


def _compare(a: Ordinal, b: Ordinal) -> int:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        by_exponent = _compare(ea, eb)
        if by_exponent:
            return by_exponent
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


def ord_compare(a: Ordinal, b: Ordinal) -> Order:
    result = _compare(a, b)
    if result < 0:
        return Order.LT
    if result > 0:
        return Order.GT
    return Order.EQ


def ord_max(*values: Ordinal) -> Ordinal:
    best = ZERO
    for value in values:
        if _compare(value, best) > 0:
            best = value
    return best


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero:
        return a
    lead, lead_coefficient = b.terms[0]
    kept: List[Tuple[Ordinal, int]] = []
    for exponent, coefficient in a.terms:
        relation = _compare(exponent, lead)
        if relation > 0:
            kept.append((exponent, coefficient))
        elif relation == 0:
            kept.append((exponent, coefficient + lead_coefficient))
            return Ordinal._from_terms(kept + list(b.terms[1:]))
        else:
            break
    return Ordinal._from_terms(kept + list(b.terms))


def ord_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal product a·b: b copies of a."""
    if a.is_zero or b.is_zero:
        return ZERO
    lead, lead_coefficient = a.terms[0]
    result = ZERO
    for exponent, coefficient in b.terms:
        if exponent.is_zero:
            piece = Ordinal._from_terms(((lead, lead_coefficient * coefficient),) + a.terms[1:])
        else:
            piece = Ordinal._from_terms(((ord_add(lead, exponent), coefficient),))
        result = ord_add(result, piece)
    return result


def ord_omega_pow(exponent: Ordinal) -> Ordinal:
    return Ordinal._from_terms(((exponent, 1),))


def ord_format(a: Ordinal) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for exponent, coefficient in a.terms:
        if exponent.is_zero:
            parts.append(str(coefficient))
            continue
        if exponent == ONE:
            base = "w"
        elif exponent.is_finite:
            base = f"w^{exponent.to_int()}"
        elif exponent == OMEGA:
            base = "w^w"
        else:
            base = f"w^({ord_format(exponent)})"
        parts.append(base if coefficient == 1 else f"{base}*{coefficient}")
    return "+".join(parts)


class _OrdinalParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] == " ":
            self.pos += 1

    def _peek(self) -> Optional[str]:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def _expect(self, char: str) -> None:
        if self._peek() != char:
            raise OrdinalSyntaxError(f"expected '{char}'", self.pos)
        self.pos += 1

    def _integer(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise OrdinalSyntaxError("expected a number", start)
        return int(self.text[start : self.pos])

    def parse(self) -> Ordinal:
        if not self.text.isascii():
            raise OrdinalSyntaxError("ordinals are written in ASCII", 0)
        if self._peek() is None:
            raise OrdinalSyntaxError("empty ordinal", self.pos)
        result = self._expression()
        if self._peek() is not None:
            raise OrdinalSyntaxError(f"unexpected '{self.text[self.pos]}'", self.pos)
        return result

    def _expression(self) -> Ordinal:
        terms: List[Tuple[Ordinal, int]] = []
        while True:
            self._skip()
            start = self.pos
            exponent, coefficient = self._term()
            if coefficient == 0:
                if terms or self._peek() == "+":
                    raise OrdinalSyntaxError("zero term inside a sum", start)
                return ZERO
            if terms and _compare(exponent, terms[-1][0]) >= 0:
                raise OrdinalSyntaxError("exponents must be strictly decreasing", start)
            terms.append((exponent, coefficient))
            if self._peek() != "+":
                return Ordinal._from_terms(terms)
            self.pos += 1

    def _term(self) -> Tuple[Ordinal, int]:
        char = self._peek()
        if char is not None and char.isdigit():
            return ZERO, self._integer()
        if char != "w":
            raise OrdinalSyntaxError("expected 'w' or a number", self.pos)
        self.pos += 1
        exponent = ONE
        if self._peek() == "^":
            self.pos += 1
            if self._peek() == "(":
                self.pos += 1
                exponent = self._expression()
                self._expect(")")
            elif self._peek() == "w":
                self.pos += 1
                exponent = OMEGA
            else:
                exponent = Ordinal.of(self._integer())
        coefficient = 1
        if self._peek() == "*":
            self.pos += 1
            start = self.pos
            coefficient = self._integer()
            if coefficient == 0:
                raise OrdinalSyntaxError("coefficient must be positive", start)
        return exponent, coefficient


def ord_parse(text: str) -> Ordinal:
    return _OrdinalParser(text).parse()
