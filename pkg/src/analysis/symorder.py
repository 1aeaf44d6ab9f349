"""Symbolic scattered linear orders built from finite blocks, finite sums and Z-sums.

Z-sums repeat one tail expression toward each end around a finite middle,
so every expression is finite data. Ranks follow the classes built from
finite orders by Z-indexed sums and closed under finite sums.
"""

import re
from itertools import islice
from typing import Annotated, Iterator, List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..errors import OrderExprSyntaxError
from ..models.base import EmbedVerdict
from ..models.ordinal import ONE, ZERO, Ordinal, ord_add, ord_max

Label = Tuple[int, ...]

MAX_TRUNCATE = 10_000
MAX_EMBED_SCALE = 64


class Fin(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["fin"] = "fin"
    n: int = Field(ge=0)


class Sum(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["sum"] = "sum"
    parts: Tuple["OrderExpr", ...]

    @field_validator("parts")
    @classmethod
    def _nonempty(cls, parts: Tuple["OrderExpr", ...]) -> Tuple["OrderExpr", ...]:
        if not parts:
            raise ValueError("a sum needs at least one part")
        return parts


class ZSum(BaseModel):
    """... left left | middle[0] ... middle[-1] | right right ..."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["zsum"] = "zsum"
    left: "OrderExpr"
    middle: Tuple["OrderExpr", ...] = ()
    right: "OrderExpr"


OrderExpr = Annotated[Union[Fin, Sum, ZSum], Field(discriminator="kind")]

Sum.model_rebuild()
ZSum.model_rebuild()

EMPTY = Fin(n=0)
POINT = Fin(n=1)


def omega_expr() -> ZSum:
    return ZSum(left=EMPTY, right=POINT)


def z_expr() -> ZSum:
    return ZSum(left=POINT, right=POINT)


def is_empty(expr: OrderExpr) -> bool:
    if isinstance(expr, Fin):
        return expr.n == 0
    if isinstance(expr, Sum):
        return all(is_empty(part) for part in expr.parts)
    return is_empty(expr.left) and is_empty(expr.right) and all(map(is_empty, expr.middle))


def expr_rank(expr: OrderExpr) -> Ordinal:
    if isinstance(expr, Fin):
        return ZERO
    if isinstance(expr, Sum):
        return ord_max(*(expr_rank(part) for part in expr.parts))
    rank = ord_max(*(expr_rank(part) for part in expr.middle))
    for tail in (expr.left, expr.right):
        if not is_empty(tail):
            rank = ord_max(rank, ord_add(expr_rank(tail), ONE))
    return rank


def _dovetail(blocks: Iterator[Tuple[int, OrderExpr]]) -> Iterator[Label]:
    active: List[Tuple[int, Iterator[Label]]] = []
    pending = True
    while pending or active:
        if pending:
            try:
                index, block = next(blocks)
                active.append((index, _elements(block)))
            except StopIteration:
                pending = False
        still = []
        for index, elements in active:
            label = next(elements, None)
            if label is not None:
                yield (index,) + label
                still.append((index, elements))
        active = still


def _zsum_blocks(expr: ZSum) -> Iterator[Tuple[int, OrderExpr]]:
    width = len(expr.middle)
    yield from enumerate(expr.middle)
    right = not is_empty(expr.right)
    left = not is_empty(expr.left)
    copy = 0
    while right or left:
        if right:
            yield width + copy, expr.right
        if left:
            yield -(copy + 1), expr.left
        copy += 1


def _elements(expr: OrderExpr) -> Iterator[Label]:
    if isinstance(expr, Fin):
        return iter([(i,) for i in range(expr.n)])
    if isinstance(expr, Sum):
        return _dovetail(iter(enumerate(expr.parts)))
    return _dovetail(_zsum_blocks(expr))


def expr_truncate(expr: OrderExpr, n: int) -> List[Label]:
    """A finite suborder of n positions, middle-out, as labels in order."""
    if not 0 <= n <= MAX_TRUNCATE:
        raise ValueError(f"truncation size must lie in [0, {MAX_TRUNCATE}]")
    return sorted(islice(_elements(expr), n))


def expr_embed_check(first: OrderExpr, second: OrderExpr, n: int) -> EmbedVerdict:
    """Compare the n-window of `first` with the 4n-window of `second`.

    Both windows are finite chains, so an order-preserving injection exists
    exactly when the first window is no longer than the second.
    """
    if not 0 <= n <= MAX_EMBED_SCALE:
        raise ValueError(f"embedding scale must lie in [0, {MAX_EMBED_SCALE}]")
    if len(expr_truncate(first, n)) <= len(expr_truncate(second, 4 * n)):
        return EmbedVerdict.EMBEDS_AT_SCALE
    return EmbedVerdict.WITNESS_ABSENT


_TOKEN = re.compile(r"\s*(fin|sum|zsum|\d+|[();,])")


class _ExprParser:
    def __init__(self, text: str):
        self.tokens: List[Tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            match = _TOKEN.match(text, pos)
            if not match:
                raise OrderExprSyntaxError(f"unexpected input at position {pos}")
            self.tokens.append((match.group(1), match.start(1)))
            pos = match.end()
        self.index = 0

    def _next(self) -> str:
        if self.index >= len(self.tokens):
            raise OrderExprSyntaxError("unexpected end of expression")
        token = self.tokens[self.index][0]
        self.index += 1
        return token

    def _peek(self) -> str:
        return self.tokens[self.index][0] if self.index < len(self.tokens) else ""

    def _expect(self, token: str) -> None:
        found = self._next()
        if found != token:
            raise OrderExprSyntaxError(f"expected {token!r}, found {found!r}")

    def parse(self) -> OrderExpr:
        expr = self._expr()
        if self.index != len(self.tokens):
            raise OrderExprSyntaxError(f"trailing input {self._peek()!r}")
        return expr

    def _list(self, stop: str) -> List[OrderExpr]:
        items: List[OrderExpr] = []
        if self._peek() == stop:
            return items
        items.append(self._expr())
        while self._peek() == ",":
            self._next()
            items.append(self._expr())
        return items

    def _expr(self) -> OrderExpr:
        head = self._next()
        self._expect("(")
        if head == "fin":
            count = self._next()
            if not count.isdigit():
                raise OrderExprSyntaxError(f"fin takes a number, found {count!r}")
            expr: OrderExpr = Fin(n=int(count))
        elif head == "sum":
            expr = Sum(parts=tuple(self._list(")")))
        elif head == "zsum":
            left = self._expr()
            self._expect(";")
            middle = self._list(";")
            self._expect(";")
            expr = ZSum(left=left, middle=tuple(middle), right=self._expr())
        else:
            raise OrderExprSyntaxError(f"unknown constructor {head!r}")
        self._expect(")")
        return expr


def parse_expr(text: str) -> OrderExpr:
    try:
        return _ExprParser(text).parse()
    except ValueError as exc:
        if isinstance(exc, OrderExprSyntaxError):
            raise
        raise OrderExprSyntaxError(str(exc)) from None


def format_expr(expr: OrderExpr) -> str:
    if isinstance(expr, Fin):
        return f"fin({expr.n})"
    if isinstance(expr, Sum):
        return f"sum({', '.join(map(format_expr, expr.parts))})"
    middle = ", ".join(map(format_expr, expr.middle))
    return f"zsum({format_expr(expr.left)}; {middle}; {format_expr(expr.right)})"
