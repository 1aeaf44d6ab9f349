import math
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from ..errors import AlphabetError, PrimitiveWordError
from .ordinal import Order

RESERVED = {"|", "#"}


class Relation(str, Enum):
    PREFIX = "PREFIX"
    STRICT = "STRICT"
    EQUAL = "EQUAL"


class OrderedAlphabet(BaseModel):
    """Letters listed in ascending order; each letter is one character."""

    model_config = ConfigDict(frozen=True)

    letters: Tuple[str, ...]

    @field_validator("letters")
    @classmethod
    def _check_letters(cls, letters: Tuple[str, ...]) -> Tuple[str, ...]:
        if not letters:
            raise ValueError("alphabet must not be empty")
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate letters in {letters}")
        for letter in letters:
            if len(letter) != 1 or letter.isspace() or letter in RESERVED:
                raise ValueError(f"invalid letter {letter!r}")
        return letters

    @classmethod
    def binary(cls) -> "OrderedAlphabet":
        return cls(letters=("0", "1"))

    @property
    def is_binary(self) -> bool:
        return self.letters == ("0", "1")

    def rank(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise AlphabetError(f"symbol {letter!r} is not in alphabet {self.describe()}") from None

    def sort_key(self, word: str) -> Tuple[int, ...]:
        return tuple(self.rank(letter) for letter in word)

    def check(self, word: str) -> None:
        for letter in word:
            self.rank(letter)

    def describe(self) -> str:
        return " < ".join(self.letters)

    def __contains__(self, letter: object) -> bool:
        return letter in self.letters


BINARY = OrderedAlphabet.binary()


def lex_compare(
    u: str, v: str, alphabet: OrderedAlphabet = BINARY
) -> Tuple[Order, Relation]:
    """Compare u and v under <lex = <pr ∪ <s."""
    alphabet.check(u)
    alphabet.check(v)
    for a, b in zip(u, v):
        if a != b:
            order = Order.LT if alphabet.rank(a) < alphabet.rank(b) else Order.GT
            return order, Relation.STRICT
    if len(u) == len(v):
        return Order.EQ, Relation.EQUAL
    return (Order.LT if len(u) < len(v) else Order.GT), Relation.PREFIX


def lex_less(u: str, v: str, alphabet: OrderedAlphabet = BINARY) -> bool:
    return lex_compare(u, v, alphabet)[0] is Order.LT


def strictly_less(u: str, v: str, alphabet: OrderedAlphabet = BINARY) -> bool:
    """u <s v: the words differ somewhere and u has the smaller letter there."""
    return lex_compare(u, v, alphabet) == (Order.LT, Relation.STRICT)


def is_proper_prefix(u: str, v: str) -> bool:
    return len(u) < len(v) and v.startswith(u)


def primitive_root(word: str) -> Tuple[str, int]:
    if not word:
        raise PrimitiveWordError("the empty word has no primitive root")
    n = len(word)
    for period in range(1, n + 1):
        if n % period == 0 and word[:period] * (n // period) == word:
            return word[:period], n // period
    raise AssertionError("unreachable")


def is_primitive(word: str) -> bool:
    return bool(word) and primitive_root(word)[1] == 1


def rotations(word: str) -> List[str]:
    return [word[i:] + word[:i] for i in range(len(word))] or [word]


def in_power_prefix(word: str, v0: str, v1: str) -> bool:
    """Membership of word in v0* v1."""
    if not v0:
        return word == v1
    body = len(word) - len(v1)
    if body < 0 or body % len(v0):
        return False
    return word == v0 * (body // len(v0)) + v1


def conjugate_align(u0: str, word: str) -> Optional[Tuple[str, str]]:
    """Find a rotation v0 of u0 and a proper prefix v1 of v0 with word in v0* v1.

    Rotations are tried by index, then prefixes by length.
    """
    if not is_primitive(u0):
        raise PrimitiveWordError(f"{u0!r} is not a primitive word")
    for v0 in rotations(u0):
        for cut in range(len(v0)):
            if in_power_prefix(word, v0, v0[:cut]):
                return v0, v0[:cut]
    return None


def binary_encode(alphabet: OrderedAlphabet) -> Dict[str, str]:
    """Equal-length, order-preserving code words over 0 < 1."""
    width = max(1, math.ceil(math.log2(len(alphabet.letters))))
    return {letter: format(i, f"0{width}b") for i, letter in enumerate(alphabet.letters)}


def encode_word(word: str, codes: Dict[str, str]) -> str:
    try:
        return "".join(codes[letter] for letter in word)
    except KeyError as exc:
        raise AlphabetError(f"symbol {exc.args[0]!r} has no code word") from None


def sort_words(words: Iterable[str], alphabet: OrderedAlphabet = BINARY) -> List[str]:
    return sorted(set(words), key=alphabet.sort_key)


def is_prefix_code(words: Sequence[str]) -> bool:
    ordered = sorted(set(words))
    return not any(is_proper_prefix(a, b) for a, b in zip(ordered, ordered[1:]))
