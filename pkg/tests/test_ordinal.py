from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import BaseModel

from src.errors import OrdinalDepthError, OrdinalSyntaxError
from src.models.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Order,
    Ordinal,
    ord_add,
    ord_compare,
    ord_format,
    ord_max,
    ord_mul,
    ord_omega_pow,
    ord_parse,
)


def cnf(*terms):
    """Ordinal from (finite exponent, coefficient) pairs, zero coefficients skipped."""
    return Ordinal([(e, c) for e, c in terms if c])


def grid(max_exponent, max_coefficient):
    exponents = list(range(max_exponent, -1, -1))
    values = []
    for coefficients in product(range(max_coefficient + 1), repeat=len(exponents)):
        values.append(cnf(*zip(exponents, coefficients)))
    return values


SMALL = grid(2, 2)
ordinals = st.sampled_from(grid(3, 3))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("0", "0"),
        ("7", "7"),
        ("w", "w"),
        ("w*1", "w"),
        ("w^1", "w"),
        ("w^2+w*3+1", "w^2+w*3+1"),
        ("w^12", "w^12"),
        ("w^(w+1)*2+w", "w^(w+1)*2+w"),
        ("w^w", "w^w"),
        ("w^(w)", "w^w"),
        ("w^(w^w)", "w^(w^w)"),
        ("w^(w*2+1)*3+w*2+5", "w^(w*2+1)*3+w*2+5"),
        (" w ^ 2 + 1 ", "w^2+1"),
    ],
)
def test_parse_and_format(text, expected):
    assert ord_format(ord_parse(text)) == expected


@pytest.mark.parametrize(
    "text", ["", "w^2+w^3", "w+w^2", "w+w", "w*0", "0+1", "v", "w^", "w^(w", "1+"]
)
def test_parse_rejects_malformed_text(text):
    with pytest.raises(OrdinalSyntaxError):
        ord_parse(text)


def test_syntax_error_carries_position():
    with pytest.raises(OrdinalSyntaxError) as info:
        ord_parse("w+x")
    assert info.value.position == 2


def test_depth_limit():
    text = "w^(" * 40 + "w" + ")" * 40
    with pytest.raises(OrdinalDepthError):
        ord_parse(text)


def test_addition_absorbs_smaller_left_terms():
    assert ord_add(ONE, OMEGA) == OMEGA
    assert ord_add(OMEGA, ONE) == ord_parse("w+1")
    assert ord_add(ord_parse("w*2+3"), ord_parse("w^2")) == ord_parse("w^2")
    assert ord_add(ord_parse("w^2+w"), ord_parse("w*2+1")) == ord_parse("w^2+w*3+1")


def test_multiplication_is_b_copies_of_a():
    assert ord_mul(Ordinal.of(2), OMEGA) == OMEGA
    assert ord_mul(OMEGA, Ordinal.of(2)) == ord_parse("w*2")
    assert ord_mul(ord_parse("w+1"), ord_parse("w+1")) == ord_parse("w^2+w+1")
    assert ord_mul(OMEGA, OMEGA) == ord_parse("w^2")
    assert ord_mul(ZERO, OMEGA) == ZERO


def test_comparison_and_max():
    assert ord_compare(OMEGA, ord_parse("w+1")) is Order.LT
    assert ord_compare(ord_parse("w^2"), ord_parse("w*5+9")) is Order.GT
    assert ord_compare(ord_parse("w*2"), ord_mul(OMEGA, Ordinal.of(2))) is Order.EQ
    assert ord_max() == ZERO
    assert ord_max(ONE, ord_parse("w^w"), OMEGA) == ord_parse("w^w")


def test_finite_values_behave_like_ints():
    three = Ordinal.of(3)
    assert three == 3
    assert hash(three) == hash(3)
    assert three.to_int() == 3
    assert three + 2 == 5
    assert 1 + OMEGA == OMEGA
    assert OMEGA > 1000
    with pytest.raises(ValueError):
        OMEGA.to_int()


def test_pydantic_field_accepts_text_and_dumps_text():
    class Holder(BaseModel):
        value: Ordinal

    holder = Holder(value="w^2+1")
    assert holder.value == ord_parse("w^2+1")
    assert holder.model_dump(mode="json") == {"value": "w^2+1"}
    assert Holder.model_validate_json('{"value": 4}').value == 4


def test_exhaustive_laws_on_small_grid():
    violations = []
    for a, b, c in product(SMALL, repeat=3):
        if ord_add(ord_add(a, b), c) != ord_add(a, ord_add(b, c)):
            violations.append(("add-assoc", a, b, c))
        if ord_mul(ord_mul(a, b), c) != ord_mul(a, ord_mul(b, c)):
            violations.append(("mul-assoc", a, b, c))
        if ord_mul(a, ord_add(b, c)) != ord_add(ord_mul(a, b), ord_mul(a, c)):
            violations.append(("left-distrib", a, b, c))
    assert violations == []


@settings(max_examples=300)
@given(ordinals, ordinals, ordinals)
def test_laws_hold_on_larger_grid(a, b, c):
    assert ord_add(ord_add(a, b), c) == ord_add(a, ord_add(b, c))
    assert ord_mul(ord_mul(a, b), c) == ord_mul(a, ord_mul(b, c))
    assert ord_mul(a, ord_add(b, c)) == ord_add(ord_mul(a, b), ord_mul(a, c))


@given(ordinals, ordinals)
def test_omega_power_law(a, b):
    assert ord_mul(ord_omega_pow(a), ord_omega_pow(b)) == ord_omega_pow(ord_add(a, b))


@given(ordinals, ordinals)
def test_addition_is_monotone_on_the_right(a, b):
    assert ord_add(a, b) >= b
    assert ord_add(a, b) >= a


@given(ordinals)
def test_format_round_trips(a):
    assert ord_parse(ord_format(a)) == a
