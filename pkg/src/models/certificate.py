from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from .ordinal import OMEGA, Ordinal, ord_add, ord_mul, ord_omega_pow


class CertKind(str, Enum):
    FIN = "FIN"  # {1^i 0 : i < n}
    OMEGA = "OMEGA"  # 1*0
    SUM = "SUM"  # 0·L1 ∪ 1·L2
    PROD = "PROD"  # L1·L2
    OMEGA_ITER = "OMEGA_ITER"  # ⋃ 1^n 0 L^n


class Certificate(BaseModel):
    """Combinator tree recording how a language realizes its order type."""

    kind: CertKind
    n: Optional[int] = None
    children: List["Certificate"] = Field(default_factory=list)
    order_type: Ordinal
    prefix_code: bool = True

    @model_validator(mode="after")
    def _check_annotation(self) -> "Certificate":
        arity = {
            CertKind.FIN: 0,
            CertKind.OMEGA: 0,
            CertKind.SUM: 2,
            CertKind.PROD: 2,
            CertKind.OMEGA_ITER: 1,
        }[self.kind]
        if len(self.children) != arity:
            raise ValueError(f"{self.kind.value} takes {arity} operands")
        if self.kind in (CertKind.PROD, CertKind.OMEGA_ITER):
            if not all(child.prefix_code for child in self.children):
                raise ValueError(f"{self.kind.value} operands must be prefix codes")
        if self.kind is CertKind.FIN and (self.n is None or self.n < 1):
            raise ValueError("FIN needs a positive size")
        if self.kind is CertKind.OMEGA_ITER and not _is_omega_power(self.children[0].order_type):
            raise ValueError("OMEGA_ITER operand must have type w^g")
        expected = expected_type(self)
        if self.order_type != expected:
            raise ValueError(f"{self.kind.value} annotated {self.order_type}, expected {expected}")
        return self

    def walk(self) -> List["Certificate"]:
        nodes = [self]
        for child in self.children:
            nodes.extend(child.walk())
        return nodes


def _is_omega_power(value: Ordinal) -> bool:
    return len(value.terms) == 1 and value.terms[0][1] == 1 and not value.is_finite


def expected_type(node: Certificate) -> Ordinal:
    if node.kind is CertKind.FIN:
        return Ordinal.of(node.n or 0)
    if node.kind is CertKind.OMEGA:
        return OMEGA
    if node.kind is CertKind.SUM:
        return ord_add(node.children[0].order_type, node.children[1].order_type)
    if node.kind is CertKind.PROD:
        first, second = node.children
        return ord_mul(second.order_type, first.order_type)
    gamma = node.children[0].order_type.leading_exponent
    return ord_omega_pow(ord_mul(gamma, OMEGA))


def fin(n: int) -> Certificate:
    return Certificate(kind=CertKind.FIN, n=n, order_type=Ordinal.of(n))


def omega() -> Certificate:
    return Certificate(kind=CertKind.OMEGA, order_type=OMEGA)


def _combine(kind: CertKind, *children: Certificate) -> Certificate:
    draft = Certificate.model_construct(kind=kind, children=list(children), prefix_code=True)
    return Certificate(kind=kind, children=list(children), order_type=expected_type(draft))


def sum_of(first: Certificate, second: Certificate) -> Certificate:
    return _combine(CertKind.SUM, first, second)


def product(first: Certificate, second: Certificate) -> Certificate:
    return _combine(CertKind.PROD, first, second)


def omega_iter(operand: Certificate) -> Certificate:
    return _combine(CertKind.OMEGA_ITER, operand)
