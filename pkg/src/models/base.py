from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from .ordinal import Ordinal
from .words import BINARY, OrderedAlphabet, lex_less


class Verdict(str, Enum):
    SCATTERED = "SCATTERED"
    NOT_SCATTERED = "NOT_SCATTERED"


class WellOrderVerdict(str, Enum):
    WELL_ORDERED = "WELL_ORDERED"
    DESCENDING = "DESCENDING"


class Exactness(str, Enum):
    """How much a reported value can be trusted."""

    EXACT = "exact"
    UPPER_BOUND = "upper-bound"
    EVIDENCE = "evidence"


class MarkingCondition(str, Enum):
    I = "I"
    II = "II"
    III = "III"


class RankOp(str, Enum):
    LEAF = "LEAF"
    UNION = "UNION"
    SHUFFLE = "SHUFFLE"
    CONCAT = "CONCAT"
    SUBST = "SUBST"


class EmbedVerdict(str, Enum):
    EMBEDS_AT_SCALE = "EMBEDS_AT_SCALE"
    WITNESS_ABSENT = "WITNESS_ABSENT"


class StructureReport(BaseModel):
    """Strong components of the derives relation, listed by first appearance."""

    components: List[List[str]]
    order: List[Tuple[int, int]] = Field(default_factory=list)  # (i, j): C_i derives C_j, i != j
    height: List[int]
    component_of: Dict[str, int]
    recursive: Dict[str, bool]

    def height_of(self, nonterminal: str) -> int:
        return self.height[self.component_of[nonterminal]]

    def component(self, nonterminal: str) -> List[str]:
        return self.components[self.component_of[nonterminal]]

    def recursive_components(self) -> List[List[str]]:
        return [c for c in self.components if any(self.recursive[n] for n in c)]


class InclusionResult(BaseModel):
    holds: bool
    counterexample: Optional[str] = None


class MarkingTable(BaseModel):
    value: Dict[int, Ordinal]

    def __getitem__(self, state: int) -> Ordinal:
        return self.value[state]


class DenseWitness(BaseModel):
    """Two loop words at a live state, incomparable under the prefix order, x <s y."""

    state: int
    access: str = ""
    x: str
    y: str


class RankResult(BaseModel):
    verdict: Verdict
    rank: Optional[Ordinal] = None
    marking: Optional[MarkingTable] = None
    witness: Optional[DenseWitness] = None


class WellOrderResult(BaseModel):
    verdict: WellOrderVerdict
    u: Optional[str] = None
    v: Optional[str] = None
    w: Optional[str] = None

    @property
    def well_ordered(self) -> bool:
        return self.verdict is WellOrderVerdict.WELL_ORDERED


class MarkingCheck(BaseModel):
    valid: bool
    condition: Optional[MarkingCondition] = None
    node: Optional[str] = None
    detail: str = ""


class PairCertificate(BaseModel):
    source: str
    target: str
    vacuous: bool = False
    v0: Optional[str] = None
    v1: Optional[str] = None


class ComponentCertificate(BaseModel):
    component: List[str]
    u0: str
    witnesses: Dict[str, str] = Field(default_factory=dict)
    pairs: List[PairCertificate] = Field(default_factory=list)


class ScatterFailure(BaseModel):
    component: List[str]
    source: str
    target: Optional[str] = None
    counterexample: str
    v0: Optional[str] = None
    v1: Optional[str] = None
    reason: str


class ScatterReport(BaseModel):
    verdict: Verdict
    certificates: List[ComponentCertificate] = Field(default_factory=list)
    failure: Optional[ScatterFailure] = None

    @property
    def scattered(self) -> bool:
        return self.verdict is Verdict.SCATTERED


class RankBoundReport(BaseModel):
    per_nonterminal: Dict[str, Ordinal]
    overall: Ordinal
    exactness: Exactness = Exactness.UPPER_BOUND


class RankExpr(BaseModel):
    """Rank-calculus expression; leaves carry the operand's known rank."""

    op: RankOp
    rank: Optional[Ordinal] = None
    operands: List["RankExpr"] = Field(default_factory=list)

    @classmethod
    def leaf(cls, rank: object) -> "RankExpr":
        return cls(op=RankOp.LEAF, rank=rank)

    @classmethod
    def node(cls, op: RankOp, *operands: "RankExpr") -> "RankExpr":
        return cls(op=op, operands=list(operands))


class RankBound(BaseModel):
    value: Ordinal
    tight: bool


class EnumSample(BaseModel):
    words: List[str]
    length_cap: int
    complete_to_cap: bool = True
    alphabet: OrderedAlphabet = BINARY

    @model_validator(mode="after")
    def _check_sorted(self) -> "EnumSample":
        for a, b in zip(self.words, self.words[1:]):
            if not lex_less(a, b, self.alphabet):
                raise ValueError(f"sample is not strictly increasing at {a!r}, {b!r}")
        return self


class DescendingEvidence(BaseModel):
    """x v^i w z^i tail is in the language for every checked i and strictly decreases."""

    x: str
    v: str
    w: str
    z: str = ""
    tail: str = ""
    checked: int

    def chain(self, count: int) -> List[str]:
        return [self.x + self.v * i + self.w + self.z * i + self.tail for i in range(count)]


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""
    witness: Optional[str] = None


class ConsistencyReport(BaseModel):
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]


class RankEntry(BaseModel):
    value: Ordinal
    exactness: Exactness


class WellOrderEntry(BaseModel):
    value: Optional[bool]
    exactness: Exactness
    evidence: Optional[DescendingEvidence] = None
    triple: Optional[WellOrderResult] = None


class OrderTypeEntry(BaseModel):
    value: Ordinal
    exactness: Exactness = Exactness.EXACT


class Report(BaseModel):
    """Everything `analyze` learns about one grammar file."""

    path: str
    grammar: str
    transforms: List[str] = Field(default_factory=list)
    empty_language: bool = False
    epsilon_in_language: bool = False
    right_linear: bool = False
    structure: Optional[StructureReport] = None
    scatter: Optional[ScatterReport] = None
    rank: Optional[RankEntry] = None
    rank_bound: Optional[RankBoundReport] = None
    well_ordered: Optional[WellOrderEntry] = None
    order_type: Optional[OrderTypeEntry] = None
    consistency: Optional[ConsistencyReport] = None
    note: str = ""

    @property
    def scattered(self) -> Optional[bool]:
        return None if self.scatter is None else self.scatter.scattered
