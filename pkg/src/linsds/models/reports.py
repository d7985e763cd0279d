"""Output reports emitted by the command-line interface."""

from typing import Any, Literal

from pydantic import Field

from ..cut import ConstructiveCheck, Cut, CutIdentityCheck
from ..field import FieldSpec
from ..linalg import NoLU
from .base import BaseModel
from .documents import FieldDocument, MatrixLiteral, SystemDocument


class SystemReport(FieldDocument):
    """A system matrix and how it was obtained."""

    method: Literal["permutation", "word", "oracle"]
    schedule: list[int]
    matrix: MatrixLiteral
    multiplicities: list[int] | None = Field(None, description="Occurrences of every vertex")
    lifted_word: list[int] | None = Field(None, description="1-based expanded vertices")
    verified: bool | None = Field(None, description="Agreement with the sequential product")


class MoebiusReport(FieldDocument):
    n: int
    matrix: MatrixLiteral
    sds_schedule: list[int]
    paths_agree: bool


class NoLUReport(BaseModel):
    pivot_index: int
    reason: str
    permutation_hint: list[int]

    @classmethod
    def from_outcome(cls, outcome: NoLU) -> "NoLUReport":
        return cls(
            pivot_index=outcome.pivot_index,
            reason=outcome.reason,
            permutation_hint=list(outcome.permutation_hint),
        )


class LUSynthesisReport(FieldDocument):
    """Either a synthesised SDS or the reason none exists for the identity schedule."""

    status: Literal["lu", "no_lu", "lup"]
    system: SystemDocument | None = None
    no_lu: NoLUReport | None = None
    permutation: list[int] | None = Field(None, description="Row i of P*T is row permutation[i]")
    verified: bool | None = None


class InverseReport(FieldDocument):
    system: SystemDocument
    verified: bool | None = None


class CycleEntry(BaseModel):
    length: int
    states: list[str]
    basin_size: int


class PhaseReport(FieldDocument):
    """Cycle inventory of a phase space."""

    n: int
    states: int
    cycles: list[CycleEntry]
    cycle_length_counts: dict[str, int]
    fixed_points: list[str]
    tail_depth: int
    transient_states: int
    bijective: bool
    fixed_points_agree: bool | None = None

    @classmethod
    def from_inventory(cls, inventory: dict[str, Any], **extra: Any) -> "PhaseReport":
        return cls(**inventory, **extra)


class ConstructiveReport(BaseModel):
    word_up: list[int]
    word_low: list[int]
    full: MatrixLiteral
    low: MatrixLiteral
    up: MatrixLiteral
    composition_holds: bool
    agrees: bool

    @classmethod
    def from_check(cls, check: ConstructiveCheck) -> "ConstructiveReport":
        return cls(
            word_up=list(check.word_up),
            word_low=list(check.word_low),
            full=check.full.to_literals(),
            low=check.low.to_literals(),
            up=check.up.to_literals(),
            composition_holds=check.composition_holds,
            agrees=check.agrees,
        )


class CutReport(FieldDocument):
    """Both sides of the cut identity for one chain-partition and cut."""

    chains: list[list[int]]
    h: list[int]
    j: MatrixLiteral
    compressed: MatrixLiteral
    compressed_low: MatrixLiteral
    compressed_up: MatrixLiteral
    lhs: MatrixLiteral
    rhs: MatrixLiteral
    holds: bool
    j_invertible: bool
    j_free_holds: bool | None = None
    via_sds: ConstructiveReport | None = None

    @classmethod
    def from_check(
        cls,
        cut: Cut,
        field: FieldSpec,
        check: CutIdentityCheck,
        constructive: ConstructiveCheck | None = None,
    ) -> "CutReport":
        return cls(
            field=field.to_json(),
            chains=[list(c) for c in cut.partition.chains],
            h=list(cut.h),
            j=check.j.to_literals(),
            compressed=check.compressed.to_literals(),
            compressed_low=check.compressed_low.to_literals(),
            compressed_up=check.compressed_up.to_literals(),
            lhs=check.lhs.to_literals(),
            rhs=check.rhs.to_literals(),
            holds=check.holds,
            j_invertible=check.j_invertible,
            j_free_holds=check.j_free_holds,
            via_sds=ConstructiveReport.from_check(constructive) if constructive else None,
        )

    @property
    def passed(self) -> bool:
        ok = self.holds and self.j_free_holds is not False
        return ok and (self.via_sds is None or self.via_sds.agrees)


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str | None = None


class SelftestReport(BaseModel):
    seed: int
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class ErrorReport(BaseModel):
    """Structured error written to stderr."""

    code: str
    message: str
    pointer: str | None = None
    details: dict[str, Any] | None = None
