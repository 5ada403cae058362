"""
JSON documents written by the CLI. Rationals are exact "p/q" strings.
"""
from typing import Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from .model import LinearSystem, Verdict
from .numeric import format_rational


class Counts(BaseModel):
    N: int
    P: int
    Q: int
    R: int
    E: int

    @classmethod
    def of(cls, system: LinearSystem) -> "Counts":
        return cls(**system.counts)


class Timing(BaseModel):
    total_s: float


class CaseInfo(BaseModel):
    index: int
    kind: str
    pair: Optional[List[int]] = None
    signs: Optional[List[str]] = None


class CheckReport(BaseModel):
    verdict: str
    case: Optional[CaseInfo] = None
    k0: Optional[str] = None
    witness: Optional[Dict[str, str]] = None
    counts: Counts
    alp_count: int
    repaired_rows: List[int] = Field(default_factory=list)
    oracle_agreement: Optional[bool] = None
    timing: Timing

    @classmethod
    def from_verdict(
        cls,
        system: LinearSystem,
        verdict: Verdict,
        elapsed: float,
        oracle_verdict: Optional[Verdict] = None,
    ) -> "CheckReport":
        case = None
        if verdict.feasible_case is not None:
            case = CaseInfo(index=verdict.case_index, **verdict.feasible_case.to_dict())
        witness = verdict.witness
        return cls(
            verdict=verdict.status.value,
            case=case,
            k0=format_rational(witness.k0) if witness and witness.k0 is not None else None,
            witness=witness.point_strings() if witness else None,
            counts=Counts.of(system),
            alp_count=verdict.alp_count,
            repaired_rows=list(verdict.repaired_rows),
            oracle_agreement=None if oracle_verdict is None else oracle_verdict.status is verdict.status,
            timing=Timing(total_s=round(elapsed, 6)),
        )


class NontrivialReport(CheckReport):
    subset: List[str]
    added_constraints: int
    augmented_constraints: int


class OracleReport(BaseModel):
    verdict: str
    assignment: Optional[int] = None
    witness: Optional[Dict[str, str]] = None
    counts: Counts
    oracle_cases: int
    timing: Timing

    @classmethod
    def from_verdict(cls, system: LinearSystem, verdict: Verdict, elapsed: float) -> "OracleReport":
        return cls(
            verdict=verdict.status.value,
            assignment=verdict.case_index,
            witness=verdict.witness.point_strings() if verdict.witness else None,
            counts=Counts.of(system),
            oracle_cases=verdict.alp_count,
            timing=Timing(total_s=round(elapsed, 6)),
        )


class ManifestCase(BaseModel):
    index: int
    file: str
    kind: str
    pair: Optional[List[int]] = None
    signs: Optional[List[str]] = None
    rows: int


class ReduceManifest(BaseModel):
    counts: Counts
    variables: List[str]
    alp_count: int
    cases: List[ManifestCase]

    @classmethod
    def from_bundle(cls, bundle, file_names: Sequence[str]) -> "ReduceManifest":
        cases = [
            ManifestCase(index=alp.index, file=name, rows=len(alp.rows), **alp.case.to_dict())
            for alp, name in zip(bundle.alps, file_names)
        ]
        return cls(
            counts=Counts.of(bundle.original),
            variables=list(bundle.variables),
            alp_count=len(bundle.alps),
            cases=cases,
        )


class BenchSummary(BaseModel):
    seed: int
    count: int
    agree: int
    disagree: int
    errors: int
    agreement: str
    decide_s: float
    oracle_s: float
    total_s: float


class SelfTestItem(BaseModel):
    name: str
    passed: bool
    detail: str


class SelfTestReport(BaseModel):
    passed: bool
    checks: List[SelfTestItem]
