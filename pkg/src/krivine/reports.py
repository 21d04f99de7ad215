"""
Report records. Every record serialises to one JSON line with `model_dump_json()`.
"""
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from src.krivine.machine import Stepped, StepOutcome
from src.krivine.multieval import In, Justification, PoleVerdict
from src.krivine.syntax import print_process


class Record(BaseModel):
    """The base class for every line-delimited output record."""

    record: str
    """Discriminates record types in a mixed stream."""


class Outcome(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    UNKNOWN = "unknown"


class InstanceOutcome(Record):
    record: str = "instance"
    check: str
    index: int
    instance: str
    outcome: Outcome
    depth: Optional[int] = None
    """In-depth of the conclusion, when it was found."""
    detail: str = ""
    """Counterexample or reason, for failures and unknowns."""
    replay: Optional[str] = None
    """A command line that re-runs just this instance."""


class CheckReport(Record):
    record: str = "check"
    check: str
    seed: Optional[int] = None
    bounds: Dict[str, int] = Field(default_factory=dict)
    instances: List[InstanceOutcome] = Field(default_factory=list)

    def add(self, instance: str, outcome: Outcome, depth: Optional[int] = None, detail: str = "") -> InstanceOutcome:
        entry = InstanceOutcome(
            check=self.check, index=len(self.instances), instance=instance, outcome=outcome, depth=depth, detail=detail
        )
        self.instances.append(entry)
        return entry

    def count(self, outcome: Outcome) -> int:
        return sum(1 for i in self.instances if i.outcome is outcome)

    @property
    def verdict(self) -> Outcome:
        if self.count(Outcome.FAIL):
            return Outcome.FAIL
        if self.instances and not self.count(Outcome.PASS):
            return Outcome.UNKNOWN
        return Outcome.PASS

    @property
    def failures(self) -> List[InstanceOutcome]:
        return [i for i in self.instances if i.outcome is Outcome.FAIL]

    def with_replay(self, command: str) -> "CheckReport":
        for failure in self.failures:
            failure.replay = f"{command} --instance {failure.index}"
        return self

    def summary(self) -> "CheckSummary":
        return CheckSummary(
            check=self.check,
            verdict=self.verdict,
            passed=self.count(Outcome.PASS),
            failed=self.count(Outcome.FAIL),
            unknown=self.count(Outcome.UNKNOWN),
            seed=self.seed,
            bounds=self.bounds,
        )


class CheckSummary(Record):
    record: str = "summary"
    check: str
    verdict: Outcome
    passed: int
    failed: int
    unknown: int
    seed: Optional[int] = None
    bounds: Dict[str, int] = Field(default_factory=dict)


class SuiteResult(Record):
    record: str = "suite"
    suite: str
    seed: int
    checks: List[CheckSummary] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.verdict is not Outcome.FAIL for c in self.checks)


class StepRecord(Record):
    record: str = "step"
    index: int
    rule: str
    head: str
    stack: str


def step_record(index: int, outcome: StepOutcome) -> StepRecord:
    if isinstance(outcome, Stepped):
        head, _, stack = print_process(outcome.next).partition(" * ")
        return StepRecord(index=index, rule=outcome.rule.value, head=head, stack=stack)
    head, _, stack = print_process(outcome.source).partition(" * ")
    return StepRecord(index=index, rule=f"stuck:{outcome.reason.value}", head=head, stack=stack)


class VerdictRecord(Record):
    record: str = "verdict"
    process: str
    verdict: Outcome
    depth: Optional[int] = None
    depth_cap: int
    justification: Optional[Dict[str, Any]] = None


def justification_tree(justification: Justification) -> Dict[str, Any]:
    return {
        "process": print_process(justification.process),
        "rule": justification.rule,
        "children": [justification_tree(c) for c in justification.children],
    }


def verdict_record(process_text: str, verdict: PoleVerdict, depth_cap: int, tree: bool = True) -> VerdictRecord:
    if isinstance(verdict, In):
        return VerdictRecord(
            process=process_text,
            verdict=Outcome.PASS,
            depth=verdict.depth,
            depth_cap=depth_cap,
            justification=justification_tree(verdict.justification) if tree else None,
        )
    return VerdictRecord(process=process_text, verdict=Outcome.UNKNOWN, depth_cap=depth_cap)


class ParsedRecord(Record):
    record: str = "parsed"
    kind: str
    text: str
    """The input printed back in the canonical grammar."""


class PoleRecord(Record):
    record: str = "pole"
    index: int
    members: List[str]


class ContentRecord(Record):
    record: str = "content"
    process: str
    radius: int
    indices: List[int]
    members: List[List[int]]
    maximal: List[List[int]]


class CoverRecord(Record):
    record: str = "cover"
    process: str
    radius: int
    verdict: Outcome
    cover: Optional[List[List[int]]] = None
    """The covering tuple, when one exists."""


class DerivationRecord(Record):
    record: str = "derivation"
    verdict: Outcome
    reason: str = ""
    realizer: Optional[str] = None
    realized: Optional[bool] = None
    """Whether the realizer passed the model check, when a model was given."""
