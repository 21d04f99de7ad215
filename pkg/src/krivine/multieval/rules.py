"""
Finitely presented multi-evaluation relations.

A RuleSet always contains the deterministic embedding ({p} ⊳ {q} when p ≻₁ q)
and any number of instruction schemas. Every left-hand side is a single process.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Protocol, Sequence, Tuple

from src.krivine.machine import successor
from src.krivine.syntax import Instr, Process, Stack, Term, pop

STEP_RULE = "step"

TargetFamily = List[Tuple[Process, ...]]


def targets(processes: Iterable[Process]) -> Tuple[Process, ...]:
    """An ordered successor set: duplicates removed, first occurrence kept."""
    return tuple(dict.fromkeys(processes))


@dataclass(frozen=True)
class RuleInstance:
    rule: str
    source: Process
    targets: Tuple[Process, ...]


class RuleSchema(Protocol):
    name: str

    def instances(self, process: Process) -> TargetFamily:
        ...


@dataclass(frozen=True)
class InstructionRule:
    """
    `instruction * t1 . ... . t_arity . π` relates to every successor set
    returned by `expand(arguments, π)`.
    """

    name: str
    instruction: Instr
    arity: int
    expand: Callable[[Sequence[Term], Stack], TargetFamily]

    def instances(self, process: Process) -> TargetFamily:
        if process.head != self.instruction:
            return []
        popped = pop(process.stack, self.arity)
        if popped is None:
            return []
        arguments, rest = popped
        return self.expand(arguments, rest)


class RuleSet:
    def __init__(self, schemas: Sequence[RuleSchema] = (), name: str = "deterministic") -> None:
        self.name = name
        self._schemas: Dict[str, RuleSchema] = {}
        for schema in schemas:
            if schema.name in self._schemas or schema.name == STEP_RULE:
                raise ValueError(f"Rule with this name already exists: {schema.name}")
            self._schemas[schema.name] = schema

    @property
    def schemas(self) -> List[RuleSchema]:
        return list(self._schemas.values())

    def instances(self, process: Process) -> List[RuleInstance]:
        found: List[RuleInstance] = []
        following = successor(process)
        if following is not None:
            found.append(RuleInstance(STEP_RULE, process, (following,)))
        for schema in self._schemas.values():
            for family in schema.instances(process):
                found.append(RuleInstance(schema.name, process, targets(family)))
        return found

    def __repr__(self) -> str:
        return f"RuleSet({self.name!r}, schemas={list(self._schemas)})"


DETERMINISTIC = RuleSet()
