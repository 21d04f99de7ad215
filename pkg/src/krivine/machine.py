"""
The Krivine abstract machine: deterministic weak-head evaluation of processes.

    push     t u * π       >  t * u . π
    grab     \\x.t * u . π  >  t[x:=u] * π
    save     cc * t . π    >  t * k_π . π
    restore  k_π' * t . π  >  t * π'

Instructions are inert constants: a process headed by one is stuck.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, List, Union

import structlog

from src.krivine.errors import OpenTermError
from src.krivine.syntax import CC, App, Cont, Instr, Lam, Process, Push, Var, instantiate, print_process

log = structlog.get_logger(__name__)


class Rule(str, Enum):
    PUSH = "push"
    GRAB = "grab"
    SAVE = "save"
    RESTORE = "restore"


class StuckReason(str, Enum):
    BARE_INSTRUCTION = "bare-instruction"
    EMPTY_STACK_ABSTRACTION = "empty-stack-abstraction"
    BOTTOM_REACHED = "bottom-reached"
    CONTINUATION_EMPTY_STACK = "continuation-empty-stack"


@dataclass(frozen=True)
class Stepped:
    source: Process
    next: Process
    rule: Rule


@dataclass(frozen=True)
class Stuck:
    source: Process
    reason: StuckReason


StepOutcome = Union[Stepped, Stuck]


def step(process: Process) -> StepOutcome:
    head, stack = process.head, process.stack
    match head:
        case App(fun, arg):
            return Stepped(process, Process(fun, Push(arg, stack)), Rule.PUSH)
        case Lam(body, _):
            if isinstance(stack, Push):
                return Stepped(process, Process(instantiate(body, stack.head), stack.tail), Rule.GRAB)
            return Stuck(process, StuckReason.EMPTY_STACK_ABSTRACTION)
        case CC():
            if isinstance(stack, Push):
                return Stepped(process, Process(stack.head, Push(Cont(stack.tail), stack.tail)), Rule.SAVE)
            return Stuck(process, StuckReason.BOTTOM_REACHED)
        case Cont(saved):
            if isinstance(stack, Push):
                return Stepped(process, Process(stack.head, saved), Rule.RESTORE)
            return Stuck(process, StuckReason.CONTINUATION_EMPTY_STACK)
        case Instr():
            return Stuck(process, StuckReason.BARE_INSTRUCTION)
        case Var(index, name):
            raise OpenTermError(f"Process head is a free variable: {name or index}")
    raise TypeError(f"Not a term: {head!r}")


def successor(process: Process) -> Process | None:
    outcome = step(process)
    return outcome.next if isinstance(outcome, Stepped) else None


@dataclass
class Trace:
    initial: Process
    steps: List[StepOutcome] = field(default_factory=list)
    fuel_used: int = 0

    @property
    def final(self) -> Process:
        for outcome in reversed(self.steps):
            if isinstance(outcome, Stepped):
                return outcome.next
        return self.initial

    @property
    def stuck(self) -> Stuck | None:
        if self.steps and isinstance(self.steps[-1], Stuck):
            return self.steps[-1]
        return None

    @property
    def exhausted(self) -> bool:
        """Fuel ran out before the machine got stuck."""
        return self.stuck is None

    def processes(self) -> List[Process]:
        return [self.initial] + [s.next for s in self.steps if isinstance(s, Stepped)]


def iter_steps(process: Process, fuel: int) -> Iterator[StepOutcome]:
    """Yield outcomes until the machine is stuck or `fuel` steps have been taken."""
    if fuel < 0:
        raise ValueError(f"Fuel must be non-negative: {fuel}")
    current = process
    for _ in range(fuel):
        outcome = step(current)
        yield outcome
        if isinstance(outcome, Stuck):
            return
        current = outcome.next
    # Out of fuel: report whether the last process would have been stuck anyway.
    last = step(current)
    if isinstance(last, Stuck):
        yield last


def run(process: Process, fuel: int) -> Trace:
    trace = Trace(process)
    for outcome in iter_steps(process, fuel):
        trace.steps.append(outcome)
        if isinstance(outcome, Stepped):
            trace.fuel_used += 1
    log.debug("run finished", fuel=fuel, used=trace.fuel_used, stuck=trace.stuck is not None)
    return trace


def reaches(process: Process, target: Process, fuel: int) -> bool:
    """Whether `target` appears among the first `fuel` steps from `process`."""
    current = process
    for _ in range(fuel + 1):
        if current == target:
            return True
        following = successor(current)
        if following is None:
            return False
        current = following
    return False


def format_outcome(outcome: StepOutcome) -> str:
    """`rule | head | stack` line used by the text trace format."""
    if isinstance(outcome, Stepped):
        head, _, stack = print_process(outcome.next).partition(" * ")
        return f"{outcome.rule.value} | {head} | {stack}"
    head, _, stack = print_process(outcome.source).partition(" * ")
    return f"stuck:{outcome.reason.value} | {head} | {stack}"
