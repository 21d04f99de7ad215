"""
Stratified membership in the least pole of a rule set.

    ⫫_0     = ∅
    ⫫_(r+1) = { p : some rule instance {p} ⊳₁ Q has Q ⊆ ⫫_r }

Membership is an AND-OR search: OR over the instances applicable to p, AND over
the chosen successor set, memoised on (process, remaining depth). A process can
never justify itself, so cycles simply fail within the depth budget.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

import structlog

from src.krivine.multieval.rules import RuleInstance, RuleSet
from src.krivine.syntax import Process

log = structlog.get_logger(__name__)


@dataclass(frozen=True)
class Justification:
    process: Process
    rule: str
    children: Tuple["Justification", ...] = ()

    @property
    def depth(self) -> int:
        return 1 + max((child.depth for child in self.children), default=0)

    def nodes(self) -> int:
        return 1 + sum(child.nodes() for child in self.children)


@dataclass(frozen=True)
class In:
    depth: int
    justification: Justification


@dataclass(frozen=True)
class Unknown:
    depth_cap: int


PoleVerdict = Union[In, Unknown]


class PoleSearch:
    """One search context; its memo table may be reused across related queries."""

    def __init__(self, rules: RuleSet) -> None:
        self.rules = rules
        self._memo: Dict[Tuple[Process, int], Optional[Justification]] = {}
        self._instances: Dict[Process, List[RuleInstance]] = {}

    def instances(self, process: Process) -> List[RuleInstance]:
        found = self._instances.get(process)
        if found is None:
            found = self._instances[process] = self.rules.instances(process)
        return found

    def justify(self, process: Process, depth: int) -> Optional[Justification]:
        """A justification of `process` ∈ ⫫_depth, or None."""
        if depth <= 0:
            return None
        key = (process, depth)
        if key in self._memo:
            return self._memo[key]
        result: Optional[Justification] = None
        for instance in self.instances(process):
            children: List[Justification] = []
            for target in instance.targets:
                child = self.justify(target, depth - 1)
                if child is None:
                    break
                children.append(child)
            else:
                result = Justification(process, instance.rule, tuple(children))
                break
        self._memo[key] = result
        return result

    def membership(self, process: Process, depth_cap: int) -> PoleVerdict:
        for depth in range(1, depth_cap + 1):
            justification = self.justify(process, depth)
            if justification is not None:
                return In(depth, justification)
        return Unknown(depth_cap)

    def is_in(self, process: Process, depth_cap: int) -> bool:
        return isinstance(self.membership(process, depth_cap), In)


def pole_membership(rules: RuleSet, process: Process, depth_cap: int) -> PoleVerdict:
    verdict = PoleSearch(rules).membership(process, depth_cap)
    log.debug("pole membership", rules=rules.name, depth_cap=depth_cap, verdict=type(verdict).__name__)
    return verdict


def replay(justification: Justification, rules: RuleSet) -> bool:
    """Re-validate every node of a justification tree against a singleton-left rule instance."""
    children = tuple(child.process for child in justification.children)
    matched = any(
        instance.rule == justification.rule and set(instance.targets) == set(children)
        for instance in rules.instances(justification.process)
    )
    return matched and all(replay(child, rules) for child in justification.children)
