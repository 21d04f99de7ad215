from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Tuple

import structlog

from src import settings
from src.krivine.errors import WorldNotValidated, WorldTooLarge
from src.krivine.multieval.rules import RuleSet
from src.krivine.syntax import Process, print_process

log = structlog.get_logger(__name__)


@dataclass(frozen=True)
class FiniteWorld:
    """
    A finite process universe. Subsets are handled as bit masks over
    `processes`, in the order the processes were listed.
    """

    processes: Tuple[Process, ...]
    validated: bool = field(default=False, compare=False)

    @cached_property
    def index(self) -> Dict[Process, int]:
        return {p: i for i, p in enumerate(self.processes)}

    @property
    def full(self) -> int:
        return (1 << len(self.processes)) - 1

    def __len__(self) -> int:
        return len(self.processes)

    def __iter__(self) -> Iterator[Process]:
        return iter(self.processes)

    def __contains__(self, process: object) -> bool:
        return process in self.index

    def bit(self, process: Process) -> int:
        return 1 << self.index[process]

    def mask(self, processes: Iterable[Process]) -> int:
        result = 0
        for process in processes:
            if process not in self.index:
                raise WorldNotValidated(f"Process outside the world: {print_process(process)}")
            result |= 1 << self.index[process]
        return result

    def members(self, mask: int) -> FrozenSet[Process]:
        return frozenset(self.ordered(mask))

    def ordered(self, mask: int) -> List[Process]:
        return [p for i, p in enumerate(self.processes) if mask >> i & 1]


def build_world(seeds: Iterable[Process], rules: RuleSet, limit: int = settings.WORLD_LIMIT) -> FiniteWorld:
    """Close `seeds` under the deterministic step and every rule successor."""
    order: Dict[Process, None] = {}
    queue = deque(seeds)
    while queue:
        process = queue.popleft()
        if process in order:
            continue
        order[process] = None
        if len(order) > limit:
            raise WorldTooLarge(f"World closure exceeds {limit} processes")
        for instance in rules.instances(process):
            queue.extend(t for t in instance.targets if t not in order)
    log.debug("world built", rules=rules.name, processes=len(order))
    return FiniteWorld(tuple(order), validated=True)


def validate_world(world: FiniteWorld, rules: RuleSet) -> FiniteWorld:
    """Check closure under `rules`; return the world marked as validated."""
    for process in world:
        for instance in rules.instances(process):
            escaped = [t for t in instance.targets if t not in world]
            if escaped:
                raise WorldNotValidated(
                    f"World is not closed under {instance.rule}: "
                    f"{print_process(process)} leads to {print_process(escaped[0])}"
                )
    return FiniteWorld(world.processes, validated=True)


def require_validated(world: FiniteWorld) -> None:
    if not world.validated:
        raise WorldNotValidated("World has not been validated against a rule set")
