"""
Finite evaluation relations, their axioms, closure, and the duality with pole sets.

A pair P ⊳ Q reads as the clause "Q ⊆ S implies P ∩ S ≠ ∅" on candidate poles S.
Cut is then resolution on the cut process and weakening is subsumption, so the
least evaluation relation containing a seed is computed by saturating the seed
under resolution and keeping the subsumption-minimal pairs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Deque, FrozenSet, Iterable, Iterator, List, Sequence, Set, Tuple, Union

import structlog

from src import settings
from src.krivine.errors import WorldTooLarge
from src.krivine.machine import successor
from src.krivine.multieval.rules import RuleSet
from src.krivine.multieval.world import FiniteWorld, require_validated
from src.krivine.syntax import Process, print_process

log = structlog.get_logger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class Pole:
    members: FrozenSet[Process]
    mask: int = field(compare=False, default=0)

    def __contains__(self, process: object) -> bool:
        return process in self.members

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class FiniteRelation:
    """
    Pairs of process sets over a world, as masks. With `upward_closed` the
    relation also contains every identity pair and every weakening of `pairs`.
    """

    world: FiniteWorld
    pairs: FrozenSet[Pair]
    upward_closed: bool = False

    @classmethod
    def from_sets(
        cls,
        world: FiniteWorld,
        pairs: Iterable[Tuple[Iterable[Process], Iterable[Process]]],
        upward_closed: bool = False,
    ) -> "FiniteRelation":
        return cls(world, frozenset((world.mask(p), world.mask(q)) for p, q in pairs), upward_closed)

    def holds(self, left: Iterable[Process], right: Iterable[Process]) -> bool:
        return self.holds_mask(self.world.mask(left), self.world.mask(right))

    def holds_mask(self, left: int, right: int) -> bool:
        if not self.upward_closed:
            return (left, right) in self.pairs
        if left & right:
            return True
        return any(p & ~left == 0 and q & ~right == 0 for p, q in self.pairs)

    def describe(self) -> List[str]:
        return sorted(_show_pair(self.world, pair) for pair in self.pairs)


def _show_pair(world: FiniteWorld, pair: Pair) -> str:
    left = ", ".join(print_process(p) for p in world.ordered(pair[0]))
    right = ", ".join(print_process(p) for p in world.ordered(pair[1]))
    return f"{{{left}}} ⊳ {{{right}}}"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def _supersets(mask: int, full: int) -> Iterator[int]:
    free = full & ~mask
    sub = free
    while True:
        yield mask | sub
        if sub == 0:
            return
        sub = (sub - 1) & free


def _submasks_by_size(mask: int) -> Iterator[int]:
    bits = list(_bits(mask))
    for size in range(len(bits) + 1):
        for chosen in combinations(bits, size):
            yield sum(chosen)


def _cut_conclusions(first: Pair, second: Pair) -> Iterator[Pair]:
    """Every conclusion of cut with `first` as P ⊳ Q∪{r} and `second` as P'∪{r} ⊳ Q'."""
    for r in _bits(first[1] & second[0]):
        for right in {first[1], first[1] & ~r}:
            for left in {second[0], second[0] & ~r}:
                yield first[0] | left, right | second[1]


def _resolvent(first: Pair, second: Pair, r: int) -> Pair:
    return first[0] | (second[0] & ~r), (first[1] & ~r) | second[1]


def _is_tautology(pair: Pair) -> bool:
    return bool(pair[0] & pair[1])


def _subsumes(general: Pair, specific: Pair) -> bool:
    return general[0] & ~specific[0] == 0 and general[1] & ~specific[1] == 0


# Axioms


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    instance: str


@dataclass
class AxiomReport:
    violations: List[AxiomViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def by_axiom(self, axiom: str) -> List[AxiomViolation]:
        return [v for v in self.violations if v.axiom == axiom]


def _embedding_pairs(world: FiniteWorld) -> List[Pair]:
    pairs = []
    for process in world:
        following = successor(process)
        if following is not None and following in world:
            pairs.append((world.bit(process), world.bit(following)))
    return pairs


def check_axioms(relation: FiniteRelation, world: FiniteWorld, limit: int = settings.CLOSURE_LIMIT) -> AxiomReport:
    """
    Report every violated instance of the deterministic embedding, identity, cut
    and weakening. Explicit relations are checked literally; upward-closed ones
    only need cut checked on their generating pairs.
    """
    require_validated(world)
    if len(world) > limit:
        raise WorldTooLarge(f"Axiom check is bounded to {limit} processes, world has {len(world)}")
    report = AxiomReport()

    def violate(axiom: str, pair: Pair) -> None:
        report.violations.append(AxiomViolation(axiom, _show_pair(world, pair)))

    for pair in _embedding_pairs(world):
        if not relation.holds_mask(*pair):
            violate("embedding", pair)
    for process in world:
        pair = (world.bit(process), world.bit(process))
        if not relation.holds_mask(*pair):
            violate("identity", pair)

    generators = sorted(relation.pairs)
    seen: Set[Pair] = set()
    for first in generators:
        for second in generators:
            for conclusion in _cut_conclusions(first, second):
                if conclusion not in seen and not relation.holds_mask(*conclusion):
                    seen.add(conclusion)
                    violate("cut", conclusion)

    if not relation.upward_closed:
        missing: Set[Pair] = set()
        for left, right in generators:
            for bigger_left in _supersets(left, world.full):
                for bigger_right in _supersets(right, world.full):
                    pair = (bigger_left, bigger_right)
                    if pair not in missing and not relation.holds_mask(*pair):
                        missing.add(pair)
                        violate("weakening", pair)

    log.info("axioms checked", world=len(world), pairs=len(relation.pairs), violations=len(report.violations))
    return report


# Closure


def _saturate(initial: Iterable[Pair]) -> FrozenSet[Pair]:
    basis: List[Pair] = []
    pending: Deque[Pair] = deque(initial)
    while pending:
        given = pending.popleft()
        if _is_tautology(given) or any(_subsumes(kept, given) for kept in basis):
            continue
        basis = [kept for kept in basis if not _subsumes(given, kept)]
        for kept in basis + [given]:
            for r in _bits(given[1] & kept[0]):
                pending.append(_resolvent(given, kept, r))
            for r in _bits(kept[1] & given[0]):
                pending.append(_resolvent(kept, given, r))
        basis.append(given)
    return frozenset(basis)


def minimal_pairs(pairs: Iterable[Pair]) -> FrozenSet[Pair]:
    candidates = sorted(
        {p for p in pairs if not _is_tautology(p)}, key=lambda p: (p[0].bit_count() + p[1].bit_count(), p)
    )
    kept: List[Pair] = []
    for pair in candidates:
        if not any(_subsumes(other, pair) for other in kept):
            kept.append(pair)
    return frozenset(kept)


def closure(seed: FiniteRelation, world: FiniteWorld, limit: int = settings.CLOSURE_LIMIT) -> FiniteRelation:
    """
    The least evaluation relation over `world` containing `seed`, the
    deterministic embedding and identity, closed under cut and weakening.
    """
    require_validated(world)
    if len(world) > limit:
        raise WorldTooLarge(f"Closure is bounded to {limit} processes, world has {len(world)}")
    basis = _saturate(list(seed.pairs) + _embedding_pairs(world))
    log.info("closure computed", world=len(world), seed=len(seed.pairs), basis=len(basis))
    return FiniteRelation(world, basis, upward_closed=True)


# Duality


def _instances(source: Union[RuleSet, FiniteRelation], world: FiniteWorld) -> List[Pair]:
    if isinstance(source, FiniteRelation):
        return sorted(source.pairs)
    pairs = []
    for process in world:
        for instance in source.instances(process):
            pairs.append((world.bit(process), world.mask(instance.targets)))
    return pairs


def is_pole(mask: int, instances: Sequence[Pair]) -> bool:
    return not any(mask & right == right and mask & left == 0 for left, right in instances)


def poles_of(
    source: Union[RuleSet, FiniteRelation], world: FiniteWorld, limit: int = settings.POLE_LIMIT
) -> List[Pole]:
    """Every subset S of the world with Q ⊆ S ⇒ P ∩ S ≠ ∅ for each pair P ⊳ Q."""
    require_validated(world)
    if len(world) > limit:
        raise WorldTooLarge(f"Pole enumeration is bounded to {limit} processes, world has {len(world)}")
    instances = _instances(source, world)
    poles = [Pole(world.members(mask), mask) for mask in range(1 << len(world)) if is_pole(mask, instances)]
    log.info("poles enumerated", world=len(world), instances=len(instances), poles=len(poles))
    return poles


def relation_of(structure: Sequence[Pole], world: FiniteWorld, limit: int = settings.CLOSURE_LIMIT) -> FiniteRelation:
    """P ⊳ Q iff every pole of `structure` containing Q meets P; kept as its minimal pairs."""
    if len(world) > limit:
        raise WorldTooLarge(f"Relation materialisation is bounded to {limit} processes, world has {len(world)}")
    masks = [pole.mask or world.mask(pole.members) for pole in structure]
    found: List[Pair] = []
    for right in _submasks_by_size(world.full):
        containing = [m for m in masks if m & right == right]
        lefts: List[int] = []
        for left in _submasks_by_size(world.full & ~right):
            if any(smaller & ~left == 0 for smaller in lefts):
                continue
            if all(left & m for m in containing):
                lefts.append(left)
        found.extend((left, right) for left in lefts)
    return FiniteRelation(world, minimal_pairs(found), upward_closed=True)
