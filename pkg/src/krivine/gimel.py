"""
The rule set in which ℷ2 has exactly 2^n elements, and the tools used to
collect consistency evidence for it.

    φ ⋆ t₀ · … · tₙ · π  ⊳₁ {tᵢ ⋆ π : i ≠ j}                  for each j
    χ ⋆ u · π            ⊳₁ {u ⋆ b(1,k) · … · b(n,k) · π : k}  b(i,k) = ⊤̄ iff i = k, else ⊥̄
    ⊥̄ ⋆ π                ⊳₁ ∅

γᵢ are inert restricted instructions standing for "⊤̄ or ⊥̄", resolved for a
set K of indices by `replace_K`. The content of a process is the family of K
for which the resolved process lands in the least pole.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from functools import partial
from itertools import combinations, combinations_with_replacement
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

import structlog
from pydantic import BaseModel, Field, model_validator

from src import settings
from src.krivine.errors import BoundExceeded, PreconditionError, UndeclaredIndex
from src.krivine.multieval import FiniteWorld, In, InstructionRule, PoleSearch, RuleSet, poles_of
from src.krivine.nondet import (
    Obligation,
    agreeing_probes,
    default_probes,
    discharge,
    probe_stacks,
    push_all,
    voting_obligation,
    voting_samples,
)
from src.krivine.reports import CheckReport, Outcome
from src.krivine.syntax import (
    CC,
    App,
    InstructionKind,
    Instr,
    Lam,
    Process,
    Stack,
    Term,
    Var,
    apply,
    map_process_instructions,
    nonrestricted,
    print_process,
    print_stack,
    print_term,
    process_instructions,
    restricted,
    stack_of,
)
from src.utils import powerset

log = structlog.get_logger(__name__)


class GimelConfig(BaseModel):
    n: int = Field(ge=1)
    """φ takes n + 1 arguments; χ pushes n."""
    phi: int = 0
    """Index of the nonrestricted instruction φ."""
    chi: int = 1
    """Index of the nonrestricted instruction χ."""
    fork: int = 2
    """Index of the nonrestricted instruction used by the fork and must presets."""
    top: int = 0
    """Index of the restricted instruction ⊤̄."""
    bottom: int = 1
    """Index of the restricted instruction ⊥̄."""
    gamma_offset: int = 2
    """γᵢ is the restricted instruction with index i + gamma_offset."""
    indices: List[int] = Field(default_factory=lambda: [0, 1])
    """The finite index set I."""

    @model_validator(mode="after")
    def _distinct_bindings(self) -> "GimelConfig":
        if len({self.phi, self.chi, self.fork}) != 3:
            raise ValueError(f"φ, χ and fork need distinct instructions, got {self.phi}, {self.chi}, {self.fork}")
        if self.top == self.bottom:
            raise ValueError(f"⊤̄ and ⊥̄ need distinct instructions, got {self.top}")
        if self.gamma_offset < 0 or any(i < 0 for i in self.indices):
            raise ValueError("γ indices and their offset must be non-negative")
        clash = {i + self.gamma_offset for i in self.indices} & {self.top, self.bottom}
        if clash:
            raise ValueError(f"γ instructions collide with ⊤̄ or ⊥̄: {sorted(clash)}")
        if len(set(self.indices)) != len(self.indices):
            raise ValueError(f"Repeated γ indices: {self.indices}")
        return self

    @property
    def phi_instr(self) -> Instr:
        return nonrestricted(self.phi)

    @property
    def chi_instr(self) -> Instr:
        return nonrestricted(self.chi)

    @property
    def fork_instr(self) -> Instr:
        return nonrestricted(self.fork)

    @property
    def top_instr(self) -> Instr:
        return restricted(self.top)

    @property
    def bottom_instr(self) -> Instr:
        return restricted(self.bottom)

    def gamma(self, index: int) -> Instr:
        return restricted(index + self.gamma_offset)

    def gamma_index(self, instr: Instr) -> Optional[int]:
        """The γ index of an instruction, or None when it is not a γ."""
        if instr.kind is not InstructionKind.RESTRICTED or instr.index in (self.top, self.bottom):
            return None
        if instr.index < self.gamma_offset:
            return None
        return instr.index - self.gamma_offset

    def with_indices(self, indices: Iterable[int]) -> "GimelConfig":
        return self.model_copy(update={"indices": sorted(set(indices))})


# Rules


def _vote(arguments: Sequence[Term], rest: Stack) -> List[Tuple[Process, ...]]:
    return [tuple(Process(t, rest) for i, t in enumerate(arguments) if i != j) for j in range(len(arguments))]


def _choose(cfg: GimelConfig, arguments: Sequence[Term], rest: Stack) -> List[Tuple[Process, ...]]:
    (u,) = arguments
    top, bottom = cfg.top_instr, cfg.bottom_instr
    return [
        tuple(
            Process(u, push_all([top if i == k else bottom for i in range(1, cfg.n + 1)], rest))
            for k in range(1, cfg.n + 1)
        )
    ]


def _absorb(arguments: Sequence[Term], rest: Stack) -> List[Tuple[Process, ...]]:
    return [()]


def _fork(arguments: Sequence[Term], rest: Stack) -> List[Tuple[Process, ...]]:
    return [(Process(t, rest),) for t in arguments]


def _must(arguments: Sequence[Term], rest: Stack) -> List[Tuple[Process, ...]]:
    return [tuple(Process(t, rest) for t in arguments)]


def bottom_rule(cfg: GimelConfig) -> InstructionRule:
    return InstructionRule("bottom", cfg.bottom_instr, 0, _absorb)


def gimel_rules(cfg: GimelConfig) -> RuleSet:
    return RuleSet(
        [
            InstructionRule("phi", cfg.phi_instr, cfg.n + 1, _vote),
            InstructionRule("chi", cfg.chi_instr, 1, partial(_choose, cfg)),
            bottom_rule(cfg),
        ],
        name=f"gimel-{cfg.n}",
    )


def fork_rules(cfg: GimelConfig) -> RuleSet:
    """ψ ⋆ u · v · π ⊳₁ {u ⋆ π} and ⊳₁ {v ⋆ π}, with ψ the fork instruction."""
    return RuleSet([InstructionRule("fork", cfg.fork_instr, 2, _fork), bottom_rule(cfg)], name="fork")


def must_rules(cfg: GimelConfig) -> RuleSet:
    """ψ ⋆ u · v · π ⊳₁ {u ⋆ π, v ⋆ π}"""
    return RuleSet([InstructionRule("must", cfg.fork_instr, 2, _must), bottom_rule(cfg)], name="must")


PRESETS = ("gimel1", "gimel2", "gimel3", "fork", "must")


def preset(name: str) -> Tuple[GimelConfig, RuleSet]:
    match name:
        case "gimel1" | "gimel2" | "gimel3":
            cfg = GimelConfig(n=int(name[-1]))
            return cfg, gimel_rules(cfg)
        case "fork":
            cfg = GimelConfig(n=1)
            return cfg, fork_rules(cfg)
        case "must":
            cfg = GimelConfig(n=1)
            return cfg, must_rules(cfg)
    raise ValueError(f"Unknown preset: {name}, expected one of {', '.join(PRESETS)}")


# Replacement and content


def occurring_indices(process: Process, cfg: GimelConfig) -> Set[int]:
    found = set()
    for instr in process_instructions(process):
        index = cfg.gamma_index(instr)
        if index is not None:
            found.add(index)
    return found


def replace_K(process: Process, chosen: Iterable[int], cfg: GimelConfig) -> Process:
    """p[K]: γᵢ becomes ⊤̄ when i ∈ K and ⊥̄ otherwise."""
    chosen = frozenset(chosen)
    declared = set(cfg.indices)
    if not chosen <= declared:
        raise UndeclaredIndex(f"K mentions indices outside I: {sorted(chosen - declared)}")

    def resolve(instr: Instr) -> Term:
        index = cfg.gamma_index(instr)
        if index is None:
            return instr
        if index not in declared:
            raise UndeclaredIndex(f"Process mentions γ{index}, which is not in I = {sorted(declared)}")
        return cfg.top_instr if index in chosen else cfg.bottom_instr

    return map_process_instructions(process, resolve)


@dataclass(frozen=True)
class ContentSet:
    process: Process
    radius: int
    members: FrozenSet[FrozenSet[int]]

    def __contains__(self, chosen: object) -> bool:
        return chosen in self.members

    def maximal(self) -> List[FrozenSet[int]]:
        return sorted((k for k in self.members if not any(k < other for other in self.members)), key=sorted)

    def downward_closed(self) -> bool:
        return all(frozenset(sub) in self.members for k in self.members for sub in combinations(sorted(k), len(k) - 1))


def content_r(
    process: Process, radius: int, cfg: GimelConfig, search: Optional[PoleSearch] = None
) -> ContentSet:
    """{K ⊆ I : p[K] is in the least pole within `radius` steps}"""
    indices = sorted(cfg.indices)
    if len(indices) > settings.INDEX_LIMIT:
        raise BoundExceeded(f"Content enumeration is bounded to {settings.INDEX_LIMIT} indices, I has {len(indices)}")
    stray = occurring_indices(process, cfg) - set(indices)
    if stray:
        raise UndeclaredIndex(f"Process mentions γ indices outside I: {sorted(stray)}")
    search = search or PoleSearch(gimel_rules(cfg))
    members = frozenset(
        frozenset(chosen) for chosen in powerset(indices) if search.is_in(replace_K(process, chosen, cfg), radius)
    )
    log.debug("content computed", process=print_process(process), radius=radius, members=len(members))
    return ContentSet(process, radius, members)


def is_sound(process: Process, cfg: GimelConfig) -> bool:
    """Written without ⊥̄."""
    return cfg.bottom_instr not in set(process_instructions(process))


@dataclass(frozen=True)
class CoverPass:
    radius: int


@dataclass(frozen=True)
class CoverFail:
    radius: int
    cover: Tuple[FrozenSet[int], ...]


CoverResult = Union[CoverPass, CoverFail]


def config_for(process: Process, cfg: GimelConfig) -> GimelConfig:
    """I = the indices occurring in the process plus n fresh ones."""
    occurring = occurring_indices(process, cfg)
    fresh: List[int] = []
    candidate = 0
    while len(fresh) < cfg.n:
        if candidate not in occurring and candidate + cfg.gamma_offset not in (cfg.top, cfg.bottom):
            fresh.append(candidate)
        candidate += 1
    return cfg.with_indices(occurring | set(fresh))


def cover_check(
    process: Process, radius: int, cfg: GimelConfig, search: Optional[PoleSearch] = None
) -> CoverResult:
    """Whether n members of the content can span all of I."""
    if not is_sound(process, cfg):
        raise PreconditionError(f"Cover check needs a sound process, got {print_process(process)}")
    spare = set(cfg.indices) - occurring_indices(process, cfg)
    if len(spare) < cfg.n:
        raise PreconditionError(f"I needs {cfg.n} indices not occurring in the process, it has {len(spare)}")
    content = content_r(process, radius, cfg, search)
    everything = frozenset(cfg.indices)
    for cover in combinations_with_replacement(content.maximal(), cfg.n):
        if frozenset().union(*cover) == everything:
            log.warning("content covers I", process=print_process(process), radius=radius)
            return CoverFail(radius, tuple(cover))
    return CoverPass(radius)


# Realizer checks


def chi_probes(cfg: GimelConfig) -> List[Tuple[str, Term]]:
    """
    Candidates u for χ ⋆ u · π. All but the projection realize ℷ2 ⊨ Aₙ; the
    projection is kept to show that the χ premises are not met for free.
    """
    n = cfg.n
    variables = [Var(n - 1 - i, f"x{i + 1}") for i in range(n)]

    def binders(body: Term) -> Term:
        for i in range(n, 0, -1):
            body = Lam(body, f"x{i}")
        return body

    return [
        ("bottom", cfg.bottom_instr),
        ("constant", binders(cfg.bottom_instr)),
        ("padded-vote", binders(apply(cfg.phi_instr, *variables, cfg.bottom_instr))),
        ("projection", binders(variables[0])),
    ]


def chi_obligation(cfg: GimelConfig, label: str, u: Term, stack: Stack) -> Obligation:
    (targets,) = _choose(cfg, [u], stack)
    return Obligation(label, Process(cfg.chi_instr, push_all([u], stack)), targets)


def check_gimel_realizers(
    cfg: GimelConfig,
    depth_cap: int = settings.DEPTH_CAP,
    slack: int = settings.VOTING_SLACK,
    seed: int = settings.DEFAULT_SEED,
    count: int = settings.DEFAULT_SAMPLES,
) -> CheckReport:
    """
    ⊥̄ realizes ⊥: ⊥̄ ⋆ π is in the pole at depth 1. φ is an (n+1)-voting
    instruction. χ ⋆ u · π is in the pole whenever every χ target for u is.
    """
    rules = gimel_rules(cfg)
    search = PoleSearch(rules)
    report = CheckReport(check=f"gimel-{cfg.n}-realizers", seed=seed, bounds={"depth_cap": depth_cap, "slack": slack})
    probes = default_probes(cfg.top_instr, cfg.bottom_instr)
    stacks = probe_stacks(probes)

    for stack in stacks:
        process = Process(cfg.bottom_instr, stack)
        verdict = search.membership(process, depth_cap)
        label = f"bottom: {print_process(process)}"
        if isinstance(verdict, In) and verdict.depth == 1:
            report.add(label, Outcome.PASS, depth=1)
        else:
            report.add(label, Outcome.FAIL, detail=f"expected depth 1, got {type(verdict).__name__}")

    samples = voting_samples(cfg.n + 1, count, seed, probes=probes, agreeing=agreeing_probes(cfg.bottom_instr))
    for sample in samples:
        obligation = voting_obligation(cfg.phi_instr, sample)
        discharge(report, search, replace(obligation, label=f"phi: {obligation.label}"), depth_cap, slack)

    for name, u in chi_probes(cfg):
        for stack in stacks:
            obligation = chi_obligation(cfg, f"chi: {name} u={print_term(u)} stack={print_stack(stack)}", u, stack)
            discharge(report, search, obligation, depth_cap, slack)

    log.info("gimel realizers checked", n=cfg.n, verdict=report.verdict.value, instances=len(report.instances))
    return report


# Least pole in a finite world


@dataclass(frozen=True)
class SmallestPole:
    by_search: FrozenSet[Process]
    by_intersection: FrozenSet[Process]

    @property
    def agree(self) -> bool:
        return self.by_search == self.by_intersection


def smallest_pole_members(world: FiniteWorld, rules: RuleSet, depth_cap: Optional[int] = None) -> SmallestPole:
    """
    The least pole restricted to a validated world, once by stratified search
    and once as the intersection of every pole of the world.
    """
    depth_cap = depth_cap if depth_cap is not None else len(world) + 1
    search = PoleSearch(rules)
    by_search = frozenset(p for p in world if search.is_in(p, depth_cap))
    poles = poles_of(rules, world)
    by_intersection = frozenset.intersection(*(pole.members for pole in poles)) if poles else frozenset(world)
    return SmallestPole(by_search, by_intersection)


# Random corpora


def random_term(
    rng: random.Random, size: int, cfg: GimelConfig, depth: int = 0, sound: bool = True, proof_like: bool = False
) -> Term:
    """A closed-under-`depth`-binders term with about `size` constructors."""
    atoms: List[Term] = [Var(i) for i in range(depth)] + [CC(), cfg.phi_instr, cfg.chi_instr]
    if not proof_like:
        atoms += [cfg.top_instr] + [cfg.gamma(i) for i in cfg.indices]
        if not sound:
            atoms.append(cfg.bottom_instr)
    if size <= 1:
        return rng.choice(atoms)
    if rng.random() < 0.4:
        return Lam(random_term(rng, size - 1, cfg, depth + 1, sound, proof_like), f"x{depth}")
    left = rng.randint(1, size - 2) if size > 2 else 1
    return App(
        random_term(rng, left, cfg, depth, sound, proof_like),
        random_term(rng, max(1, size - 1 - left), cfg, depth, sound, proof_like),
    )


def random_processes(
    cfg: GimelConfig, count: int, max_size: int = 12, seed: int = settings.DEFAULT_SEED, sound: bool = True
) -> List[Process]:
    rng = random.Random(seed)
    processes = []
    for _ in range(count):
        budget = rng.randint(1, max_size)
        stack_size = rng.randint(0, min(3, budget - 1))
        head = random_term(rng, budget - stack_size, cfg, sound=sound)
        stack = [random_term(rng, 1, cfg, sound=sound) for _ in range(stack_size)]
        processes.append(Process(head, stack_of(stack)))
    return processes


def random_proof_like(
    cfg: GimelConfig, count: int, max_size: int = 10, seed: int = settings.DEFAULT_SEED
) -> List[Term]:
    rng = random.Random(seed)
    return [random_term(rng, rng.randint(1, max_size), cfg, proof_like=True) for _ in range(count)]
