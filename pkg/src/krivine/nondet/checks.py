"""
Behavioral specification checks against the least pole of a rule set.

A check is a list of obligations "if every premise is in the pole, so is the
conclusion". Premises are searched within the depth cap and the conclusion
within the cap plus a slack. A premise that is not found makes the instance
unknown, never failed. Obligations without premises fail when the conclusion
is not found, and the failure records the bound it was searched to.
"""
import random
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import structlog

from src import settings
from src.krivine.adequacy import church
from src.krivine.errors import WorldEscape
from src.krivine.logic import FiniteModel, realizes
from src.krivine.multieval import In, PoleSearch, RuleSet
from src.krivine.nondet.kit import BOTTOM, FALSE, GUSTAVE_TABLE, OMEGA, TOP, TRUE, vote
from src.krivine.reports import CheckReport, Outcome
from src.krivine.syntax import (
    Bottom,
    Process,
    Push,
    Stack,
    Term,
    apply,
    parse_term,
    pop,
    print_process,
    print_stack,
    print_term,
)

log = structlog.get_logger(__name__)


def default_probes(top: Term = TOP, bottom: Term = BOTTOM) -> Tuple[Term, ...]:
    return (TRUE, FALSE, bottom, top, OMEGA, church(0), church(1), church(2))


def agreeing_probes(bottom: Term = BOTTOM) -> Tuple[Term, ...]:
    """Probes t with t ⋆ π in the pole for every π, once ⊥̄ ⋆ π ⊳ ∅ is a rule."""
    return (bottom, apply(parse_term(r"\x.x"), bottom), apply(parse_term(r"\x.\y.x"), bottom, OMEGA))


PROBES = default_probes()
AGREEING = agreeing_probes()


class BehaviorKind(str, Enum):
    FORK = "fork"
    MUST = "must"
    VOTING = "voting"
    PARALLEL_OR = "parallel-or"
    LEFT_OR = "left-or"
    RIGHT_OR = "right-or"
    GUSTAVE = "gustave"


# A row lists the arguments then the result: 0 is bool(0), 1 is bool(1), T is ⊤.
FAMILIES: Dict[BehaviorKind, Tuple[Tuple[str, ...], ...]] = {
    BehaviorKind.PARALLEL_OR: (("1", "T", "1"), ("T", "1", "1"), ("0", "0", "0")),
    BehaviorKind.LEFT_OR: (("0", "1", "1"), ("0", "0", "0"), ("1", "T", "1")),
    BehaviorKind.RIGHT_OR: (("1", "0", "1"), ("0", "0", "0"), ("T", "1", "1")),
    BehaviorKind.GUSTAVE: GUSTAVE_TABLE,
}


@dataclass(frozen=True)
class VotingSample:
    """φ ⋆ t₁ · … · tₙ · π against the premises tᵢ ⋆ π for i outside `excluded`."""

    arguments: Tuple[Term, ...]
    stack: Stack
    excluded: Tuple[int, ...]

    def describe(self) -> str:
        args = ", ".join(print_term(t) for t in self.arguments)
        return f"args=[{args}] stack={print_stack(self.stack)} excluded={list(self.excluded)}"


@dataclass(frozen=True)
class ChoiceSample:
    left: Term
    right: Term
    stack: Stack

    def describe(self) -> str:
        return f"u={print_term(self.left)} v={print_term(self.right)} stack={print_stack(self.stack)}"


@dataclass(frozen=True)
class BranchSample:
    """One row of a truth table, instantiated: arguments and a falsity probe for the result."""

    row: Tuple[str, ...]
    arguments: Tuple[Term, ...]
    stack: Stack

    @property
    def family(self) -> str:
        cells = ", ".join("⊤" if s == "T" else f"bool({s})" for s in self.row[:-1])
        return f"({cells}) -> bool({self.row[-1]})"

    def describe(self) -> str:
        args = ", ".join(print_term(t) for t in self.arguments)
        return f"{self.family} args=[{args}] stack={print_stack(self.stack)}"


@dataclass(frozen=True)
class Obligation:
    label: str
    conclusion: Process
    premises: Tuple[Process, ...] = ()


def push_all(terms: Sequence[Term], stack: Stack) -> Stack:
    for term in reversed(terms):
        stack = Push(term, stack)
    return stack


# Sampling


def probe_stacks(probes: Sequence[Term] = PROBES) -> Tuple[Stack, ...]:
    """Bottom stacks plus one-level pushes."""
    bottom = Bottom(0)
    return (bottom,) + tuple(Push(t, bottom) for t in probes)


def voting_samples(
    n: int,
    count: int = settings.DEFAULT_SAMPLES,
    seed: int = settings.DEFAULT_SEED,
    k: int = 1,
    probes: Sequence[Term] = PROBES,
    agreeing: Sequence[Term] = AGREEING,
) -> List[VotingSample]:
    """Samples whose kept arguments all agree on landing in the pole; the excluded ones are arbitrary probes."""
    rng = random.Random(seed)
    stacks = probe_stacks(probes)
    samples = []
    for _ in range(count):
        excluded = tuple(sorted(rng.sample(range(n), k)))
        arguments = tuple(rng.choice(probes) if i in excluded else rng.choice(agreeing) for i in range(n))
        samples.append(VotingSample(arguments, rng.choice(stacks), excluded))
    return samples


def choice_samples(
    count: int = settings.DEFAULT_SAMPLES, seed: int = settings.DEFAULT_SEED, probes: Sequence[Term] = PROBES
) -> List[ChoiceSample]:
    rng = random.Random(seed)
    pool = tuple(probes) + AGREEING
    stacks = probe_stacks(probes)
    return [ChoiceSample(rng.choice(pool), rng.choice(pool), rng.choice(stacks)) for _ in range(count)]


def result_probe(value: str, filler: Term, bottom: Term = BOTTOM) -> Stack:
    """A stack in the falsity value of bool(value): ⊥̄ in the chosen position, `filler` in the other."""
    if value == "1":
        return push_all((filler, bottom), Bottom(0))
    return push_all((bottom, filler), Bottom(0))


def branch_samples(
    rows: Sequence[Tuple[str, ...]],
    count: int = settings.DEFAULT_SAMPLES,
    seed: int = settings.DEFAULT_SEED,
    probes: Sequence[Term] = PROBES,
    bottom: Term = BOTTOM,
) -> List[BranchSample]:
    """
    Round-robin over the rows. A ⊤ argument is Ω on the first pass over the
    rows and a random probe afterwards.
    """
    rng = random.Random(seed)
    samples = []
    for i in range(max(count, len(rows))):
        row = rows[i % len(rows)]
        first_pass = i < len(rows)
        arguments = []
        for symbol in row[:-1]:
            match symbol:
                case "0":
                    arguments.append(FALSE)
                case "1":
                    arguments.append(TRUE)
                case _:
                    arguments.append(OMEGA if first_pass else rng.choice(probes))
        samples.append(BranchSample(row, tuple(arguments), result_probe(row[-1], rng.choice(probes), bottom)))
    return samples


# Obligations


def voting_obligation(phi: Term, sample: VotingSample) -> Obligation:
    premises = tuple(
        Process(t, sample.stack) for i, t in enumerate(sample.arguments) if i not in sample.excluded
    )
    return Obligation(sample.describe(), Process(phi, push_all(sample.arguments, sample.stack)), premises)


def choice_obligations(psi: Term, sample: ChoiceSample, must: bool) -> List[Obligation]:
    conclusion = Process(psi, push_all((sample.left, sample.right), sample.stack))
    left, right = Process(sample.left, sample.stack), Process(sample.right, sample.stack)
    if must:
        return [Obligation(sample.describe(), conclusion, (left, right))]
    return [
        Obligation(f"{sample.describe()} branch=u", conclusion, (left,)),
        Obligation(f"{sample.describe()} branch=v", conclusion, (right,)),
    ]


def branch_obligation(candidate: Term, sample: BranchSample) -> Obligation:
    return Obligation(sample.describe(), Process(candidate, push_all(sample.arguments, sample.stack)))


def discharge(
    report: CheckReport, search: PoleSearch, obligation: Obligation, depth_cap: int, slack: int
) -> Outcome:
    for premise in obligation.premises:
        if not isinstance(search.membership(premise, depth_cap), In):
            report.add(
                obligation.label,
                Outcome.UNKNOWN,
                detail=f"premise {print_process(premise)} not found within depth {depth_cap}",
            )
            return Outcome.UNKNOWN
    bound = depth_cap + slack if obligation.premises else depth_cap
    verdict = search.membership(obligation.conclusion, bound)
    if isinstance(verdict, In):
        report.add(obligation.label, Outcome.PASS, depth=verdict.depth)
        return Outcome.PASS
    log.info("obligation failed", check=report.check, instance=obligation.label, bound=bound)
    report.add(
        obligation.label,
        Outcome.FAIL,
        detail=f"{print_process(obligation.conclusion)} not in the pole within depth {bound}",
    )
    return Outcome.FAIL


def _run(
    check: str,
    obligations: Sequence[Obligation],
    rules: RuleSet,
    depth_cap: int,
    slack: int,
    seed: Optional[int],
) -> CheckReport:
    report = CheckReport(check=check, seed=seed, bounds={"depth_cap": depth_cap, "slack": slack})
    search = PoleSearch(rules)
    for obligation in obligations:
        discharge(report, search, obligation, depth_cap, slack)
    log.info("check finished", check=check, verdict=report.verdict.value, instances=len(report.instances))
    return report


def check_voting(
    phi: Term,
    n: int,
    rules: RuleSet,
    samples: Optional[Sequence[VotingSample]] = None,
    depth_cap: int = settings.DEPTH_CAP,
    slack: int = settings.VOTING_SLACK,
    seed: int = settings.DEFAULT_SEED,
    count: int = settings.DEFAULT_SAMPLES,
) -> CheckReport:
    """{φ ⋆ t₁ · … · tₙ · π} ⊳ {tᵢ ⋆ π : i ≠ j} on every sample."""
    if samples is None:
        samples = voting_samples(n, count, seed)
    for sample in samples:
        if len(sample.arguments) != n:
            raise ValueError(f"Voting sample has {len(sample.arguments)} arguments, expected {n}")
    obligations = [voting_obligation(phi, s) for s in samples]
    return _run(f"voting-{n}", obligations, rules, depth_cap, slack, seed)


def default_samples(
    kind: BehaviorKind,
    count: int = settings.DEFAULT_SAMPLES,
    seed: int = settings.DEFAULT_SEED,
    n: int = 3,
    k: int = 1,
) -> List[object]:
    match kind:
        case BehaviorKind.FORK | BehaviorKind.MUST:
            return list(choice_samples(count, seed))
        case BehaviorKind.VOTING:
            return list(voting_samples(n, count, seed, k))
        case _:
            return list(branch_samples(FAMILIES[kind], count, seed))


def sample_of_instance(kind: BehaviorKind, index: int) -> int:
    """The sample behind a report instance; fork checks record two branches per sample."""
    return index // 2 if kind is BehaviorKind.FORK else index


def check_behavior(
    kind: BehaviorKind,
    candidate: Term,
    rules: RuleSet,
    samples: Optional[Sequence[object]] = None,
    depth_cap: int = settings.DEPTH_CAP,
    slack: int = settings.VOTING_SLACK,
    seed: int = settings.DEFAULT_SEED,
    count: int = settings.DEFAULT_SAMPLES,
    n: int = 3,
    k: int = 1,
) -> CheckReport:
    if samples is None:
        samples = default_samples(kind, count, seed, n, k)
    obligations: List[Obligation] = []
    match kind:
        case BehaviorKind.FORK | BehaviorKind.MUST:
            must = kind is BehaviorKind.MUST
            for sample in samples:
                obligations.extend(choice_obligations(candidate, sample, must))  # type: ignore[arg-type]
            name = kind.value
        case BehaviorKind.VOTING:
            obligations = [voting_obligation(candidate, s) for s in samples]  # type: ignore[arg-type]
            name = f"voting-{n}-{k}"
        case _:
            obligations = [branch_obligation(candidate, s) for s in samples]  # type: ignore[arg-type]
            name = kind.value
    return _run(name, obligations, rules, depth_cap, slack, seed)


def failed_families(report: CheckReport) -> List[str]:
    """The truth-table rows with at least one failed instance, in first-failure order."""
    found: Dict[str, None] = {}
    for failure in report.failures:
        found.setdefault(failure.instance.split(" args=")[0], None)
    return list(found)


# Exhaustive mode over a finite world


def is_voting_modulo(phi: Term, n: int, model: FiniteModel, pole_index: int, k: int = 1) -> bool:
    """
    Whether every instance φ ⋆ t₁ · … · tₙ · π with the stack in Π₀ satisfies
    the voting clause against this pole. Premises outside the world count as
    outside the pole.
    """
    pole = model.poles[pole_index]
    for stack in model.stacks:
        popped = pop(stack, n)
        if popped is None:
            continue
        arguments, rest = popped
        conclusion = Process(phi, stack)
        for excluded in combinations(range(n), k):
            if not all(Process(t, rest) in pole for i, t in enumerate(arguments) if i not in excluded):
                continue
            if conclusion not in model.world:
                raise WorldEscape(f"Voting check needs {print_process(conclusion)}, which is outside the world")
            if conclusion not in pole:
                return False
    return True


def check_voting_exhaustive(phi: Term, n: int, model: FiniteModel, k: int = 1) -> CheckReport:
    """Per pole: φ realizes the voting formula iff φ is a voting instruction modulo that pole."""
    bounds = {"poles": len(model.poles), "stacks": len(model.stacks)}
    report = CheckReport(check=f"voting-exhaustive-{n}", bounds=bounds)
    formula = vote(n, k)
    for index, pole in enumerate(model.poles):
        realizer = realizes(phi, formula, model, scope=index)
        voting = is_voting_modulo(phi, n, model, index, k)
        detail = f"realizes={realizer} voting={voting}"
        outcome = Outcome.PASS if realizer == voting else Outcome.FAIL
        report.add(f"pole {index} ({len(pole)} processes)", outcome, detail=detail)
    log.info("exhaustive voting check", n=n, poles=len(model.poles), verdict=report.verdict.value)
    return report
