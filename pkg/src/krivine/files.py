"""
JSON input files: rule configurations, worlds, models and explicit sample lists.
Every file is a pydantic model; term, stack and process fields use the text
grammar.
"""
from pathlib import Path
from typing import List, Literal, Optional, Sequence, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, Field, ValidationError

from src.krivine.errors import ParseError
from src.krivine.gimel import GimelConfig, fork_rules, gimel_rules, must_rules, preset
from src.krivine.logic import FiniteModel, PredicateTable, probe_model, suffix_closure
from src.krivine.multieval import DETERMINISTIC, FiniteWorld, RuleSet, build_world, validate_world
from src.krivine.nondet import BranchSample, ChoiceSample, VotingSample
from src.krivine.syntax import Process, Stack, Term, parse_process, parse_stack, parse_term

M = TypeVar("M", bound=BaseModel)


class RulesFile(BaseModel):
    preset: Optional[str] = None
    """One of gimel1, gimel2, gimel3, fork, must. Wins over `kind`."""
    kind: Literal["deterministic", "gimel", "fork", "must"] = "deterministic"
    config: Optional[GimelConfig] = None

    def resolve(self) -> Tuple[Optional[GimelConfig], RuleSet]:
        if self.preset is not None:
            return preset(self.preset)
        if self.kind == "deterministic":
            return self.config, DETERMINISTIC
        cfg = self.config or GimelConfig(n=2)
        builder = {"gimel": gimel_rules, "fork": fork_rules, "must": must_rules}[self.kind]
        return cfg, builder(cfg)


class WorldFile(BaseModel):
    processes: List[str]
    rules: RulesFile = Field(default_factory=RulesFile)
    close: bool = False
    """Close the listed processes under the rules instead of validating them."""

    def load(self) -> Tuple[FiniteWorld, RuleSet]:
        _, rules = self.rules.resolve()
        processes = [parse_process(p) for p in self.processes]
        if self.close:
            return build_world(processes, rules), rules
        return validate_world(FiniteWorld(tuple(dict.fromkeys(processes))), rules), rules


class TableRow(BaseModel):
    args: List[int]
    stacks: List[int]
    """Positions in the model file's `stacks` list."""


class TableEntry(BaseModel):
    name: str
    arity: int = Field(ge=0)
    rows: List[TableRow] = Field(default_factory=list)

    def table(self, stacks: Sequence[Stack]) -> PredicateTable:
        entries = {}
        for row in self.rows:
            if len(row.args) != self.arity:
                raise ParseError(f"Table {self.name} takes {self.arity} arguments, row has {row.args}")
            if any(not 0 <= i < len(stacks) for i in row.stacks):
                raise ParseError(f"Table {self.name} refers to a missing stack: {row.stacks}")
            entries[tuple(row.args)] = frozenset(stacks[i] for i in row.stacks)
        return PredicateTable(self.name, self.arity, entries)


class ModelFile(BaseModel):
    size: int = Field(default=2, ge=1)
    stacks: List[str]
    """Π₀, before suffix closure."""
    rules: RulesFile = Field(default_factory=RulesFile)
    tables: List[TableEntry] = Field(default_factory=list)
    world: List[str] = Field(default_factory=list)
    """Processes added to the world besides every realizer against every stack."""


class VotingEntry(BaseModel):
    args: List[str]
    stack: str = "e0"
    excluded: List[int] = Field(default_factory=lambda: [0])

    def sample(self) -> VotingSample:
        return VotingSample(
            tuple(parse_term(a) for a in self.args), parse_stack(self.stack), tuple(sorted(self.excluded))
        )


class ChoiceEntry(BaseModel):
    u: str
    v: str
    stack: str = "e0"

    def sample(self) -> ChoiceSample:
        return ChoiceSample(parse_term(self.u), parse_term(self.v), parse_stack(self.stack))


class BranchEntry(BaseModel):
    row: List[str]
    args: List[str]
    stack: str

    def sample(self) -> BranchSample:
        return BranchSample(tuple(self.row), tuple(parse_term(a) for a in self.args), parse_stack(self.stack))


class SamplesFile(BaseModel):
    voting: List[VotingEntry] = Field(default_factory=list)
    choice: List[ChoiceEntry] = Field(default_factory=list)
    branch: List[BranchEntry] = Field(default_factory=list)

    def samples(self) -> List[object]:
        entries: List[Union[VotingEntry, ChoiceEntry, BranchEntry]] = [*self.voting, *self.choice, *self.branch]
        return [e.sample() for e in entries]


def read_model(path: Union[str, Path], model: Type[M]) -> M:
    text = Path(path).read_text()
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"{path}: invalid {model.__name__}: {e.error_count()} error(s)\n{e}") from e


def load_model(spec: ModelFile, realizers: Sequence[Term]) -> FiniteModel:
    _, rules = spec.rules.resolve()
    stacks = [parse_stack(s) for s in spec.stacks]
    tables = [entry.table(stacks) for entry in spec.tables]
    if not spec.world:
        return probe_model(realizers, stacks, spec.size, rules, tables)
    universe = suffix_closure(stacks)
    seeds = [Process(t, s) for s in universe for t in realizers] + [parse_process(p) for p in spec.world]
    return FiniteModel(spec.size, build_world(seeds, rules), rules=rules, stacks=universe, tables=tables)
