"""
Falsity and truth values over a finite model.

Stack sets are bit masks over Π₀, a suffix-closed stack universe (by default
the stacks occurring in the world), and term sets are bit masks over the heads
of those stacks. For a fixed pole, `okmask[h]` holds the stacks s with h ⋆ s in
the pole; processes outside the world count as outside the pole. `realizes` is
the strict variant and refuses to answer when a process it needs is not in the
world.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import structlog

from src import settings
from src.krivine.errors import BoundExceeded, ResolutionError, WorldEscape
from src.krivine.logic.formulas import (
    Atom,
    Bot,
    Cap,
    Const,
    Cup,
    EqImplies,
    FOTerm,
    ForallInd,
    ForallPred,
    Formula,
    Implies,
    Top,
    free_ind,
    free_pred,
    implies,
    print_formula,
)
from src.krivine.logic.functions import DEFAULT_REGISTRY, FunctionRegistry, fo_value
from src.krivine.multieval import DETERMINISTIC, FiniteWorld, Pole, RuleSet, build_world, poles_of
from src.krivine.syntax import Process, Push, Stack, Term, print_process, suffixes

log = structlog.get_logger(__name__)

PredicateValue = Tuple[int, ...]


@dataclass(frozen=True)
class PredicateTable:
    """A predicate constant: argument tuples to stack sets. Missing tuples map to ∅."""

    name: str
    arity: int
    entries: Mapping[Tuple[int, ...], FrozenSet[Stack]] = field(default_factory=dict)


@dataclass(eq=False)
class _Node:
    formula: Formula
    children: Tuple["_Node", ...]
    ind: Tuple[str, ...]
    pred: Tuple[str, ...]


def _compile(formula: Formula, cache: Dict[Formula, _Node]) -> _Node:
    """Equal subformulas share one node, and so one memo entry per pole."""
    node = cache.get(formula)
    if node is not None:
        return node
    match formula:
        case Implies(left, right) | Cap(left, right) | Cup(left, right):
            children: Tuple[_Node, ...] = (_compile(left, cache), _compile(right, cache))
        case ForallInd(_, body) | ForallPred(_, _, body) | EqImplies(_, _, body):
            children = (_compile(body, cache),)
        case _:
            children = ()
    ind = tuple(sorted(free_ind(formula)))
    node = cache[formula] = _Node(formula, children, ind, tuple(sorted(free_pred(formula))))
    return node


class FiniteModel:
    """
    Individuals are {0..size-1}; function results are reduced modulo `size`.
    Poles default to every pole of `rules` over the world, and Π₀ to the
    suffixes of the world's stacks.
    """

    def __init__(
        self,
        size: int,
        world: FiniteWorld,
        poles: Optional[Sequence[Pole]] = None,
        rules: RuleSet = DETERMINISTIC,
        stacks: Optional[Iterable[Stack]] = None,
        tables: Iterable[PredicateTable] = (),
        registry: FunctionRegistry = DEFAULT_REGISTRY,
        table_limit: int = settings.TABLE_LIMIT,
    ) -> None:
        if size < 1:
            raise ValueError(f"Model size must be positive, got {size}")
        self.size = size
        self.world = world
        self.registry = registry
        self.table_limit = table_limit
        self.poles: List[Pole] = list(poles) if poles is not None else poles_of(rules, world)

        if stacks is None:
            stacks = [process.stack for process in world]
        self.stacks: Tuple[Stack, ...] = suffix_closure(stacks)
        self.stack_index = {s: i for i, s in enumerate(self.stacks)}
        self.full = (1 << len(self.stacks)) - 1

        heads: Dict[Term, None] = {}
        for stack in self.stacks:
            if isinstance(stack, Push):
                heads.setdefault(stack.head, None)
        self.heads: Tuple[Term, ...] = tuple(heads)
        self.head_index = {h: i for i, h in enumerate(self.heads)}
        self._cons = [
            (1 << i, self.head_index[s.head], self.stack_index[s.tail])
            for i, s in enumerate(self.stacks)
            if isinstance(s, Push)
        ]

        self.tables: Dict[str, Tuple[int, Dict[Tuple[int, ...], int]]] = {}
        for table in tables:
            if table.name in self.tables:
                raise ValueError(f"Predicate table already exists: {table.name}")
            self.tables[table.name] = (table.arity, {k: self.stack_mask(v) for k, v in table.entries.items()})

        self._compiled: Dict[Formula, _Node] = {}
        self._evaluators: Dict[int, _PoleEvaluator] = {}
        log.debug("model built", size=size, world=len(world), stacks=len(self.stacks), poles=len(self.poles))

    def stack_mask(self, stacks: Iterable[Stack]) -> int:
        mask = 0
        for stack in stacks:
            if stack not in self.stack_index:
                raise ResolutionError(f"Stack outside the model's stack universe: {stack!r}")
            mask |= 1 << self.stack_index[stack]
        return mask

    def stack_set(self, mask: int) -> FrozenSet[Stack]:
        return frozenset(s for i, s in enumerate(self.stacks) if mask >> i & 1)

    def value(self, term: FOTerm, env: Optional[Mapping[str, int]] = None) -> int:
        return fo_value(term, self.registry, self.size, env)

    def evaluator(self, pole_index: int) -> "_PoleEvaluator":
        found = self._evaluators.get(pole_index)
        if found is None:
            found = self._evaluators[pole_index] = _PoleEvaluator(self, self.poles[pole_index])
        return found

    def compiled(self, formula: Formula) -> _Node:
        return _compile(formula, self._compiled)


class _PoleEvaluator:
    def __init__(self, model: FiniteModel, pole: Pole) -> None:
        self.model = model
        self.pole = pole
        self.okmask = [0] * len(model.heads)
        for h, head in enumerate(model.heads):
            for s, stack in enumerate(model.stacks):
                if Process(head, stack) in pole:
                    self.okmask[h] |= 1 << s
        self._memo: Dict[Tuple[_Node, Tuple[int, ...], Tuple[PredicateValue, ...]], int] = {}

    def dual(self, stacks: int) -> int:
        """Heads h with h ⋆ s in the pole for every s in `stacks`."""
        result = 0
        for h, ok in enumerate(self.okmask):
            if stacks & ~ok == 0:
                result |= 1 << h
        return result

    def arrow(self, heads: int, stacks: int) -> int:
        """{t · π ∈ Π₀ : t ∈ heads, π ∈ stacks}"""
        result = 0
        for bit, h, tail in self.model._cons:
            if heads >> h & 1 and stacks >> tail & 1:
                result |= bit
        return result

    def falsity(self, node: _Node, ind: Dict[str, int], pred: Dict[str, PredicateValue]) -> int:
        key = (node, tuple(ind[v] for v in node.ind), tuple(pred[p] for p in node.pred))
        found = self._memo.get(key)
        if found is None:
            found = self._memo[key] = self._falsity(node, ind, pred)
        return found

    def _falsity(self, node: _Node, ind: Dict[str, int], pred: Dict[str, PredicateValue]) -> int:
        model = self.model
        match node.formula:
            case Top():
                return 0
            case Bot():
                return model.full
            case Atom(predicate, args):
                return pred[predicate][self._flat([model.value(a, ind) for a in args])]
            case Const(table, args):
                if table not in model.tables:
                    raise ResolutionError(f"Unknown predicate table: {table}")
                arity, masks = model.tables[table]
                if arity != len(args):
                    raise ResolutionError(f"Predicate table {table} takes {arity} arguments, got {len(args)}")
                return masks.get(tuple(model.value(a, ind) for a in args), 0)
            case Implies():
                left, right = node.children
                return self.arrow(self.dual(self.falsity(left, ind, pred)), self.falsity(right, ind, pred))
            case Cap():
                return self.falsity(node.children[0], ind, pred) | self.falsity(node.children[1], ind, pred)
            case Cup():
                return self.falsity(node.children[0], ind, pred) & self.falsity(node.children[1], ind, pred)
            case EqImplies(left, right, _):
                if model.value(left, ind) != model.value(right, ind):
                    return 0
                return self.falsity(node.children[0], ind, pred)
            case ForallInd(var, _):
                result = 0
                for value in range(model.size):
                    result |= self.falsity(node.children[0], {**ind, var: value}, pred)
                    if result == model.full:
                        break
                return result
            case ForallPred(var, arity, _):
                entries = model.size**arity
                space = (model.full + 1) ** entries
                if space > model.table_limit:
                    raise BoundExceeded(
                        f"Quantifying over {var} needs {space} predicate tables, the limit is {model.table_limit}"
                    )
                result = 0
                for table in product(range(model.full + 1), repeat=entries):
                    result |= self.falsity(node.children[0], ind, {**pred, var: table})
                    if result == model.full:
                        break
                return result
        raise TypeError(f"Not a formula: {node.formula!r}")

    def _flat(self, values: Sequence[int]) -> int:
        index = 0
        for value in values:
            index = index * self.model.size + value
        return index


def _require_closed(formula: Formula) -> None:
    if free_ind(formula) or free_pred(formula):
        names = sorted(free_ind(formula) | free_pred(formula))
        raise ResolutionError(f"Formula is not closed, free variables: {', '.join(names)}")


def falsity_mask(formula: Formula, pole_index: int, model: FiniteModel) -> int:
    _require_closed(formula)
    return model.evaluator(pole_index).falsity(model.compiled(formula), {}, {})


def falsity(formula: Formula, pole_index: int, model: FiniteModel) -> FrozenSet[Stack]:
    """‖A‖ for the pole at `pole_index`, as a subset of Π₀."""
    return model.stack_set(falsity_mask(formula, pole_index, model))


def truth(formula: Formula, pole_index: int, model: FiniteModel) -> FrozenSet[Term]:
    """|A| restricted to the heads of Π₀."""
    heads = model.evaluator(pole_index).dual(falsity_mask(formula, pole_index, model))
    return frozenset(h for i, h in enumerate(model.heads) if heads >> i & 1)


def _pole_indices(model: FiniteModel, scope: Optional[int]) -> Sequence[int]:
    return range(len(model.poles)) if scope is None else [scope]


def realizes(term: Term, formula: Formula, model: FiniteModel, scope: Optional[int] = None) -> bool:
    """
    t ⊩ A with respect to one pole (`scope` is its index) or to every pole of
    the model (`scope` is None).
    """
    for index in _pole_indices(model, scope):
        pole = model.poles[index]
        mask = falsity_mask(formula, index, model)
        for s, stack in enumerate(model.stacks):
            if not mask >> s & 1:
                continue
            process = Process(term, stack)
            if process not in model.world:
                raise WorldEscape(f"Realizability check needs {print_process(process)}, which is outside the world")
            if process not in pole:
                log.debug("not realized", formula=print_formula(formula), pole=index, process=print_process(process))
                return False
    return True


def sem_le(first: Formula, second: Formula, model: FiniteModel) -> bool:
    """A ⊴ B: ‖A‖ ⊇ ‖B‖ in every pole."""
    for index in range(len(model.poles)):
        a, b = falsity_mask(first, index, model), falsity_mask(second, index, model)
        if b & ~a:
            return False
    return True


def sem_eq(first: Formula, second: Formula, model: FiniteModel) -> bool:
    return all(
        falsity_mask(first, index, model) == falsity_mask(second, index, model) for index in range(len(model.poles))
    )


def equation_closed_form(left: FOTerm, right: FOTerm, model: FiniteModel, negated: bool = False) -> Formula:
    """
    Closed forms of a = b and a ≠ b for closed terms:
    a = b ≈ ∀X. X → X when the values agree and ⊤ → ⊥ otherwise;
    a ≠ b ≈ ⊥ when they agree and ⊤ otherwise.
    """
    equal = model.value(left) == model.value(right)
    if negated:
        return Bot() if equal else Top()
    return ForallPred("X", 0, Implies(Atom("X"), Atom("X"))) if equal else implies(Top(), Bot())


def suffix_closure(stacks: Iterable[Stack]) -> Tuple[Stack, ...]:
    order: Dict[Stack, None] = {}
    for stack in stacks:
        for suffix in suffixes(stack):
            order.setdefault(suffix, None)
    return tuple(order)


def probe_model(
    realizers: Sequence[Term],
    stacks: Iterable[Stack],
    size: int = 2,
    rules: RuleSet = DETERMINISTIC,
    tables: Iterable[PredicateTable] = (),
) -> FiniteModel:
    """
    A model whose Π₀ is the suffix closure of `stacks` and whose world is the
    rule closure of t ⋆ σ for every realizer t and every σ in Π₀, so that
    `realizes` never leaves the world for these realizers.
    """
    universe = suffix_closure(stacks)
    world = build_world([Process(t, s) for s in universe for t in realizers], rules)
    return FiniteModel(size, world, rules=rules, stacks=universe, tables=tables)
