"""
λc terms, stacks and processes.

Variables are binder-relative (de Bruijn) indices; display names ride along but
never take part in equality, so α-equivalent terms compare equal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterator, List, Mapping, Sequence, Set, Tuple, Union

from src.krivine.errors import OpenTermError


class InstructionKind(str, Enum):
    NONRESTRICTED = "a"
    RESTRICTED = "b"


@dataclass(frozen=True)
class Var:
    index: int
    name: str = field(default="", compare=False)


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Lam:
    body: "Term"
    name: str = field(default="", compare=False)


@dataclass(frozen=True)
class CC:
    pass


@dataclass(frozen=True)
class Cont:
    """The continuation constant k_π, only ever created by the machine."""

    stack: "Stack"


@dataclass(frozen=True)
class Instr:
    kind: InstructionKind
    index: int


Term = Union[Var, App, Lam, CC, Cont, Instr]


@dataclass(frozen=True)
class Bottom:
    index: int = 0


@dataclass(frozen=True)
class Push:
    head: Term
    tail: "Stack"


Stack = Union[Bottom, Push]


@dataclass(frozen=True)
class Process:
    head: Term
    stack: Stack


def nonrestricted(index: int) -> Instr:
    return Instr(InstructionKind.NONRESTRICTED, index)


def restricted(index: int) -> Instr:
    return Instr(InstructionKind.RESTRICTED, index)


def apply(fun: Term, *args: Term) -> Term:
    """Left-nested application `fun a1 ... an`."""
    for arg in args:
        fun = App(fun, arg)
    return fun


def stack_of(terms: Sequence[Term], bottom: int = 0) -> Stack:
    stack: Stack = Bottom(bottom)
    for term in reversed(terms):
        stack = Push(term, stack)
    return stack


def unwind(stack: Stack) -> Tuple[List[Term], Bottom]:
    """Split a stack into its elements (top first) and its bottom."""
    terms: List[Term] = []
    while isinstance(stack, Push):
        terms.append(stack.head)
        stack = stack.tail
    return terms, stack


def pop(stack: Stack, count: int) -> Tuple[List[Term], Stack] | None:
    """Take `count` elements off the top of the stack, or None if it is too short."""
    taken: List[Term] = []
    while len(taken) < count:
        if not isinstance(stack, Push):
            return None
        taken.append(stack.head)
        stack = stack.tail
    return taken, stack


def suffixes(stack: Stack) -> Iterator[Stack]:
    while isinstance(stack, Push):
        yield stack
        stack = stack.tail
    yield stack


def shift(term: Term, amount: int, cutoff: int = 0) -> Term:
    """Add `amount` to every free index at or above `cutoff`."""
    if amount == 0:
        return term
    match term:
        case Var(index, name):
            return Var(index + amount, name) if index >= cutoff else term
        case App(fun, arg):
            return App(shift(fun, amount, cutoff), shift(arg, amount, cutoff))
        case Lam(body, name):
            return Lam(shift(body, amount, cutoff + 1), name)
        case _:
            return term


def substitute(term: Term, bindings: Sequence[Tuple[Union[Var, int], Term]]) -> Term:
    """
    Simultaneous capture-avoiding substitution t[x1:=u1, ..., xn:=un].

    Variables are named by their free index at the top of `term`; the
    remaining free variables keep their indices.
    """
    mapping: Dict[int, Term] = {}
    for variable, replacement in bindings:
        index = variable.index if isinstance(variable, Var) else variable
        if index in mapping:
            raise ValueError(f"Variable bound twice in substitution: {index}")
        mapping[index] = replacement
    if not mapping:
        return term
    return _substitute(term, mapping, 0)


def _substitute(term: Term, mapping: Mapping[int, Term], depth: int) -> Term:
    match term:
        case Var(index, _):
            if index >= depth and index - depth in mapping:
                return shift(mapping[index - depth], depth)
            return term
        case App(fun, arg):
            return App(_substitute(fun, mapping, depth), _substitute(arg, mapping, depth))
        case Lam(body, name):
            return Lam(_substitute(body, mapping, depth + 1), name)
        case _:
            return term


def instantiate(body: Term, argument: Term) -> Term:
    """Beta step: replace index 0 of a lambda body and drop the binder."""
    return _instantiate(body, argument, 0)


def _instantiate(term: Term, argument: Term, depth: int) -> Term:
    match term:
        case Var(index, name):
            if index == depth:
                return shift(argument, depth)
            if index > depth:
                return Var(index - 1, name)
            return term
        case App(fun, arg):
            return App(_instantiate(fun, argument, depth), _instantiate(arg, argument, depth))
        case Lam(body, name):
            return Lam(_instantiate(body, argument, depth + 1), name)
        case _:
            return term


def free_indices(term: Term, depth: int = 0) -> Set[int]:
    match term:
        case Var(index, _):
            return {index - depth} if index >= depth else set()
        case App(fun, arg):
            return free_indices(fun, depth) | free_indices(arg, depth)
        case Lam(body, _):
            return free_indices(body, depth + 1)
        case _:
            return set()


def is_closed(term: Term) -> bool:
    return not free_indices(term)


def ensure_closed(term: Term) -> Term:
    if not is_closed(term):
        raise OpenTermError(f"Term has free variables: {sorted(free_indices(term))}")
    return term


def is_proof_like(term: Term) -> bool:
    """No continuation constant and no restricted instruction anywhere in the term."""
    match term:
        case App(fun, arg):
            return is_proof_like(fun) and is_proof_like(arg)
        case Lam(body, _):
            return is_proof_like(body)
        case Cont():
            return False
        case Instr(kind, _):
            return kind is InstructionKind.NONRESTRICTED
        case _:
            return True


def size(term: Term) -> int:
    match term:
        case App(fun, arg):
            return 1 + size(fun) + size(arg)
        case Lam(body, _):
            return 1 + size(body)
        case Cont(stack):
            return 1 + sum(size(t) for t in unwind(stack)[0])
        case _:
            return 1


def instructions(term: Term) -> Iterator[Instr]:
    match term:
        case Instr():
            yield term
        case App(fun, arg):
            yield from instructions(fun)
            yield from instructions(arg)
        case Lam(body, _):
            yield from instructions(body)
        case Cont(stack):
            yield from stack_instructions(stack)


def stack_instructions(stack: Stack) -> Iterator[Instr]:
    for term in unwind(stack)[0]:
        yield from instructions(term)


def process_instructions(process: Process) -> Iterator[Instr]:
    yield from instructions(process.head)
    yield from stack_instructions(process.stack)


def map_instructions(term: Term, replace: Callable[[Instr], Term]) -> Term:
    """Rebuild `term` with every instruction passed through `replace` (replacements must be closed)."""
    match term:
        case Instr():
            return replace(term)
        case App(fun, arg):
            return App(map_instructions(fun, replace), map_instructions(arg, replace))
        case Lam(body, name):
            return Lam(map_instructions(body, replace), name)
        case Cont(stack):
            return Cont(map_stack_instructions(stack, replace))
        case _:
            return term


def map_stack_instructions(stack: Stack, replace: Callable[[Instr], Term]) -> Stack:
    terms, bottom = unwind(stack)
    return stack_of([map_instructions(t, replace) for t in terms], bottom.index)


def map_process_instructions(process: Process, replace: Callable[[Instr], Term]) -> Process:
    return Process(map_instructions(process.head, replace), map_stack_instructions(process.stack, replace))
