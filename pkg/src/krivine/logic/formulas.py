"""
The realizability language: first-order terms and second-order formulas.

Bound variables are named; `alpha_equal` compares formulas up to renaming of
bound variables of either order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Mapping, Sequence, Tuple, Union


@dataclass(frozen=True)
class FOVar:
    name: str


@dataclass(frozen=True)
class FOApp:
    symbol: str
    args: Tuple["FOTerm", ...] = ()


FOTerm = Union[FOVar, FOApp]


@dataclass(frozen=True)
class Atom:
    """A predicate variable applied to first-order terms."""

    predicate: str
    args: Tuple[FOTerm, ...] = ()


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForallInd:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ForallPred:
    var: str
    arity: int
    body: "Formula"


@dataclass(frozen=True)
class EqImplies:
    """(a = b) ↪ A"""

    left: FOTerm
    right: FOTerm
    body: "Formula"


@dataclass(frozen=True)
class Cap:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Cup:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Const:
    """A predicate constant, resolved against the model's tables."""

    table: str
    args: Tuple[FOTerm, ...] = ()


Formula = Union[Atom, Top, Bot, Implies, ForallInd, ForallPred, EqImplies, Cap, Cup, Const]

ZERO = FOApp("0")


def succ(term: FOTerm) -> FOTerm:
    return FOApp("s", (term,))


def numeral(n: int) -> FOTerm:
    term: FOTerm = ZERO
    for _ in range(n):
        term = succ(term)
    return term


def fo(symbol: str, *args: FOTerm) -> FOTerm:
    return FOApp(symbol, tuple(args))


def atom(predicate: str, *args: FOTerm) -> Atom:
    return Atom(predicate, tuple(args))


def implies(*parts: Formula) -> Formula:
    """Right-nested implication A1 → A2 → ... → An."""
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = Implies(part, result)
    return result


def caps(*parts: Formula) -> Formula:
    result = parts[0]
    for part in parts[1:]:
        result = Cap(result, part)
    return result


def foralls(names: Sequence[str], body: Formula) -> Formula:
    for name in reversed(names):
        body = ForallInd(name, body)
    return body


# Free variables


def term_vars(term: FOTerm) -> FrozenSet[str]:
    match term:
        case FOVar(name):
            return frozenset({name})
        case FOApp(_, args):
            return frozenset().union(*(term_vars(a) for a in args)) if args else frozenset()
    raise TypeError(f"Not a first-order term: {term!r}")


def _terms_vars(terms: Iterable[FOTerm]) -> FrozenSet[str]:
    return frozenset().union(*(term_vars(t) for t in terms))


@lru_cache(maxsize=None)
def free_ind(formula: Formula) -> FrozenSet[str]:
    match formula:
        case Atom(_, args) | Const(_, args):
            return _terms_vars(args)
        case Top() | Bot():
            return frozenset()
        case Implies(left, right) | Cap(left, right) | Cup(left, right):
            return free_ind(left) | free_ind(right)
        case ForallInd(var, body):
            return free_ind(body) - {var}
        case ForallPred(_, _, body):
            return free_ind(body)
        case EqImplies(left, right, body):
            return term_vars(left) | term_vars(right) | free_ind(body)
    raise TypeError(f"Not a formula: {formula!r}")


@lru_cache(maxsize=None)
def free_pred(formula: Formula) -> FrozenSet[str]:
    match formula:
        case Atom(predicate, _):
            return frozenset({predicate})
        case Top() | Bot() | Const():
            return frozenset()
        case Implies(left, right) | Cap(left, right) | Cup(left, right):
            return free_pred(left) | free_pred(right)
        case ForallInd(_, body) | EqImplies(_, _, body):
            return free_pred(body)
        case ForallPred(var, _, body):
            return free_pred(body) - {var}
    raise TypeError(f"Not a formula: {formula!r}")


def is_closed(formula: Formula) -> bool:
    return not free_ind(formula) and not free_pred(formula)


def predicate_arities(formula: Formula, name: str) -> FrozenSet[int]:
    """Arities at which the free predicate variable `name` is used."""
    match formula:
        case Atom(predicate, args):
            return frozenset({len(args)}) if predicate == name else frozenset()
        case Top() | Bot() | Const():
            return frozenset()
        case Implies(left, right) | Cap(left, right) | Cup(left, right):
            return predicate_arities(left, name) | predicate_arities(right, name)
        case ForallInd(_, body) | EqImplies(_, _, body):
            return predicate_arities(body, name)
        case ForallPred(var, _, body):
            return frozenset() if var == name else predicate_arities(body, name)
    raise TypeError(f"Not a formula: {formula!r}")


def fresh(base: str, avoid: Iterable[str]) -> str:
    taken = set(avoid)
    if base not in taken:
        return base
    counter = 1
    while f"{base}{counter}" in taken:
        counter += 1
    return f"{base}{counter}"


# Substitution


def subst_term(term: FOTerm, mapping: Mapping[str, FOTerm]) -> FOTerm:
    match term:
        case FOVar(name):
            return mapping.get(name, term)
        case FOApp(symbol, args):
            return FOApp(symbol, tuple(subst_term(a, mapping) for a in args))
    raise TypeError(f"Not a first-order term: {term!r}")


def subst_ind(formula: Formula, mapping: Mapping[str, FOTerm]) -> Formula:
    """Simultaneous capture-avoiding substitution of first-order terms for individual variables."""
    mapping = {k: v for k, v in mapping.items() if k in free_ind(formula)}
    if not mapping:
        return formula
    match formula:
        case Atom(predicate, args):
            return Atom(predicate, tuple(subst_term(a, mapping) for a in args))
        case Const(table, args):
            return Const(table, tuple(subst_term(a, mapping) for a in args))
        case Implies(left, right):
            return Implies(subst_ind(left, mapping), subst_ind(right, mapping))
        case Cap(left, right):
            return Cap(subst_ind(left, mapping), subst_ind(right, mapping))
        case Cup(left, right):
            return Cup(subst_ind(left, mapping), subst_ind(right, mapping))
        case EqImplies(left, right, body):
            return EqImplies(subst_term(left, mapping), subst_term(right, mapping), subst_ind(body, mapping))
        case ForallPred(var, arity, body):
            return ForallPred(var, arity, subst_ind(body, mapping))
        case ForallInd(var, body):
            incoming = _terms_vars(mapping.values())
            if var in incoming:
                renamed = fresh(var, incoming | free_ind(body) | set(mapping))
                body = subst_ind(body, {var: FOVar(renamed)})
                var = renamed
            return ForallInd(var, subst_ind(body, mapping))
    return formula


def subst_pred(formula: Formula, name: str, params: Sequence[str], replacement: Formula) -> Formula:
    """A[X(y1..yk) := B], capture-avoiding in both orders."""
    if name not in free_pred(formula):
        return formula
    outside_ind = free_ind(replacement) - set(params)
    outside_pred = free_pred(replacement)
    match formula:
        case Atom(predicate, args):
            if predicate != name:
                return formula
            if len(args) != len(params):
                raise ValueError(f"Arity mismatch substituting {name}: expected {len(params)}, got {len(args)}")
            return subst_ind(replacement, dict(zip(params, args)))
        case Implies(left, right):
            return Implies(subst_pred(left, name, params, replacement), subst_pred(right, name, params, replacement))
        case Cap(left, right):
            return Cap(subst_pred(left, name, params, replacement), subst_pred(right, name, params, replacement))
        case Cup(left, right):
            return Cup(subst_pred(left, name, params, replacement), subst_pred(right, name, params, replacement))
        case EqImplies(left, right, body):
            return EqImplies(left, right, subst_pred(body, name, params, replacement))
        case ForallInd(var, body):
            if var in outside_ind:
                renamed = fresh(var, outside_ind | free_ind(body))
                body = subst_ind(body, {var: FOVar(renamed)})
                var = renamed
            return ForallInd(var, subst_pred(body, name, params, replacement))
        case ForallPred(var, arity, body):
            if var == name:
                return formula
            if var in outside_pred:
                renamed = fresh(var, outside_pred | free_pred(body) | {name})
                body = subst_pred(body, var, [f"_y{i}" for i in range(arity)], Atom(renamed, tuple(FOVar(f"_y{i}") for i in range(arity))))
                var = renamed
            return ForallPred(var, arity, subst_pred(body, name, params, replacement))
    return formula


# α-equivalence


def _canonical(formula: Formula, ind: Dict[str, str], pred: Dict[str, str], depth: int) -> Formula:
    match formula:
        case Atom(predicate, args):
            return Atom(pred.get(predicate, predicate), tuple(subst_term(a, {k: FOVar(v) for k, v in ind.items()}) for a in args))
        case Const(table, args):
            return Const(table, tuple(subst_term(a, {k: FOVar(v) for k, v in ind.items()}) for a in args))
        case Top() | Bot():
            return formula
        case Implies(left, right):
            return Implies(_canonical(left, ind, pred, depth), _canonical(right, ind, pred, depth))
        case Cap(left, right):
            return Cap(_canonical(left, ind, pred, depth), _canonical(right, ind, pred, depth))
        case Cup(left, right):
            return Cup(_canonical(left, ind, pred, depth), _canonical(right, ind, pred, depth))
        case EqImplies(left, right, body):
            renaming = {k: FOVar(v) for k, v in ind.items()}
            return EqImplies(subst_term(left, renaming), subst_term(right, renaming), _canonical(body, ind, pred, depth))
        case ForallInd(var, body):
            name = f"#{depth}"
            return ForallInd(name, _canonical(body, {**ind, var: name}, pred, depth + 1))
        case ForallPred(var, arity, body):
            name = f"#{depth}"
            return ForallPred(name, arity, _canonical(body, ind, {**pred, var: name}, depth + 1))
    raise TypeError(f"Not a formula: {formula!r}")


def alpha_equal(first: Formula, second: Formula) -> bool:
    return _canonical(first, {}, {}, 0) == _canonical(second, {}, {}, 0)


# Printing


def print_fo_term(term: FOTerm) -> str:
    match term:
        case FOVar(name):
            return name
        case FOApp(symbol, ()):
            return symbol
        case FOApp("s", _):
            depth, inner = 0, term
            while isinstance(inner, FOApp) and inner.symbol == "s" and len(inner.args) == 1:
                depth, inner = depth + 1, inner.args[0]
            if inner == ZERO:
                return str(depth)
            return f"s({print_fo_term(term.args[0])})"
        case FOApp(symbol, args):
            return f"{symbol}({', '.join(print_fo_term(a) for a in args)})"
    raise TypeError(f"Not a first-order term: {term!r}")


def _wrap(formula: Formula) -> str:
    text = print_formula(formula)
    if isinstance(formula, (Atom, Top, Bot, Const)):
        return text
    return f"({text})"


def print_formula(formula: Formula) -> str:
    match formula:
        case Atom(predicate, ()):
            return predicate
        case Atom(predicate, args) | Const(predicate, args):
            name = f"[{predicate}]" if isinstance(formula, Const) else predicate
            return f"{name}({', '.join(print_fo_term(a) for a in args)})"
        case Top():
            return "Top"
        case Bot():
            return "Bot"
        case Implies(left, right):
            return f"{_wrap(left)} -> {print_formula(right)}"
        case Cap(left, right):
            return f"{_wrap(left) if not isinstance(left, Cap) else print_formula(left)} cap {_wrap(right)}"
        case Cup(left, right):
            return f"{_wrap(left) if not isinstance(left, Cup) else print_formula(left)} cup {_wrap(right)}"
        case ForallInd(var, body):
            return f"forall {var} {print_formula(body)}"
        case ForallPred(var, _, body):
            return f"forall2 {var} {print_formula(body)}"
        case EqImplies(left, right, body):
            return f"{print_fo_term(left)} = {print_fo_term(right)} |> {print_formula(body)}"
    raise TypeError(f"Not a formula: {formula!r}")
