"""
Derived connectives, as their usual second-order encodings.

Bound names are chosen fresh against the free variables of the arguments, so
the encodings never capture.
"""
from typing import Callable, Dict, Sequence, Union

from src.krivine.errors import ResolutionError
from src.krivine.logic.formulas import (
    ZERO,
    Atom,
    Bot,
    Cap,
    Cup,
    EqImplies,
    FOTerm,
    FOVar,
    ForallInd,
    ForallPred,
    Formula,
    Implies,
    fo,
    free_pred,
    fresh,
    implies,
    numeral,
    succ,
    term_vars,
)

Argument = Union[Formula, FOTerm, str, int]


def eq(left: FOTerm, right: FOTerm) -> Formula:
    """a = b  :=  ∀Z. Z(a) → Z(b)"""
    return ForallPred("Z", 1, Implies(Atom("Z", (left,)), Atom("Z", (right,))))


def neq(left: FOTerm, right: FOTerm) -> Formula:
    return EqImplies(left, right, Bot())


def _goal(*parts: Formula) -> str:
    taken = set()
    for part in parts:
        taken |= free_pred(part)
    return fresh("Z", taken)


def conj(left: Formula, right: Formula) -> Formula:
    z = _goal(left, right)
    return ForallPred(z, 0, Implies(implies(left, right, Atom(z)), Atom(z)))


def disj(left: Formula, right: Formula) -> Formula:
    z = _goal(left, right)
    return ForallPred(z, 0, implies(Implies(left, Atom(z)), Implies(right, Atom(z)), Atom(z)))


def neg(formula: Formula) -> Formula:
    return Implies(formula, Bot())


def iff(left: Formula, right: Formula) -> Formula:
    return conj(Implies(left, right), Implies(right, left))


def exists(var: str, body: Formula) -> Formula:
    z = _goal(body)
    return ForallPred(z, 0, Implies(ForallInd(var, Implies(body, Atom(z))), Atom(z)))


def exists2(var: str, arity: int, body: Formula) -> Formula:
    z = fresh("Z", free_pred(body) | {var})
    return ForallPred(z, 0, Implies(ForallPred(var, arity, Implies(body, Atom(z))), Atom(z)))


def gim(n: int, term: FOTerm) -> Formula:
    """ℷn(a), i.e. a + 1 ≤ n, as the equation min(a, n-1) = a. Faithful when N ≥ n."""
    if n <= 0:
        return eq(ZERO, succ(ZERO))
    return eq(fo("min", term, numeral(n - 1)), term)


def gim_guard(n: int, term: FOTerm, body: Formula) -> Formula:
    """ℷn(a) ↪ A"""
    if n <= 0:
        return EqImplies(ZERO, succ(ZERO), body)
    return EqImplies(fo("min", term, numeral(n - 1)), term, body)


def forall_rel(var: str, n: int, body: Formula) -> Formula:
    """∀x^ℷn A  :=  ∀x. ℷn(x) ↪ A"""
    return ForallInd(var, gim_guard(n, FOVar(var), body))


def relativize(formula: Formula, n: int = 2) -> Formula:
    """ℷn ⊨ A: every individual quantifier relativised to ℷn."""
    match formula:
        case ForallInd(var, body):
            return forall_rel(var, n, relativize(body, n))
        case ForallPred(var, arity, body):
            return ForallPred(var, arity, relativize(body, n))
        case EqImplies(left, right, body):
            return EqImplies(left, right, relativize(body, n))
        case Implies(left, right):
            return Implies(relativize(left, n), relativize(right, n))
        case Cap(left, right):
            return Cap(relativize(left, n), relativize(right, n))
        case Cup(left, right):
            return Cup(relativize(left, n), relativize(right, n))
    return formula


def nat(term: FOTerm) -> Formula:
    """nat(x) := ∀Z. (∀y. Z(y) → Z(s(y))) → Z(0) → Z(x)"""
    y = fresh("y", term_vars(term))
    step = ForallInd(y, Implies(Atom("Z", (FOVar(y),)), Atom("Z", (succ(FOVar(y)),))))
    return ForallPred("Z", 1, implies(step, Atom("Z", (ZERO,)), Atom("Z", (term,))))


def boolean(term: FOTerm) -> Formula:
    """bool(y) := ∀X. X(0) → X(1) → X(y)"""
    return ForallPred("X", 1, implies(Atom("X", (ZERO,)), Atom("X", (numeral(1),)), Atom("X", (term,))))


_CONNECTIVES: Dict[str, Callable[..., Formula]] = {
    "=": eq,
    "!=": neq,
    "≠": neq,
    "and": conj,
    "∧": conj,
    "or": disj,
    "∨": disj,
    "not": neg,
    "¬": neg,
    "iff": iff,
    "⇔": iff,
    "ex": exists,
    "∃": exists,
    "ex2": exists2,
    "∃2": exists2,
    "forall^": forall_rel,
    "nat": nat,
    "bool": boolean,
    "gim": gim,
}


def desugar(name: str, args: Sequence[Argument]) -> Formula:
    builder = _CONNECTIVES.get(name)
    if builder is None:
        raise ResolutionError(f"Unknown connective: {name}")
    try:
        return builder(*args)
    except TypeError as e:
        raise ResolutionError(f"Bad arguments for connective {name}: {e}") from e
