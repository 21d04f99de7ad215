"""
Realizers for Horn clauses ∀x⃗. (a₁ = b₁) → … → (aₙ = bₙ) → G, where G is an
equation (a definite clause) or ⊥ (a goal clause).

Truth in ℕ is the caller's business: `horn_realizer` takes a certificate,
either `Holds` or a falsifying `Fails` witness, and `horn_truth` produces one
by bounded search when a machine check is wanted.
"""
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence, Tuple, Union

import structlog

from src.krivine.errors import MalformedClause, ResolutionError
from src.krivine.logic import (
    DEFAULT_REGISTRY,
    Bot,
    FOTerm,
    Formula,
    FunctionRegistry,
    Top,
    eq,
    fo_value,
    foralls,
    implies,
)
from src.krivine.logic.formulas import FOApp, FOVar, term_vars
from src.krivine.syntax import App, Lam, Term, Var, apply

log = structlog.get_logger(__name__)

IDENTITY: Term = Lam(Var(0, "y"), "y")


@dataclass(frozen=True)
class Equation:
    left: FOTerm
    right: FOTerm


@dataclass(frozen=True)
class HornClause:
    universals: Tuple[str, ...]
    premises: Tuple[Equation, ...]
    goal: Optional[Equation] = None

    @property
    def definite(self) -> bool:
        return self.goal is not None

    def equations(self) -> Tuple[Equation, ...]:
        return self.premises + ((self.goal,) if self.goal is not None else ())

    def formula(self) -> Formula:
        parts = [eq(e.left, e.right) for e in self.premises]
        parts.append(eq(self.goal.left, self.goal.right) if self.goal is not None else Bot())
        return foralls(self.universals, implies(*parts))


@dataclass(frozen=True)
class Holds:
    """True in ℕ, or, with a bound, for every assignment below it."""

    bound: Optional[int] = None


@dataclass(frozen=True)
class Fails:
    witness: Tuple[int, ...]


HornTruth = Union[Holds, Fails]


def _symbols(term: FOTerm) -> Sequence[Tuple[str, int]]:
    match term:
        case FOVar():
            return []
        case FOApp(symbol, args):
            found = [(symbol, len(args))]
            for arg in args:
                found.extend(_symbols(arg))
            return found
    raise TypeError(f"Not a first-order term: {term!r}")


def validate_clause(clause: HornClause, registry: FunctionRegistry = DEFAULT_REGISTRY) -> None:
    if len(set(clause.universals)) != len(clause.universals):
        raise MalformedClause(f"Repeated universal variables: {clause.universals}")
    for equation in clause.equations():
        for term in (equation.left, equation.right):
            stray = term_vars(term) - set(clause.universals)
            if stray:
                raise MalformedClause(f"Variables not quantified by the clause: {sorted(stray)}")
            for symbol, arity in _symbols(term):
                try:
                    registry.lookup(symbol, arity)
                except ResolutionError as e:
                    raise MalformedClause(str(e)) from e


def _holds(equation: Equation, env: dict, registry: FunctionRegistry, modulus: Optional[int]) -> bool:
    return fo_value(equation.left, registry, modulus, env) == fo_value(equation.right, registry, modulus, env)


def horn_truth(
    clause: HornClause,
    bound: int,
    registry: FunctionRegistry = DEFAULT_REGISTRY,
    modulus: Optional[int] = None,
) -> HornTruth:
    """
    Search assignments with values below `bound` for a counterexample. With a
    modulus, arithmetic is reduced as in a finite model of that size.
    """
    validate_clause(clause, registry)
    for values in product(range(bound), repeat=len(clause.universals)):
        env = dict(zip(clause.universals, values))
        if not all(_holds(e, env, registry, modulus) for e in clause.premises):
            continue
        if clause.goal is None or not _holds(clause.goal, env, registry, modulus):
            log.debug("horn clause fails", witness=values)
            return Fails(tuple(values))
    return Holds(bound)


def horn_target(clause: HornClause, truth: HornTruth) -> Formula:
    """The formula `horn_realizer` realizes for this certificate."""
    if isinstance(truth, Holds):
        return clause.formula()
    if clause.definite:
        return implies(clause.formula(), Top(), Bot())
    return implies(clause.formula(), Bot())


def horn_realizer(clause: HornClause, truth: HornTruth) -> Term:
    """
    False clause: λf. f I … I, realizing H → ⊥ (goal) or H → ⊤ → ⊥ (definite).
    True clause: λt₁…λtₙ.λy. t₁(…(tₙ y)…) when definite, and
    λt₁…λtₙ. t₁(…(tₙ I)…) for a goal clause.
    """
    validate_clause(clause)
    count = len(clause.premises)
    if isinstance(truth, Fails):
        if len(truth.witness) != len(clause.universals):
            raise MalformedClause(f"Witness {truth.witness} does not match universals {clause.universals}")
        return Lam(apply(Var(0, "f"), *([IDENTITY] * count)), "f")

    if clause.definite:
        # Under λt₁…λtₙ.λy the variable tᵢ has index n + 1 - i and y has index 0.
        body: Term = Var(0, "y")
        for i in range(count, 0, -1):
            body = App(Var(count + 1 - i, f"t{i}"), body)
        body = Lam(body, "y")
    else:
        body = IDENTITY
        for i in range(count, 0, -1):
            body = App(Var(count - i, f"t{i}"), body)
    for i in range(count, 0, -1):
        body = Lam(body, f"t{i}")
    return body
