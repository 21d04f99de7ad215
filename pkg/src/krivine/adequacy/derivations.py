"""
Natural-deduction derivations Γ ⊢ t : A and their checker.

Contexts are tuples of (name, formula) with the innermost hypothesis last, so
the term variable with de Bruijn index i refers to `context[-1 - i]`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from enum import Enum
from typing import FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

import structlog

from src.krivine.errors import MissingHypothesis
from src.krivine.logic import (
    Bot,
    FOApp,
    FOTerm,
    FOVar,
    ForallInd,
    ForallPred,
    Formula,
    Implies,
    Top,
    alpha_equal,
    free_ind,
    free_pred,
    numeral,
    print_fo_term,
    print_formula,
    subst_ind,
    subst_pred,
)
from src.krivine.logic.formulas import predicate_arities
from src.krivine.syntax import CC, App, Lam, Term, Var, free_indices, print_term, substitute

log = structlog.get_logger(__name__)


class RuleTag(str, Enum):
    AXIOM = "Axiom"
    PEIRCE = "Peirce"
    TOP_INTRO = "TopIntro"
    BOT_ELIM = "BotElim"
    IMP_INTRO = "ImpIntro"
    IMP_ELIM = "ImpElim"
    ALL1_INTRO = "All1Intro"
    ALL1_ELIM = "All1Elim"
    ALL2_INTRO = "All2Intro"
    ALL2_ELIM = "All2Elim"


Context = Tuple[Tuple[str, Formula], ...]
# eigenvariable name | instantiation term | (parameters, instantiation formula)
Payload = Union[None, str, FOTerm, Tuple[Tuple[str, ...], Formula]]


@dataclass(frozen=True)
class Derivation:
    rule: RuleTag
    context: Context
    term: Term
    formula: Formula
    premises: Tuple["Derivation", ...] = ()
    payload: Payload = None

    def nodes(self) -> List["Derivation"]:
        found = [self]
        for premise in self.premises:
            found.extend(premise.nodes())
        return found

    def rules(self) -> FrozenSet[RuleTag]:
        return frozenset(node.rule for node in self.nodes())


@dataclass(frozen=True)
class Accepted:
    pass


@dataclass(frozen=True)
class Rejected:
    path: Tuple[int, ...]
    rule: RuleTag
    reason: str

    def describe(self) -> str:
        where = ".".join(str(i) for i in self.path) or "root"
        return f"{self.rule.value} at {where}: {self.reason}"


Verdict = Union[Accepted, Rejected]


class _Reject(Exception):
    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


def _require(condition: bool, reason: str) -> None:
    if not condition:
        raise _Reject(reason)


def _same_context(first: Context, second: Context) -> bool:
    return len(first) == len(second) and all(
        a[0] == b[0] and alpha_equal(a[1], b[1]) for a, b in zip(first, second)
    )


def _context_ind(context: Context) -> FrozenSet[str]:
    return frozenset().union(*(free_ind(f) for _, f in context))


def _context_pred(context: Context) -> FrozenSet[str]:
    return frozenset().union(*(free_pred(f) for _, f in context))


def _premises(node: Derivation, count: int, same_context: bool = True) -> Tuple[Derivation, ...]:
    _require(len(node.premises) == count, f"expected {count} premises, got {len(node.premises)}")
    for premise in node.premises:
        if same_context:
            _require(_same_context(premise.context, node.context), "premise context differs from the conclusion's")
    return node.premises


def _same_term(node: Derivation, premise: Derivation) -> None:
    _require(premise.term == node.term, "premise term differs from the conclusion's")


def _eigenvariable(node: Derivation, binder: str) -> None:
    if node.payload is not None:
        _require(node.payload == binder, f"eigenvariable {node.payload!r} does not match binder {binder!r}")


def _check_node(node: Derivation) -> None:
    context, term, formula = node.context, node.term, node.formula
    names = [name for name, _ in context]
    _require(len(set(names)) == len(names), "duplicate hypothesis names in context")
    _require(all(i < len(context) for i in free_indices(term)), "term mentions a variable outside the context")

    match node.rule:
        case RuleTag.AXIOM:
            _premises(node, 0)
            _require(isinstance(term, Var), "axiom term must be a variable")
            assert isinstance(term, Var)
            _require(alpha_equal(context[-1 - term.index][1], formula), "formula differs from the hypothesis")
        case RuleTag.PEIRCE:
            _premises(node, 0)
            _require(term == CC(), "Peirce's law is typed by cc")
            match formula:
                case Implies(Implies(Implies(a, _), a2), a3):
                    _require(alpha_equal(a, a2) and alpha_equal(a, a3), "not an instance of Peirce's law")
                case _:
                    raise _Reject("not an instance of Peirce's law")
        case RuleTag.TOP_INTRO:
            _premises(node, 0)
            _require(formula == Top(), "conclusion must be Top")
        case RuleTag.BOT_ELIM:
            (premise,) = _premises(node, 1)
            _same_term(node, premise)
            _require(premise.formula == Bot(), "premise must prove Bot")
        case RuleTag.IMP_INTRO:
            (premise,) = _premises(node, 1, same_context=False)
            _require(isinstance(term, Lam), "conclusion term must be an abstraction")
            _require(isinstance(formula, Implies), "conclusion must be an implication")
            assert isinstance(term, Lam) and isinstance(formula, Implies)
            _require(premise.term == term.body, "premise term is not the abstraction body")
            _require(len(premise.context) == len(context) + 1, "premise must extend the context by one hypothesis")
            _require(_same_context(premise.context[:-1], context), "premise context differs from the conclusion's")
            _require(alpha_equal(premise.context[-1][1], formula.left), "discharged hypothesis differs")
            _require(alpha_equal(premise.formula, formula.right), "premise does not prove the consequent")
        case RuleTag.IMP_ELIM:
            function, argument = _premises(node, 2)
            _require(isinstance(term, App), "conclusion term must be an application")
            assert isinstance(term, App)
            _require(function.term == term.fun and argument.term == term.arg, "premise terms do not match")
            _require(isinstance(function.formula, Implies), "first premise must prove an implication")
            assert isinstance(function.formula, Implies)
            _require(alpha_equal(function.formula.left, argument.formula), "argument does not prove the antecedent")
            _require(alpha_equal(function.formula.right, formula), "conclusion is not the consequent")
        case RuleTag.ALL1_INTRO:
            (premise,) = _premises(node, 1)
            _same_term(node, premise)
            _require(isinstance(formula, ForallInd), "conclusion must be an individual quantification")
            assert isinstance(formula, ForallInd)
            _eigenvariable(node, formula.var)
            _require(formula.var not in _context_ind(context), f"{formula.var} is free in the context")
            _require(alpha_equal(premise.formula, formula.body), "premise does not prove the body")
        case RuleTag.ALL1_ELIM:
            (premise,) = _premises(node, 1)
            _same_term(node, premise)
            _require(isinstance(premise.formula, ForallInd), "premise must be an individual quantification")
            _require(isinstance(node.payload, (FOApp, FOVar)), "missing instantiation term")
            assert isinstance(premise.formula, ForallInd)
            expected = subst_ind(premise.formula.body, {premise.formula.var: node.payload})  # type: ignore[dict-item]
            _require(alpha_equal(expected, formula), "conclusion is not the instantiated body")
        case RuleTag.ALL2_INTRO:
            (premise,) = _premises(node, 1)
            _same_term(node, premise)
            _require(isinstance(formula, ForallPred), "conclusion must be a predicate quantification")
            assert isinstance(formula, ForallPred)
            _eigenvariable(node, formula.var)
            _require(formula.var not in _context_pred(context), f"{formula.var} is free in the context")
            _require(
                predicate_arities(formula.body, formula.var) <= {formula.arity},
                f"{formula.var} is used at an arity other than {formula.arity}",
            )
            _require(alpha_equal(premise.formula, formula.body), "premise does not prove the body")
        case RuleTag.ALL2_ELIM:
            (premise,) = _premises(node, 1)
            _same_term(node, premise)
            _require(isinstance(premise.formula, ForallPred), "premise must be a predicate quantification")
            _require(isinstance(node.payload, tuple) and len(node.payload) == 2, "missing instantiation formula")
            assert isinstance(premise.formula, ForallPred) and isinstance(node.payload, tuple)
            params, replacement = node.payload
            _require(len(params) == premise.formula.arity, "parameter count differs from the arity")
            expected = subst_pred(premise.formula.body, premise.formula.var, params, replacement)
            _require(alpha_equal(expected, formula), "conclusion is not the instantiated body")


def _check(node: Derivation, path: Tuple[int, ...]) -> Verdict:
    try:
        _check_node(node)
    except _Reject as reject:
        return Rejected(path, node.rule, reject.reason)
    for i, premise in enumerate(node.premises):
        verdict = _check(premise, path + (i,))
        if isinstance(verdict, Rejected):
            return verdict
    return Accepted()


def check_derivation(derivation: Derivation) -> Verdict:
    """Accepted, or the first offending node (premises are numbered from 0, root first)."""
    verdict = _check(derivation, ())
    log.debug("derivation checked", rule=derivation.rule.value, accepted=isinstance(verdict, Accepted))
    return verdict


def extract_realizer(derivation: Derivation, hyp_realizers: Mapping[str, Term] = {}) -> Term:
    """The conclusion term with every hypothesis replaced by its realizer."""
    bindings = []
    for position, (name, _) in enumerate(derivation.context):
        if name not in hyp_realizers:
            raise MissingHypothesis(f"No realizer given for hypothesis {name}")
        bindings.append((len(derivation.context) - 1 - position, hyp_realizers[name]))
    return substitute(derivation.term, bindings)


# Mutation


def _corrupt(payload: Payload) -> Payload:
    match payload:
        case str():
            return payload + "'"
        case (params, formula):
            return (params, Top() if formula != Top() else Bot())
    return numeral(1) if payload == numeral(0) else numeral(0)


def _replace_node(root: Derivation, path: Sequence[int], node: Derivation) -> Derivation:
    if not path:
        return node
    premises = list(root.premises)
    premises[path[0]] = _replace_node(premises[path[0]], path[1:], node)
    return replace(root, premises=tuple(premises))


def _paths(node: Derivation, path: Tuple[int, ...] = ()) -> List[Tuple[Tuple[int, ...], Derivation]]:
    found = [(path, node)]
    for i, premise in enumerate(node.premises):
        found.extend(_paths(premise, path + (i,)))
    return found


def mutate(derivation: Derivation, rng: random.Random) -> Optional[Derivation]:
    """Corrupt the payload of one randomly chosen node; None when no node carries a payload."""
    candidates = [(path, node) for path, node in _paths(derivation) if node.payload is not None]
    if not candidates:
        return None
    path, node = rng.choice(candidates)
    return _replace_node(derivation, path, replace(node, payload=_corrupt(node.payload)))


def describe(derivation: Derivation, indent: int = 0) -> List[str]:
    context = ", ".join(f"{name} : {print_formula(f)}" for name, f in derivation.context)
    free = [name for name, _ in reversed(derivation.context)]
    line = f"{'  ' * indent}{derivation.rule.value}  {context} |- {print_term(derivation.term, free)} : "
    line += print_formula(derivation.formula)
    match derivation.payload:
        case str():
            line += f"  {{{derivation.payload}}}"
        case (params, replacement):
            line += f"  {{{' '.join(params)} := {print_formula(replacement)}}}"
        case None:
            pass
        case _:
            line += f"  {{{print_fo_term(derivation.payload)}}}"  # type: ignore[arg-type]
    lines = [line]
    for premise in derivation.premises:
        lines.extend(describe(premise, indent + 1))
    return lines

