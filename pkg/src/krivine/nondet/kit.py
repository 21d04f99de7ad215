"""
Formulas and combinators for nondeterminism: voting, fork and must-choice,
the ℷ2 cardinality sentences, booleans, parallel or and Gustave's function.
"""
from itertools import combinations
from typing import Dict, List, Sequence, Tuple, Union

from src.krivine.adequacy import fixpoint_of
from src.krivine.errors import ResolutionError
from src.krivine.logic import (
    ZERO,
    Atom,
    Bot,
    Cap,
    Cup,
    FOTerm,
    FOVar,
    ForallInd,
    ForallPred,
    Formula,
    Implies,
    Top,
    boolean,
    caps,
    conj,
    disj,
    eq,
    fo,
    foralls,
    gim,
    implies,
    neq,
    numeral,
    relativize,
)
from src.krivine.syntax import Lam, Term, Var, parse_term, restricted

Param = Union[int, FOTerm]

TOP = restricted(0)
"""⊤̄, a restricted instruction with no rule: never in the pole."""

BOTTOM = restricted(1)
"""⊥̄, a restricted instruction with ⊥̄ ⋆ π ⊳ ∅: realizes ⊥."""

TRUE_TEXT = r"(\x.\y.y)"
FALSE_TEXT = r"(\x.\y.x)"
TORL_TEXT = rf"(\x.\y. x y {TRUE_TEXT})"
TORR_TEXT = rf"(\x.\y. y x {TRUE_TEXT})"

TRUE: Term = parse_term(TRUE_TEXT)
FALSE: Term = parse_term(FALSE_TEXT)
OMEGA: Term = parse_term(r"(\x.x x) (\x.x x)")
TORL: Term = parse_term(TORL_TEXT)
TORR: Term = parse_term(TORR_TEXT)


def _var(name: str) -> FOTerm:
    return FOVar(name)


def _names(prefix: str, n: int) -> Tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


def vote(n: int, k: int = 1) -> Formula:
    """
    ⊲n = ∀X. ∩ᵢ (X → … → ⊤ → … → X → X), with ⊤ at position i. With k > 1 the
    (n,k) variant puts ⊤ at every k positions at once.
    """
    if n < 1 or not 1 <= k <= n:
        raise ResolutionError(f"Voting needs n >= 1 and 1 <= k <= n, got n={n}, k={k}")
    branches = []
    for ignored in combinations(range(n), k):
        premises = [Top() if i in ignored else Atom("X") for i in range(n)]
        branches.append(implies(*premises, Atom("X")))
    return ForallPred("X", 0, caps(*branches))


def _join(terms: Sequence[FOTerm]) -> FOTerm:
    if not terms:
        return ZERO
    result = terms[-1]
    for term in reversed(terms[:-1]):
        result = fo("join", term, result)
    return result


def _disjunction(parts: Sequence[Formula]) -> Formula:
    if not parts:
        return Bot()
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = disj(part, result)
    return result


def pairwise_disjoint(n: int) -> Formula:
    """A_n = ∀x₁…xₙ. x₁ ≠ 0 → … → xₙ ≠ 0 → (∨_{i<j} xᵢ ∧ xⱼ) ≠ 0"""
    names = _names("x", n)
    meets = [fo("meet", _var(a), _var(b)) for a, b in combinations(names, 2)]
    premises = [neq(_var(x), ZERO) for x in names]
    return foralls(names, implies(*premises, neq(_join(meets), ZERO)))


def gimel_pairwise_disjoint(n: int) -> Formula:
    """ℷ2 ⊨ A_n"""
    return relativize(pairwise_disjoint(n), 2)


def gim_lt(n: int) -> Formula:
    """ℷ<n = ℷ2 ⊨ ∀x₁…xₙ ∨_{i<j} xᵢ = xⱼ"""
    names = _names("x", n)
    equalities = [eq(_var(a), _var(b)) for a, b in combinations(names, 2)]
    return relativize(foralls(names, _disjunction(equalities)), 2)


def gim_leq(n: int) -> Formula:
    return gim_lt(n + 1)


def gim_geq(n: int) -> Formula:
    return Implies(gim_lt(n), Bot())


def gim_eq(n: int) -> Formula:
    return conj(gim_geq(n), gim_lt(n + 1))


def _bool(value: Union[int, FOTerm]) -> Formula:
    return boolean(numeral(value) if isinstance(value, int) else value)


def parallel_or_spec() -> Formula:
    """for = ∀x∀y. bool(x) → bool(y) → bool(x ∨ y)"""
    x, y = _var("x"), _var("y")
    return foralls(("x", "y"), implies(_bool(x), _bool(y), _bool(fo("join", x, y))))


def left_or_spec() -> Formula:
    x = _var("x")
    return Cap(
        ForallInd("x", implies(_bool(0), _bool(x), _bool(x))),
        implies(_bool(1), Top(), _bool(1)),
    )


def right_or_spec() -> Formula:
    x = _var("x")
    return Cap(
        ForallInd("x", implies(_bool(x), _bool(0), _bool(x))),
        implies(Top(), _bool(1), _bool(1)),
    )


def forp() -> Formula:
    return caps(
        implies(_bool(1), Top(), _bool(1)),
        implies(Top(), _bool(1), _bool(1)),
        implies(_bool(0), _bool(0), _bool(0)),
    )


GUSTAVE_TABLE: Tuple[Tuple[str, ...], ...] = (
    ("0", "1", "T", "1"),
    ("T", "0", "1", "1"),
    ("1", "T", "0", "1"),
    ("0", "0", "0", "0"),
    ("1", "1", "1", "0"),
)
"""Rows of Gustave's function: three arguments then the result, T for ⊤."""


def _cell(symbol: str) -> Formula:
    return Top() if symbol == "T" else _bool(int(symbol))


def gustave() -> Formula:
    return caps(*(implies(*(_cell(s) for s in row)) for row in GUSTAVE_TABLE))


def gustave_sections() -> List[Tuple[str, Formula]]:
    """
    Gustave's table split on its first argument: a ↦ cell(a) → ∩ of the
    remaining two-argument rows. Every section is a consequence of gustave(),
    and the sections together give it back.
    """
    groups: Dict[str, List[Tuple[str, ...]]] = {}
    for row in GUSTAVE_TABLE:
        groups.setdefault(row[0], []).append(row[1:])
    return [
        (first, Implies(_cell(first), caps(*(implies(*(_cell(s) for s in rest)) for rest in rows))))
        for first, rows in groups.items()
    ]


def fork_spec() -> Formula:
    """∀X∀Y. X → Y → X ∩ Y"""
    return ForallPred("X", 0, ForallPred("Y", 0, implies(Atom("X"), Atom("Y"), Cap(Atom("X"), Atom("Y")))))


def must_spec() -> Formula:
    """∀X∀Y. X → Y → X ∪ Y"""
    return ForallPred("X", 0, ForallPred("Y", 0, implies(Atom("X"), Atom("Y"), Cup(Atom("X"), Atom("Y")))))


def build_formula(name: str, *params: Param) -> Formula:
    match name, params:
        case "vote", (int() as n,):
            return vote(n)
        case "vote", (int() as n, int() as k):
            return vote(n, k)
        case "A", (int() as n,):
            return pairwise_disjoint(n)
        case "gimel-A", (int() as n,):
            return gimel_pairwise_disjoint(n)
        case "gim", (int() as n, term):
            return gim(n, numeral(term) if isinstance(term, int) else term)
        case "gim-lt", (int() as n,):
            return gim_lt(n)
        case "gim-leq", (int() as n,):
            return gim_leq(n)
        case "gim-geq", (int() as n,):
            return gim_geq(n)
        case "gim-eq", (int() as n,):
            return gim_eq(n)
        case "bool", (value,):
            return _bool(value)
        case "for", ():
            return parallel_or_spec()
        case "forl", ():
            return left_or_spec()
        case "forr", ():
            return right_or_spec()
        case "forp", ():
            return forp()
        case "gustave", ():
            return gustave()
        case "fork", ():
            return fork_spec()
        case "must", ():
            return must_spec()
    raise ResolutionError(f"Unknown formula builder or bad parameters: {name}{params}")


def vote_to_gimel() -> Term:
    """\\t.t, from ⊲n to ℷ2 ⊨ A_n."""
    return parse_term(r"\t.t")


def gimel_to_vote(n: int) -> Term:
    """\\t.\\u₁…\\uₙ. cc (\\k. t (k u₁) … (k uₙ)), from ℷ2 ⊨ A_n to ⊲n."""
    if n < 1:
        raise ResolutionError(f"Bridge arity must be positive, got {n}")
    names = _names("u", n)
    binders = "".join(rf"\{u}." for u in names)
    calls = " ".join(f"(k {u})" for u in names)
    return parse_term(rf"\t.{binders} cc (\k. t {calls})")


def por_left() -> Term:
    """From forp to a 3-voting instruction: \\t.\\u₁.\\u₂.\\u₃. (t u₁ u₂) u₁ u₃"""
    return parse_term(r"\t.\u1.\u2.\u3. (t u1 u2) u1 u3")


def por_right() -> Term:
    """From a 3-voting instruction to forp: \\t.\\u.\\v. t (torl u v) (torr u v) true"""
    return parse_term(rf"\t.\u.\v. t ({TORL_TEXT} u v) ({TORR_TEXT} u v) {TRUE_TEXT}")


def gustave_right() -> Term:
    """
    From a 3-voting instruction to Gustave's function. Each argument of t reads
    one input then one of the other two; any row leaves two of them defined.
    """
    reads = [
        f"({a} ({b} {FALSE_TEXT} {TRUE_TEXT}) ({c} {TRUE_TEXT} {FALSE_TEXT}))"
        for a, b, c in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y"))
    ]
    return parse_term(rf"\t.\x.\y.\z. t {' '.join(reads)}")


def nat_left() -> Term:
    """\\ψ. Y_ψ"""
    return Lam(fixpoint_of(Var(0, "psi")), "psi")


def nat_right() -> Term:
    return parse_term(r"\t.\u.\v. t (\z.u) v")


def build_term(name: str, *params: int) -> Term:
    match name, params:
        case "true", ():
            return TRUE
        case "false", ():
            return FALSE
        case "omega", ():
            return OMEGA
        case "torl", ():
            return TORL
        case "torr", ():
            return TORR
        case "vote-to-A", ():
            return vote_to_gimel()
        case "A-to-vote", (int() as n,):
            return gimel_to_vote(n)
        case "por-l", ():
            return por_left()
        case "por-r", ():
            return por_right()
        case "gustave-r", ():
            return gustave_right()
        case "nat-l", ():
            return nat_left()
        case "nat-r", ():
            return nat_right()
    raise ResolutionError(f"Unknown term builder or bad parameters: {name}{params}")
