from typing import Union

from src.krivine.logic import FOTerm, Formula, nat
from src.krivine.syntax import App, Lam, Term, Var, parse_term, shift, substitute

CHURCH_SUCC: Term = parse_term(r"\n.\f.\x. n f (f x)")

_FIXPOINT_STEP: Term = parse_term(r"\y. p c0 (succ y)", free=["p", "c0", "succ"])


def church(n: int) -> Term:
    """\\f.\\x. f (… (f x))"""
    if n < 0:
        raise ValueError(f"Church numerals are non-negative, got {n}")
    body: Term = Var(0, "x")
    for _ in range(n):
        body = App(Var(1, "f"), body)
    return Lam(Lam(body, "x"), "f")


def fixpoint(term: Term) -> Term:
    """Y(t) = δ δ with δ = \\d. t (d d), so that Y(t) ⋆ π runs to t ⋆ Y(t) · π."""
    delta = Lam(App(shift(term, 1), App(Var(0, "d"), Var(0, "d"))), "d")
    return App(delta, delta)


def fixpoint_of(psi: Term) -> Term:
    """
    Y_ψ = Y(\\y. ψ c₀ (succ y)), which runs to ψ ⋆ c₀ · (succ Y_ψ) · π.
    `psi` may be open, for instance a bound variable of an enclosing abstraction.
    """
    step = substitute(_FIXPOINT_STEP, [(0, psi), (1, church(0)), (2, CHURCH_SUCC)])
    return fixpoint(step)


def build_nat(name: str, *params: Union[int, Term, FOTerm]) -> Union[Term, Formula]:
    match name, params:
        case "nat", (term,):
            return nat(term)  # type: ignore[arg-type]
        case "church", (int() as n,):
            return church(n)
        case "church-succ", ():
            return CHURCH_SUCC
        case "Y", (term,):
            return fixpoint(term)  # type: ignore[arg-type]
        case "Y_psi", (term,):
            return fixpoint_of(term)  # type: ignore[arg-type]
    raise ValueError(f"Unknown nat builder or bad parameters: {name}{params}")
