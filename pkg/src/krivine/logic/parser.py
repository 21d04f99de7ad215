from typing import Any, List, Optional

import structlog
from lark import Lark, Token, Transformer, UnexpectedInput, v_args
from lark.exceptions import VisitError

from src.krivine.errors import ParseError, ResolutionError
from src.krivine.logic.desugar import (
    boolean,
    conj,
    disj,
    eq,
    exists,
    exists2,
    forall_rel,
    gim,
    iff,
    nat,
    neg,
    neq,
)
from src.krivine.logic.formulas import (
    Atom,
    Bot,
    Cap,
    Const,
    Cup,
    EqImplies,
    FOApp,
    FOTerm,
    FOVar,
    ForallInd,
    ForallPred,
    Formula,
    Implies,
    Top,
    numeral,
    predicate_arities,
)

log = structlog.get_logger(__name__)

# Uppercase identifiers are predicate variables, lowercase ones are individual
# variables and function symbols.
GRAMMAR = r"""
?formula: binder
        | implication

?binder: "forall" LOWER formula -> forall1
       | "forall" LOWER "^" NUMBER formula -> forall_rel
       | "forall2" UPPER formula -> forall2
       | "ex" LOWER formula -> exists1
       | "ex2" UPPER formula -> exists2
       | fo_term "=" fo_term "|>" formula -> eq_implies

?implication: junction "->" formula -> implies
            | junction "iff" junction -> iff
            | junction

?junction: junction "cap" unary -> cap
         | junction "cup" unary -> cup
         | junction "and" unary -> conj
         | junction "or" unary -> disj
         | unary

?unary: "not" unary -> negation
      | primary

?primary: UPPER "(" [fo_terms] ")" -> atom
        | UPPER -> atom0
        | "Top" -> top
        | "Bot" -> bot
        | "[" LOWER "]" "(" [fo_terms] ")" -> table
        | fo_term "=" fo_term -> equation
        | fo_term "!=" fo_term -> inequation
        | "nat" "(" fo_term ")" -> nat
        | "bool" "(" fo_term ")" -> boolean
        | "gim" "(" NUMBER "," fo_term ")" -> gim
        | "(" formula ")"

fo_terms: fo_term ("," fo_term)*

fo_start: fo_term

?fo_term: NUMBER -> numeral
        | LOWER -> fo_var
        | LOWER "(" [fo_terms] ")" -> fo_app
        | OPERATOR "(" [fo_terms] ")" -> fo_app

OPERATOR: "+" | "*" | "∨" | "∧" | "¬"
UPPER: /[A-Z][A-Za-z0-9_']*/
LOWER: /[a-z][A-Za-z0-9_']*/
NUMBER: /[0-9]+/

%import common.WS
%ignore WS
"""

_parser = Lark(GRAMMAR, start=["formula", "fo_start"], parser="lalr")


@v_args(inline=True)
class _FormulaBuilder(Transformer):
    def fo_start(self, term: FOTerm) -> FOTerm:
        return term

    def fo_terms(self, *terms: FOTerm) -> List[FOTerm]:
        return list(terms)

    def numeral(self, token: Token) -> FOTerm:
        return numeral(int(token))

    def fo_var(self, token: Token) -> FOTerm:
        return FOVar(str(token))

    def fo_app(self, symbol: Token, args: Optional[List[FOTerm]]) -> FOTerm:
        return FOApp(str(symbol), tuple(args or ()))

    def atom(self, name: Token, args: Optional[List[FOTerm]]) -> Formula:
        return Atom(str(name), tuple(args or ()))

    def atom0(self, name: Token) -> Formula:
        return Atom(str(name))

    def table(self, name: Token, args: Optional[List[FOTerm]]) -> Formula:
        return Const(str(name), tuple(args or ()))

    def top(self) -> Formula:
        return Top()

    def bot(self) -> Formula:
        return Bot()

    def implies(self, left: Formula, right: Formula) -> Formula:
        return Implies(left, right)

    def iff(self, left: Formula, right: Formula) -> Formula:
        return iff(left, right)

    def cap(self, left: Formula, right: Formula) -> Formula:
        return Cap(left, right)

    def cup(self, left: Formula, right: Formula) -> Formula:
        return Cup(left, right)

    def conj(self, left: Formula, right: Formula) -> Formula:
        return conj(left, right)

    def disj(self, left: Formula, right: Formula) -> Formula:
        return disj(left, right)

    def negation(self, body: Formula) -> Formula:
        return neg(body)

    def equation(self, left: FOTerm, right: FOTerm) -> Formula:
        return eq(left, right)

    def inequation(self, left: FOTerm, right: FOTerm) -> Formula:
        return neq(left, right)

    def eq_implies(self, left: FOTerm, right: FOTerm, body: Formula) -> Formula:
        return EqImplies(left, right, body)

    def nat(self, term: FOTerm) -> Formula:
        return nat(term)

    def boolean(self, term: FOTerm) -> Formula:
        return boolean(term)

    def gim(self, n: Token, term: FOTerm) -> Formula:
        return gim(int(n), term)

    def forall1(self, var: Token, body: Formula) -> Formula:
        return ForallInd(str(var), body)

    def forall_rel(self, var: Token, n: Token, body: Formula) -> Formula:
        return forall_rel(str(var), int(n), body)

    def forall2(self, var: Token, body: Formula) -> Formula:
        return ForallPred(str(var), _infer_arity(str(var), body), body)

    def exists1(self, var: Token, body: Formula) -> Formula:
        return exists(str(var), body)

    def exists2(self, var: Token, body: Formula) -> Formula:
        return exists2(str(var), _infer_arity(str(var), body), body)


def _infer_arity(name: str, body: Formula) -> int:
    arities = predicate_arities(body, name)
    if len(arities) > 1:
        raise ResolutionError(f"Predicate variable {name} used with several arities: {sorted(arities)}")
    return next(iter(arities), 0)


def _build(text: str, start: str) -> Any:
    try:
        tree = _parser.parse(text, start=start)
    except UnexpectedInput as exc:
        line = getattr(exc, "line", None)
        column = getattr(exc, "column", None)
        log.debug("parse failed", text=text, line=line, column=column)
        raise ParseError(f"syntax error in {start}", line, column) from exc
    try:
        return _FormulaBuilder().transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, ResolutionError):
            raise exc.orig_exc from exc
        raise


def parse_formula(text: str) -> Formula:
    """
    Parse a formula. Sugar (`and`, `or`, `not`, `iff`, `ex`, `ex2`, `=`, `!=`,
    `nat`, `bool`, `gim`, `forall x^n`) is expanded while parsing.
    """
    return _build(text, "formula")


def parse_fo_term(text: str) -> FOTerm:
    return _build(text, "fo_start")
