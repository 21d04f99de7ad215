"""
Textual derivations, one node per parenthesised record:

    (ImpIntro [] |- "\\x.x" : "X -> X"
      (Axiom [x : "X"] |- "x" : "X"))

A record is the rule tag, the judgement, an optional `{...}` payload and the
premises. Payloads: the eigenvariable for All1Intro/All2Intro, a first-order
term for All1Elim, and the parameters plus the formula for All2Elim, as in
`{"y", "Y(y) -> Top"}` (parameters are space separated and may be empty).
"""
from typing import List, Sequence, Tuple

from lark import Lark, Token, Tree, UnexpectedInput

from src.krivine.adequacy.derivations import Derivation, Payload, RuleTag
from src.krivine.errors import ParseError
from src.krivine.logic import Formula, parse_fo_term, parse_formula
from src.krivine.syntax import parse_term

GRAMMAR = r"""
derivation: "(" RULE judgement payload? derivation* ")"
judgement: "[" [hypothesis ("," hypothesis)*] "]" "|-" QUOTED ":" QUOTED
hypothesis: NAME ":" QUOTED
payload: "{" QUOTED ("," QUOTED)* "}"

RULE: /[A-Z][A-Za-z0-9]*/
NAME: /[a-z_][A-Za-z0-9_']*/
QUOTED: /"[^"]*"/

%import common.WS
%ignore WS
"""

_parser = Lark(GRAMMAR, start="derivation", parser="lalr")


def _text(token: Token) -> str:
    return str(token)[1:-1]


def _payload(rule: RuleTag, texts: Sequence[str], token: Token) -> Payload:
    match rule:
        case RuleTag.ALL1_INTRO | RuleTag.ALL2_INTRO if len(texts) == 1:
            return texts[0].strip()
        case RuleTag.ALL1_ELIM if len(texts) == 1:
            return parse_fo_term(texts[0])
        case RuleTag.ALL2_ELIM if len(texts) == 2:
            return tuple(texts[0].split()), parse_formula(texts[1])
    raise ParseError(f"bad payload for {rule.value}", token.line, token.column)


def _build(tree: Tree) -> Derivation:
    rule_token: Token = tree.children[0]
    try:
        rule = RuleTag(str(rule_token))
    except ValueError:
        raise ParseError(f"unknown rule {rule_token}", rule_token.line, rule_token.column) from None
    judgement: Tree = tree.children[1]
    hypotheses, term_text, formula_text = judgement.children[:-2], judgement.children[-2], judgement.children[-1]

    context: List[Tuple[str, Formula]] = []
    for hypothesis in hypotheses:
        if hypothesis is None:
            continue
        name, text = hypothesis.children
        context.append((str(name), parse_formula(_text(text))))
    term = parse_term(_text(term_text), free=[name for name, _ in reversed(context)])

    payload: Payload = None
    premises = []
    for child in tree.children[2:]:
        if child.data == "payload":
            payload = _payload(rule, [_text(t) for t in child.children], rule_token)
        else:
            premises.append(_build(child))
    return Derivation(rule, tuple(context), term, parse_formula(_text(formula_text)), tuple(premises), payload)


def parse_derivation(text: str) -> Derivation:
    try:
        tree = _parser.parse(text)
    except UnexpectedInput as exc:
        raise ParseError("syntax error in derivation", getattr(exc, "line", None), getattr(exc, "column", None)) from exc
    return _build(tree)
