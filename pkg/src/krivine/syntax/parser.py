from typing import List, Sequence

import structlog
from lark import Lark, Token, Tree, UnexpectedInput
from lark.visitors import Interpreter

from src.krivine.errors import ParseError, UnboundVariable
from src.krivine.syntax.terms import (
    CC,
    App,
    Bottom,
    InstructionKind,
    Instr,
    Lam,
    Process,
    Push,
    Stack,
    Term,
    Var,
)

log = structlog.get_logger(__name__)

GRAMMAR = r"""
?term: lam
     | app
     | app lam -> application

lam: _LAMBDA IDENT "." term

?app: app atom -> application
    | atom

?atom: IDENT -> var
     | "cc" -> cc
     | INSTRUCTION -> instruction
     | "(" term ")"

stack: BOTTOM -> bottom
     | term "." stack -> push

process: term "*" stack

_LAMBDA: "\\" | "λ"
BOTTOM.2: /e[0-9]+/
INSTRUCTION: /#[ab][0-9]+/
IDENT: /[A-Za-z_][A-Za-z0-9_']*/

%import common.WS
%ignore WS
"""

_parser = Lark(GRAMMAR, start=["term", "stack", "process"], parser="lalr")


class _Builder(Interpreter):
    """Turns a parse tree into de Bruijn terms, resolving names against a scope."""

    def __init__(self, free: Sequence[str]) -> None:
        # Innermost binder last; free[0] is index 0 at the top.
        self._scope: List[str] = list(reversed(free))

    def var(self, tree: Tree) -> Term:
        token: Token = tree.children[0]
        name = str(token)
        for position in range(len(self._scope) - 1, -1, -1):
            if self._scope[position] == name:
                return Var(len(self._scope) - 1 - position, name)
        raise UnboundVariable(f"unbound variable {name!r}", token.line, token.column)

    def cc(self, tree: Tree) -> Term:
        return CC()

    def instruction(self, tree: Tree) -> Term:
        text = str(tree.children[0])
        return Instr(InstructionKind(text[1]), int(text[2:]))

    def application(self, tree: Tree) -> Term:
        fun, arg = tree.children
        return App(self.visit(fun), self.visit(arg))

    def lam(self, tree: Tree) -> Term:
        name, body = tree.children
        self._scope.append(str(name))
        try:
            return Lam(self.visit(body), str(name))
        finally:
            self._scope.pop()

    def bottom(self, tree: Tree) -> Stack:
        return Bottom(int(str(tree.children[0])[1:]))

    def push(self, tree: Tree) -> Stack:
        head, tail = tree.children
        return Push(self.visit(head), self.visit(tail))

    def process(self, tree: Tree) -> Process:
        head, stack = tree.children
        return Process(self.visit(head), self.visit(stack))


def _parse(text: str, start: str) -> Tree:
    try:
        return _parser.parse(text, start=start)
    except UnexpectedInput as exc:
        line = getattr(exc, "line", None)
        column = getattr(exc, "column", None)
        log.debug("parse failed", start=start, text=text, line=line, column=column)
        raise ParseError(f"syntax error in {start}", line, column) from exc


def parse_term(text: str, free: Sequence[str] = ()) -> Term:
    """
    Parse a λc term. Names not bound by a lambda must appear in `free`
    (free[0] is index 0), otherwise `UnboundVariable` is raised.
    """
    return _Builder(free).visit(_parse(text, "term"))


def parse_stack(text: str) -> Stack:
    return _Builder(()).visit(_parse(text, "stack"))


def parse_process(text: str) -> Process:
    return _Builder(()).visit(_parse(text, "process"))
