from typing import Optional


class KrivineError(Exception):
    """Base class for every error raised by the toolkit."""


class ParseError(KrivineError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None) -> None:
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class UnboundVariable(ParseError):
    pass


class OpenTermError(KrivineError):
    """A process head or stack element had a free variable."""


class WorldNotValidated(KrivineError):
    pass


class WorldTooLarge(KrivineError):
    pass


class WorldEscape(KrivineError):
    """A process needed by a realizability check lies outside the finite world."""


class ResolutionError(KrivineError):
    """Unknown function symbol, predicate table or connective, or an arity mismatch."""


class BoundExceeded(KrivineError):
    pass


class UndeclaredIndex(KrivineError):
    pass


class PreconditionError(KrivineError):
    pass


class MissingHypothesis(KrivineError):
    pass


class MalformedClause(KrivineError):
    pass
