import re
from typing import List, Sequence

from src.krivine.syntax.terms import (
    CC,
    App,
    Cont,
    Instr,
    Lam,
    Process,
    Stack,
    Term,
    Var,
    free_indices,
    unwind,
)

_RESERVED = re.compile(r"^(cc|e[0-9]+)$")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")

# Printing contexts: a lambda extends as far right as possible, application is left-associative.
_TOP, _FUN, _ARG = 0, 1, 2


def print_term(term: Term, free: Sequence[str] = ()) -> str:
    """Concrete syntax for `term`; `free` names the free indices 0, 1, ... at the top."""
    return _show(term, list(reversed(free)), _TOP)


def print_stack(stack: Stack) -> str:
    terms, bottom = unwind(stack)
    parts = [_show(t, [], _FUN) for t in terms]
    parts.append(f"e{bottom.index}")
    return " . ".join(parts)


def print_process(process: Process) -> str:
    return f"{_show(process.head, [], _FUN)} * {print_stack(process.stack)}"


def _binder_name(term: Lam, env: List[str]) -> str:
    name = term.name if term.name and _IDENT.match(term.name) and not _RESERVED.match(term.name) else ""
    if not name:
        name = f"x{len(env)}"
    # Rename when this binder would shadow an outer name the body still refers to.
    referenced = {env[len(env) - index] for index in free_indices(term.body) if 0 < index <= len(env)}
    candidate, suffix = name, len(env)
    while candidate in referenced:
        candidate = f"{name}{suffix}"
        suffix += 1
    return candidate


def _show(term: Term, env: List[str], context: int) -> str:
    match term:
        case Var(index, name):
            if index < len(env):
                return env[len(env) - 1 - index]
            return name or f"v{index - len(env)}"
        case Lam(body, _):
            name = _binder_name(term, env)
            text = f"\\{name}. {_show(body, env + [name], _TOP)}"
            return f"({text})" if context != _TOP else text
        case App(fun, arg):
            text = f"{_show(fun, env, _FUN)} {_show(arg, env, _ARG)}"
            return f"({text})" if context == _ARG else text
        case CC():
            return "cc"
        case Instr(kind, index):
            return f"#{kind.value}{index}"
        case Cont(stack):
            return f"k[{print_stack(stack)}]"
    raise TypeError(f"Not a term: {term!r}")
