from src.krivine.syntax.parser import parse_process, parse_stack, parse_term
from src.krivine.syntax.printer import print_process, print_stack, print_term
from src.krivine.syntax.terms import (
    CC,
    App,
    Bottom,
    Cont,
    InstructionKind,
    Instr,
    Lam,
    Process,
    Push,
    Stack,
    Term,
    Var,
    apply,
    ensure_closed,
    free_indices,
    instantiate,
    instructions,
    is_closed,
    is_proof_like,
    map_instructions,
    map_process_instructions,
    nonrestricted,
    pop,
    process_instructions,
    restricted,
    shift,
    size,
    stack_of,
    substitute,
    suffixes,
    unwind,
)

__all__ = [
    "CC",
    "App",
    "Bottom",
    "Cont",
    "InstructionKind",
    "Instr",
    "Lam",
    "Process",
    "Push",
    "Stack",
    "Term",
    "Var",
    "apply",
    "ensure_closed",
    "free_indices",
    "instantiate",
    "instructions",
    "is_closed",
    "is_proof_like",
    "map_instructions",
    "map_process_instructions",
    "nonrestricted",
    "parse_process",
    "parse_stack",
    "parse_term",
    "pop",
    "print_process",
    "print_stack",
    "print_term",
    "process_instructions",
    "restricted",
    "shift",
    "size",
    "stack_of",
    "substitute",
    "suffixes",
    "unwind",
]
