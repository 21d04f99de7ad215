from src.krivine.logic.desugar import (
    boolean,
    conj,
    desugar,
    disj,
    eq,
    exists,
    exists2,
    forall_rel,
    gim,
    gim_guard,
    iff,
    nat,
    neg,
    neq,
    relativize,
)
from src.krivine.logic.formulas import (
    ZERO,
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
    alpha_equal,
    atom,
    caps,
    fo,
    foralls,
    free_ind,
    free_pred,
    implies,
    is_closed,
    numeral,
    print_fo_term,
    print_formula,
    subst_ind,
    subst_pred,
    succ,
)
from src.krivine.logic.functions import DEFAULT_REGISTRY, FunctionRegistry, FunctionSymbol, default_registry, fo_value
from src.krivine.logic.model import (
    FiniteModel,
    PredicateTable,
    equation_closed_form,
    falsity,
    falsity_mask,
    probe_model,
    realizes,
    sem_eq,
    sem_le,
    suffix_closure,
    truth,
)
from src.krivine.logic.parser import parse_fo_term, parse_formula

__all__ = [
    "DEFAULT_REGISTRY",
    "ZERO",
    "Atom",
    "Bot",
    "Cap",
    "Const",
    "Cup",
    "EqImplies",
    "FOApp",
    "FOTerm",
    "FOVar",
    "FiniteModel",
    "ForallInd",
    "ForallPred",
    "Formula",
    "FunctionRegistry",
    "FunctionSymbol",
    "Implies",
    "PredicateTable",
    "Top",
    "alpha_equal",
    "atom",
    "boolean",
    "caps",
    "conj",
    "default_registry",
    "desugar",
    "disj",
    "eq",
    "equation_closed_form",
    "exists",
    "exists2",
    "falsity",
    "falsity_mask",
    "fo",
    "fo_value",
    "forall_rel",
    "foralls",
    "free_ind",
    "free_pred",
    "gim",
    "gim_guard",
    "iff",
    "implies",
    "is_closed",
    "nat",
    "neg",
    "neq",
    "numeral",
    "parse_fo_term",
    "parse_formula",
    "print_fo_term",
    "print_formula",
    "probe_model",
    "realizes",
    "relativize",
    "sem_eq",
    "sem_le",
    "subst_ind",
    "subst_pred",
    "succ",
    "suffix_closure",
    "truth",
]
