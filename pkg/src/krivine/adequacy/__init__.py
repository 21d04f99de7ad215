from src.krivine.adequacy.corpus import GoldenDerivation, golden_corpus
from src.krivine.adequacy.derivations import (
    Accepted,
    Derivation,
    Rejected,
    RuleTag,
    Verdict,
    check_derivation,
    describe,
    extract_realizer,
    mutate,
)
from src.krivine.adequacy.horn import (
    IDENTITY,
    Equation,
    Fails,
    Holds,
    HornClause,
    HornTruth,
    horn_realizer,
    horn_target,
    horn_truth,
    validate_clause,
)
from src.krivine.adequacy.nat import CHURCH_SUCC, build_nat, church, fixpoint, fixpoint_of
from src.krivine.adequacy.notation import parse_derivation

__all__ = [
    "Accepted",
    "CHURCH_SUCC",
    "Derivation",
    "Equation",
    "Fails",
    "GoldenDerivation",
    "Holds",
    "HornClause",
    "HornTruth",
    "IDENTITY",
    "Rejected",
    "RuleTag",
    "Verdict",
    "build_nat",
    "check_derivation",
    "church",
    "describe",
    "extract_realizer",
    "fixpoint",
    "fixpoint_of",
    "golden_corpus",
    "horn_realizer",
    "horn_target",
    "horn_truth",
    "mutate",
    "parse_derivation",
    "validate_clause",
]
