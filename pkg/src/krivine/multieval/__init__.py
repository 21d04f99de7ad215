from src.krivine.multieval.relations import (
    AxiomReport,
    AxiomViolation,
    FiniteRelation,
    Pole,
    check_axioms,
    closure,
    is_pole,
    minimal_pairs,
    poles_of,
    relation_of,
)
from src.krivine.multieval.rules import DETERMINISTIC, STEP_RULE, InstructionRule, RuleInstance, RuleSet, targets
from src.krivine.multieval.search import In, Justification, PoleSearch, PoleVerdict, Unknown, pole_membership, replay
from src.krivine.multieval.world import FiniteWorld, build_world, require_validated, validate_world

__all__ = [
    "AxiomReport",
    "AxiomViolation",
    "DETERMINISTIC",
    "FiniteRelation",
    "FiniteWorld",
    "In",
    "InstructionRule",
    "Justification",
    "Pole",
    "PoleSearch",
    "PoleVerdict",
    "RuleInstance",
    "RuleSet",
    "STEP_RULE",
    "Unknown",
    "build_world",
    "check_axioms",
    "closure",
    "is_pole",
    "minimal_pairs",
    "pole_membership",
    "poles_of",
    "relation_of",
    "replay",
    "require_validated",
    "targets",
    "validate_world",
]
