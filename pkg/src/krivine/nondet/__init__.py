from src.krivine.nondet.checks import (
    AGREEING,
    FAMILIES,
    PROBES,
    BehaviorKind,
    BranchSample,
    ChoiceSample,
    Obligation,
    VotingSample,
    agreeing_probes,
    branch_samples,
    check_behavior,
    check_voting,
    check_voting_exhaustive,
    choice_obligations,
    choice_samples,
    default_probes,
    default_samples,
    discharge,
    failed_families,
    is_voting_modulo,
    probe_stacks,
    push_all,
    result_probe,
    sample_of_instance,
    voting_obligation,
    voting_samples,
)
from src.krivine.nondet.kit import (
    BOTTOM,
    FALSE,
    GUSTAVE_TABLE,
    OMEGA,
    TOP,
    TORL,
    TORR,
    TRUE,
    build_formula,
    build_term,
    fork_spec,
    forp,
    gim_eq,
    gim_geq,
    gim_leq,
    gim_lt,
    gimel_pairwise_disjoint,
    gimel_to_vote,
    gustave,
    gustave_right,
    gustave_sections,
    left_or_spec,
    must_spec,
    nat_left,
    nat_right,
    pairwise_disjoint,
    parallel_or_spec,
    por_left,
    por_right,
    right_or_spec,
    vote,
    vote_to_gimel,
)
from src.krivine.nondet.lemmas import predicted_gimel_A_falsity, predicted_vote_falsity

__all__ = [
    "AGREEING",
    "BOTTOM",
    "BehaviorKind",
    "BranchSample",
    "ChoiceSample",
    "FALSE",
    "FAMILIES",
    "GUSTAVE_TABLE",
    "OMEGA",
    "Obligation",
    "PROBES",
    "TOP",
    "TORL",
    "TORR",
    "TRUE",
    "VotingSample",
    "agreeing_probes",
    "branch_samples",
    "build_formula",
    "build_term",
    "check_behavior",
    "check_voting",
    "check_voting_exhaustive",
    "choice_obligations",
    "choice_samples",
    "default_probes",
    "default_samples",
    "discharge",
    "failed_families",
    "fork_spec",
    "forp",
    "gim_eq",
    "gim_geq",
    "gim_leq",
    "gim_lt",
    "gimel_pairwise_disjoint",
    "gimel_to_vote",
    "gustave",
    "gustave_right",
    "gustave_sections",
    "is_voting_modulo",
    "left_or_spec",
    "must_spec",
    "nat_left",
    "nat_right",
    "pairwise_disjoint",
    "parallel_or_spec",
    "por_left",
    "por_right",
    "predicted_gimel_A_falsity",
    "predicted_vote_falsity",
    "probe_stacks",
    "push_all",
    "result_probe",
    "right_or_spec",
    "sample_of_instance",
    "vote",
    "vote_to_gimel",
    "voting_obligation",
    "voting_samples",
]
