import pytest

from src.krivine.errors import ResolutionError
from src.krivine.gimel import GimelConfig, fork_rules, gimel_rules, must_rules
from src.krivine.logic import Cap, ForallPred, caps, probe_model, sem_eq, sem_le
from src.krivine.nondet import (
    BOTTOM,
    OMEGA,
    TOP,
    TORL,
    TORR,
    BehaviorKind,
    VotingSample,
    branch_samples,
    build_formula,
    build_term,
    check_behavior,
    check_voting,
    check_voting_exhaustive,
    default_samples,
    failed_families,
    gimel_to_vote,
    gustave,
    gustave_right,
    gustave_sections,
    por_left,
    por_right,
    push_all,
    result_probe,
    sample_of_instance,
    vote,
)
from src.krivine.reports import Outcome
from src.krivine.suites import FORK3, GUSTAVE_PROJECTION, gustave_model
from src.krivine.syntax import App, Bottom, is_closed, is_proof_like, parse_stack, parse_term

CFG = GimelConfig(n=2)
RULES = gimel_rules(CFG)
PHI = CFG.phi_instr


# Builders


def test_build_formula():
    assert build_formula("vote", 2) == vote(2)
    assert build_formula("vote", 3, 2) == vote(3, 2)
    with pytest.raises(ResolutionError):
        build_formula("vote")
    with pytest.raises(ResolutionError):
        build_formula("majority", 3)


def test_vote_branches():
    two_of_three = vote(3, 2)
    assert isinstance(two_of_three, ForallPred)
    assert isinstance(two_of_three.body, Cap)
    with pytest.raises(ResolutionError):
        vote(0)
    with pytest.raises(ResolutionError):
        vote(2, 3)


@pytest.mark.parametrize(
    "name,params",
    [
        ("true", ()),
        ("false", ()),
        ("omega", ()),
        ("torl", ()),
        ("torr", ()),
        ("vote-to-A", ()),
        ("A-to-vote", (3,)),
        ("por-l", ()),
        ("por-r", ()),
        ("gustave-r", ()),
        ("nat-l", ()),
        ("nat-r", ()),
    ],
)
def test_kit_terms_are_closed_and_proof_like(name, params):
    term = build_term(name, *params)
    assert is_closed(term)
    assert is_proof_like(term)


def test_bad_term_builders():
    with pytest.raises(ResolutionError):
        build_term("A-to-vote")
    with pytest.raises(ResolutionError):
        gimel_to_vote(0)


# Voting


def test_phi_is_a_voting_instruction():
    assert check_voting(PHI, 3, RULES, count=30).verdict is Outcome.PASS


def test_a_projection_does_not_vote():
    sample = VotingSample((TOP, BOTTOM, BOTTOM), Bottom(0), (0,))
    projection = parse_term(r"\x.\y.\z.x")
    report = check_voting(projection, 3, RULES, samples=[sample])
    assert report.verdict is Outcome.FAIL
    assert "not in the pole" in report.failures[0].detail
    assert check_voting(PHI, 3, RULES, samples=[sample]).verdict is Outcome.PASS


def test_a_three_way_fork_votes_two_out_of_three():
    cfg = GimelConfig(n=1)
    fork3 = App(FORK3, cfg.fork_instr)
    report = check_behavior(BehaviorKind.VOTING, fork3, fork_rules(cfg), depth_cap=40, count=30, n=3, k=2)
    assert report.check == "voting-3-2"
    assert report.verdict is Outcome.PASS
    assert all(len(s.excluded) == 2 for s in default_samples(BehaviorKind.VOTING, 30, n=3, k=2))


def test_a_voting_instruction_needs_two_premises():
    sample = VotingSample((BOTTOM, TOP, TOP), Bottom(0), (1, 2))
    report = check_behavior(BehaviorKind.VOTING, PHI, RULES, samples=[sample], n=3, k=2)
    assert report.verdict is Outcome.FAIL
    assert "not in the pole" in report.failures[0].detail


def test_missing_premises_make_the_instance_unknown():
    sample = VotingSample((BOTTOM, TOP, BOTTOM), Bottom(0), (0,))
    report = check_voting(PHI, 3, RULES, samples=[sample])
    assert report.instances[0].outcome is Outcome.UNKNOWN
    assert report.verdict is Outcome.UNKNOWN


def test_sample_arity_must_match():
    sample = VotingSample((BOTTOM, BOTTOM), Bottom(0), (0,))
    with pytest.raises(ValueError):
        check_voting(PHI, 3, RULES, samples=[sample])


@pytest.mark.parametrize(
    "text,stacks",
    [
        ("phi", ["#b0 . #b1 . #b1 . e0", "#b1 . #b0 . #b0 . e0"]),
        ("phi", ["#b1 . #b1 . #b1 . e0"]),
        (r"\x.\y.\z.x", ["#b1 . #b0 . #b1 . e0"]),
    ],
)
def test_voting_realizers_are_voting_instructions(text, stacks):
    candidate = PHI if text == "phi" else parse_term(text)
    model = probe_model([candidate], [parse_stack(s) for s in stacks], 2, RULES)
    assert check_voting_exhaustive(candidate, 3, model).verdict is Outcome.PASS


# Fork and must


def test_fork_instruction_is_a_fork():
    cfg = GimelConfig(n=1)
    report = check_behavior(BehaviorKind.FORK, cfg.fork_instr, fork_rules(cfg), count=40)
    assert report.verdict is Outcome.PASS
    assert len(report.instances) == 80


def test_must_instruction_needs_both_branches():
    cfg = GimelConfig(n=1)
    rules = must_rules(cfg)
    assert check_behavior(BehaviorKind.MUST, cfg.fork_instr, rules, count=40).verdict is Outcome.PASS
    assert check_behavior(BehaviorKind.FORK, cfg.fork_instr, rules, count=100).verdict is Outcome.FAIL


def test_sample_of_instance():
    assert sample_of_instance(BehaviorKind.FORK, 5) == 2
    assert sample_of_instance(BehaviorKind.MUST, 5) == 5
    assert sample_of_instance(BehaviorKind.VOTING, 5) == 5


def test_default_samples():
    voting = default_samples(BehaviorKind.VOTING, 5, n=3)
    assert len(voting) == 5
    assert all(len(s.arguments) == 3 for s in voting)
    assert len(default_samples(BehaviorKind.GUSTAVE, 2)) == 5


# Parallel or


def test_branch_samples_use_omega_for_top_on_the_first_pass():
    rows = (("T", "1", "1"),)
    first, second = branch_samples(rows, count=2)
    assert first.arguments[0] == OMEGA
    assert first.family == "(⊤, bool(1)) -> bool(1)"
    assert second.arguments[1] == parse_term(r"\x.\y.y")


def test_result_probes():
    filler = parse_term("#a0")
    assert result_probe("1", filler) == push_all((filler, BOTTOM), Bottom(0))
    assert result_probe("0", filler) == push_all((BOTTOM, filler), Bottom(0))


def test_parallel_or_from_a_voting_instruction():
    r_phi = App(por_right(), PHI)
    assert check_behavior(BehaviorKind.PARALLEL_OR, r_phi, RULES, count=20).verdict is Outcome.PASS


@pytest.mark.parametrize(
    "term,side,missed",
    [
        (TORL, BehaviorKind.LEFT_OR, "(⊤, bool(1)) -> bool(1)"),
        (TORR, BehaviorKind.RIGHT_OR, "(bool(1), ⊤) -> bool(1)"),
    ],
)
def test_sequential_or_misses_one_family(term, side, missed):
    report = check_behavior(BehaviorKind.PARALLEL_OR, term, RULES, count=20)
    assert failed_families(report) == [missed]
    assert check_behavior(side, term, RULES, count=20).verdict is Outcome.PASS


def test_parallel_or_gives_back_a_voting_instruction():
    r_phi = App(por_right(), PHI)
    assert check_voting(App(por_left(), r_phi), 3, RULES, depth_cap=40, count=20).verdict is Outcome.PASS


# Gustave


def test_gustave_from_a_voting_instruction():
    r_phi = App(gustave_right(), PHI)
    report = check_behavior(BehaviorKind.GUSTAVE, r_phi, RULES, depth_cap=40, count=20)
    assert report.verdict is Outcome.PASS
    assert len(report.instances) == 20


def test_a_projection_is_not_gustave():
    report = check_behavior(BehaviorKind.GUSTAVE, GUSTAVE_PROJECTION, RULES, count=20)
    assert report.verdict is Outcome.FAIL
    assert "(⊤, bool(0), bool(1)) -> bool(1)" in failed_families(report)


def test_one_sequential_read_misses_exactly_one_row():
    x_first = parse_term(r"\x.\y.\z. x (y (\a.\b.a) (\a.\b.b)) (z (\a.\b.b) (\a.\b.a))")
    report = check_behavior(BehaviorKind.GUSTAVE, x_first, RULES, count=20)
    assert failed_families(report) == ["(⊤, bool(0), bool(1)) -> bool(1)"]


def test_gustave_sections():
    model = gustave_model()
    sections = gustave_sections()
    assert [first for first, _ in sections] == ["0", "T", "1"]
    for _, section in sections:
        assert sem_le(gustave(), section, model)
    assert sem_eq(gustave(), caps(*(s for _, s in sections)), model)
