import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from src.krivine.errors import PreconditionError, UndeclaredIndex
from src.krivine.gimel import (
    CoverPass,
    GimelConfig,
    check_gimel_realizers,
    chi_probes,
    config_for,
    content_r,
    cover_check,
    gimel_rules,
    is_sound,
    preset,
    random_processes,
    random_proof_like,
    replace_K,
    smallest_pole_members,
)
from src.krivine.multieval import DETERMINISTIC, In, PoleSearch, build_world
from src.krivine.reports import Outcome
from src.krivine.syntax import Bottom, Process, Push, is_proof_like, nonrestricted, parse_process, restricted

CFG = GimelConfig(n=2)
RULES = gimel_rules(CFG)


def instances(process, rule):
    return [i for i in RULES.instances(parse_process(process)) if i.rule == rule]


# Configuration


def test_bindings():
    assert CFG.phi_instr == nonrestricted(0)
    assert CFG.chi_instr == nonrestricted(1)
    assert CFG.top_instr == restricted(0)
    assert CFG.bottom_instr == restricted(1)
    assert CFG.gamma(0) == restricted(2)
    assert CFG.gamma_index(restricted(3)) == 1
    assert CFG.gamma_index(restricted(1)) is None
    assert CFG.gamma_index(nonrestricted(3)) is None


@pytest.mark.parametrize(
    "fields",
    [
        {"n": 0},
        {"n": 1, "chi": 0},
        {"n": 1, "top": 1},
        {"n": 1, "gamma_offset": 0, "indices": [0]},
        {"n": 1, "indices": [3, 3]},
    ],
)
def test_invalid_configs(fields):
    with pytest.raises(ValidationError):
        GimelConfig(**fields)


def test_presets():
    cfg, rules = preset("gimel3")
    assert cfg.n == 3 and rules.name == "gimel-3"
    assert preset("must")[1].name == "must"
    with pytest.raises(ValueError):
        preset("gimel4")


# Rules


def test_phi_drops_one_argument():
    found = instances("#a0 * #b1 . #b1 . #b0 . e0", "phi")
    assert len(found) == 3
    assert (parse_process("#b1 * e0"),) in [i.targets for i in found]


def test_chi_offers_every_choice():
    (found,) = instances("#a1 * #a3 . e0", "chi")
    assert found.targets == (parse_process("#a3 * #b0 . #b1 . e0"), parse_process("#a3 * #b1 . #b0 . e0"))


def test_bottom_is_absorbed():
    (found,) = instances("#b1 * #a0 . e0", "bottom")
    assert found.targets == ()


def test_chi_premises_are_not_met_by_a_projection():
    search = PoleSearch(RULES)
    probes = dict(chi_probes(CFG))
    assert not search.is_in(Process(CFG.chi_instr, Push(probes["projection"], Bottom(0))), 12)
    verdict = search.membership(Process(CFG.chi_instr, Push(probes["bottom"], Bottom(0))), 12)
    assert isinstance(verdict, In) and verdict.depth == 2


@pytest.mark.parametrize("n", [1, 2])
def test_gimel_realizers(n):
    report = check_gimel_realizers(GimelConfig(n=n), count=20)
    assert report.verdict is Outcome.PASS
    assert report.count(Outcome.FAIL) == 0


# Replacement and content


def test_replace_K():
    process = parse_process("#b2 #b3 * e0")
    assert replace_K(process, {0}, CFG) == parse_process("#b0 #b1 * e0")
    assert replace_K(process, set(), CFG) == parse_process("#b1 #b1 * e0")


def test_replace_K_checks_indices():
    with pytest.raises(UndeclaredIndex):
        replace_K(parse_process("#b2 * e0"), {5}, CFG)
    with pytest.raises(UndeclaredIndex):
        replace_K(parse_process("#b9 * e0"), set(), CFG)


def test_content_of_a_single_gamma():
    content = content_r(parse_process("#b2 * e0"), 5, CFG)
    assert content.members == frozenset({frozenset(), frozenset({1})})
    assert content.downward_closed()
    assert content.maximal() == [frozenset({1})]


def test_content_rejects_stray_indices():
    with pytest.raises(UndeclaredIndex):
        content_r(parse_process("#b9 * e0"), 5, CFG)


def test_soundness():
    assert is_sound(parse_process("#b2 * #a0 . e0"), CFG)
    assert not is_sound(parse_process("#a0 * #b1 . e0"), CFG)


def test_config_for_adds_fresh_indices():
    cfg = config_for(parse_process("#b2 * e0"), GimelConfig(n=2))
    assert cfg.indices == [0, 1, 2]


@pytest.mark.parametrize("n", [1, 2])
def test_cover_check_passes(n):
    process = parse_process("#a0 * #b2 . #b3 . #b2 . e0")
    cfg = config_for(process, GimelConfig(n=n))
    assert cover_check(process, 6, cfg) == CoverPass(6)


def test_cover_check_preconditions():
    with pytest.raises(PreconditionError):
        cover_check(parse_process("#b1 * e0"), 5, CFG)
    crowded = GimelConfig(n=1, indices=[0, 1])
    with pytest.raises(PreconditionError):
        cover_check(parse_process("#b2 #b3 * e0"), 5, crowded)


@settings(max_examples=10)
@given(st.integers(0, 2**16))
def test_content_is_downward_closed_and_proper(seed):
    base = GimelConfig(n=1)
    search = PoleSearch(gimel_rules(base))
    for process in random_processes(base, 5, max_size=10, seed=seed):
        cfg = config_for(process, base)
        content = content_r(process, 6, cfg, search)
        assert content.downward_closed()
        assert frozenset(cfg.indices) not in content


@given(st.integers(0, 2**16))
def test_random_corpora(seed):
    assert all(is_sound(p, CFG) for p in random_processes(CFG, 10, seed=seed))
    assert all(is_proof_like(t) for t in random_proof_like(CFG, 10, seed=seed))


# Least pole


def test_smallest_pole_agrees_with_the_intersection():
    world = build_world([parse_process("#a0 * #b1 . #b1 . #b0 . e0")], RULES)
    smallest = smallest_pole_members(world, RULES)
    assert smallest.agree
    assert parse_process("#b1 * e0") in smallest.by_search


def test_deterministic_smallest_pole_is_empty():
    world = build_world([parse_process(r"\x.x * #a0 . e0")], DETERMINISTIC)
    smallest = smallest_pole_members(world, DETERMINISTIC)
    assert smallest.agree
    assert smallest.by_search == frozenset()
