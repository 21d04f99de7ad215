import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.krivine.errors import WorldNotValidated, WorldTooLarge
from src.krivine.gimel import GimelConfig, gimel_rules
from src.krivine.multieval import (
    DETERMINISTIC,
    FiniteRelation,
    FiniteWorld,
    In,
    Pole,
    PoleSearch,
    Unknown,
    build_world,
    check_axioms,
    closure,
    pole_membership,
    poles_of,
    relation_of,
    replay,
    validate_world,
)
from src.krivine.syntax import parse_process

P = parse_process(r"\x.x * #a0 . e0")
Q = parse_process("#a0 * e0")

STUCK = tuple(parse_process(f"#a{i} * e0") for i in range(4))


def stuck_world(size: int = 4) -> FiniteWorld:
    return FiniteWorld(STUCK[:size], validated=True)


def masks(poles):
    return sorted(pole.mask for pole in poles)


# Worlds


def test_build_world_follows_the_machine():
    world = build_world([P], DETERMINISTIC)
    assert world.processes == (P, Q)
    assert world.validated


def test_build_world_is_bounded():
    with pytest.raises(WorldTooLarge):
        build_world([P], DETERMINISTIC, limit=1)


def test_validate_world_rejects_an_open_world():
    with pytest.raises(WorldNotValidated):
        validate_world(FiniteWorld((P,)), DETERMINISTIC)
    assert validate_world(FiniteWorld((P, Q)), DETERMINISTIC).validated


def test_unvalidated_worlds_are_refused():
    with pytest.raises(WorldNotValidated):
        poles_of(DETERMINISTIC, FiniteWorld((Q,)))


def test_pole_enumeration_is_bounded():
    world = FiniteWorld(tuple(parse_process(f"#a{i} * e0") for i in range(17)), validated=True)
    with pytest.raises(WorldTooLarge):
        poles_of(DETERMINISTIC, world)


# Poles


def test_poles_of_a_single_step():
    world = build_world([P], DETERMINISTIC)
    assert masks(poles_of(DETERMINISTIC, world)) == [0, 1, 3]


def test_poles_of_a_stuck_process():
    world = build_world([Q], DETERMINISTIC)
    assert masks(poles_of(DETERMINISTIC, world)) == [0, 1]


def test_absorbing_instruction_is_in_every_pole():
    rules = gimel_rules(GimelConfig(n=2))
    world = build_world([parse_process("#b1 * e0")], rules)
    assert masks(poles_of(rules, world)) == [1]


# Least pole


def test_membership_depths():
    rules = gimel_rules(GimelConfig(n=2))
    bottom = pole_membership(rules, parse_process("#b1 * e0"), 5)
    assert isinstance(bottom, In) and bottom.depth == 1
    applied = pole_membership(rules, parse_process(r"\x.x * #b1 . e0"), 5)
    assert isinstance(applied, In) and applied.depth == 2
    assert replay(applied.justification, rules)


def test_top_is_never_in_the_least_pole():
    rules = gimel_rules(GimelConfig(n=2))
    assert pole_membership(rules, parse_process("#b0 * e0"), 10) == Unknown(10)


def test_deterministic_least_pole_is_empty():
    assert not PoleSearch(DETERMINISTIC).is_in(P, 20)


def test_vote_needs_all_but_one_argument():
    rules = gimel_rules(GimelConfig(n=2))
    search = PoleSearch(rules)
    assert search.is_in(parse_process("#a0 * #b1 . #b1 . #b0 . e0"), 5)
    assert not search.is_in(parse_process("#a0 * #b1 . #b0 . #b0 . e0"), 5)


@given(st.integers(1, 6), st.integers(0, 6))
def test_membership_is_monotone_in_the_cap(cap, extra):
    rules = gimel_rules(GimelConfig(n=2))
    process = parse_process(r"(\x.\y. y) #b0 * #b1 . e0")
    small = PoleSearch(rules).membership(process, cap)
    large = PoleSearch(rules).membership(process, cap + extra)
    if isinstance(small, In):
        assert isinstance(large, In) and large.depth == small.depth


# Relations


def test_closure_contains_the_embedding_and_identity():
    world = build_world([P], DETERMINISTIC)
    relation = closure(FiniteRelation(world, frozenset()), world)
    assert relation.holds([P], [Q])
    assert relation.holds([Q], [Q])
    assert not relation.holds([Q], [P])
    assert check_axioms(relation, world).passed


def test_closure_cuts():
    world = stuck_world(3)
    a, b, c = (world.bit(p) for p in world)
    relation = closure(FiniteRelation(world, frozenset({(a, b), (b, c)})), world)
    assert relation.holds_mask(a, c)
    assert relation.holds_mask(a | b, c)
    assert not relation.holds_mask(c, a)


def test_explicit_relations_report_missing_axioms():
    world = build_world([P], DETERMINISTIC)
    relation = FiniteRelation.from_sets(world, [([P], [Q])])
    report = check_axioms(relation, world)
    assert not report.passed
    assert len(report.by_axiom("identity")) == 2
    assert report.by_axiom("weakening")
    assert not report.by_axiom("embedding")


def test_relation_of_no_poles_relates_everything():
    world = stuck_world()
    relation = relation_of([], world)
    assert relation.pairs == frozenset({(0, 0)})
    assert relation.holds_mask(0, 0)


def test_relation_of_every_subset_is_identity_only():
    world = stuck_world(2)
    everything = [Pole(world.members(mask), mask) for mask in range(4)]
    relation = relation_of(everything, world)
    assert relation.pairs == frozenset()
    assert relation.holds_mask(1, 1)
    assert not relation.holds_mask(1, 2)


@given(st.sets(st.integers(0, 15)))
def test_poles_of_relation_of_is_identity(family):
    world = stuck_world()
    structure = [Pole(world.members(mask), mask) for mask in family]
    assert masks(poles_of(relation_of(structure, world), world)) == sorted(family)


@given(st.sets(st.tuples(st.integers(0, 15), st.integers(0, 15)), max_size=5))
def test_closure_keeps_the_poles(seed):
    world = stuck_world()
    relation = FiniteRelation(world, frozenset(seed))
    assert masks(poles_of(closure(relation, world), world)) == masks(poles_of(relation, world))


@given(st.sets(st.integers(0, 7)))
def test_relations_from_poles_satisfy_the_axioms(family):
    world = stuck_world(3)
    structure = [Pole(world.members(mask), mask) for mask in family]
    assert check_axioms(relation_of(structure, world), world).passed
