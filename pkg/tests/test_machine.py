import itertools
from typing import List, Set, Tuple, Union

import pytest
from hypothesis import HealthCheck, assume, given, settings

from src.krivine.adequacy import church, fixpoint
from src.krivine.machine import Rule, Stepped, Stuck, StuckReason, reaches, run, step
from src.krivine.suites import machine_suite
from src.krivine.syntax import App, Bottom, Cont, Lam, Process, Push, Term, Var, nonrestricted, parse_process, parse_term
from tests.strategies import processes, terms

# Weak-head β-reduction on named terms, used as an oracle for pure processes.

Named = Union[Tuple[str, str], Tuple[str, str, "Named"], Tuple[str, "Named", "Named"]]

_fresh = itertools.count()


class OutOfFuel(Exception):
    pass


def to_named(term: Term, env: List[str]) -> Named:
    match term:
        case Var(index, _):
            return ("var", env[len(env) - 1 - index])
        case Lam(body, _):
            name = f"x{len(env)}"
            return ("lam", name, to_named(body, env + [name]))
        case App(fun, arg):
            return ("app", to_named(fun, env), to_named(arg, env))
    raise TypeError(term)


def to_indices(named: Named, env: List[str]) -> Term:
    match named:
        case ("var", name):
            return Var(len(env) - 1 - max(i for i, n in enumerate(env) if n == name))
        case ("lam", name, body):
            return Lam(to_indices(body, env + [name]))
        case ("app", fun, arg):
            return App(to_indices(fun, env), to_indices(arg, env))
    raise TypeError(named)


def free_names(named: Named) -> Set[str]:
    match named:
        case ("var", name):
            return {name}
        case ("lam", name, body):
            return free_names(body) - {name}
        case ("app", fun, arg):
            return free_names(fun) | free_names(arg)
    raise TypeError(named)


def subst(named: Named, name: str, value: Named) -> Named:
    match named:
        case ("var", other):
            return value if other == name else named
        case ("app", fun, arg):
            return ("app", subst(fun, name, value), subst(arg, name, value))
        case ("lam", bound, body):
            if bound == name:
                return named
            if bound in free_names(value):
                renamed = f"r{next(_fresh)}"
                body = subst(body, bound, ("var", renamed))
                bound = renamed
            return ("lam", bound, subst(body, name, value))
    raise TypeError(named)


def whnf(named: Named, fuel: int) -> Named:
    spine: List[Named] = []
    while True:
        if named[0] == "app":
            spine.append(named[2])
            named = named[1]
        elif named[0] == "lam" and spine:
            fuel -= 1
            if fuel < 0:
                raise OutOfFuel()
            named = subst(named[2], named[1], spine.pop())
        else:
            break
    while spine:
        named = ("app", named, spine.pop())
    return named


# Examples


def test_push():
    outcome = step(parse_process("#a0 #a1 * e0"))
    assert outcome == Stepped(parse_process("#a0 #a1 * e0"), parse_process("#a0 * #a1 . e0"), Rule.PUSH)


def test_save_captures_the_rest_of_the_stack():
    outcome = step(parse_process(r"cc * (\k. k) . #a1 . e0"))
    assert isinstance(outcome, Stepped) and outcome.rule is Rule.SAVE
    rest = Push(nonrestricted(1), Bottom(0))
    assert outcome.next == Process(parse_term(r"\k. k"), Push(Cont(rest), rest))


def test_restore_replaces_the_stack():
    saved = Push(nonrestricted(1), Bottom(0))
    outcome = step(Process(Cont(saved), Push(nonrestricted(0), Bottom(0))))
    assert isinstance(outcome, Stepped) and outcome.rule is Rule.RESTORE
    assert outcome.next == Process(nonrestricted(0), saved)


@pytest.mark.parametrize(
    "head,reason",
    [
        (nonrestricted(0), StuckReason.BARE_INSTRUCTION),
        (Lam(Var(0)), StuckReason.EMPTY_STACK_ABSTRACTION),
        (parse_term("cc"), StuckReason.BOTTOM_REACHED),
        (Cont(Bottom(0)), StuckReason.CONTINUATION_EMPTY_STACK),
    ],
)
def test_stuck_reasons(head, reason):
    outcome = step(Process(head, Bottom(0)))
    assert isinstance(outcome, Stuck) and outcome.reason is reason


def test_identity_grabs_its_argument():
    trace = run(parse_process(r"\x.x * #a0 . e0"), 2)
    assert trace.final == parse_process("#a0 * e0")
    assert trace.fuel_used == 1
    assert trace.stuck is not None


def test_fuel_runs_out_on_omega():
    trace = run(parse_process(r"(\x. x x) (\x. x x) * e0"), 50)
    assert trace.exhausted
    assert trace.fuel_used == 50


def test_fixpoint_unrolls():
    t = nonrestricted(5)
    y = fixpoint(t)
    pi = Push(nonrestricted(1), Bottom(0))
    assert reaches(Process(y, pi), Process(t, Push(y, pi)), 10)


def test_church_two_matches_the_oracle():
    applied = App(App(church(2), Lam(Var(0), "f")), Lam(Lam(Var(1))))
    trace = run(Process(applied, Bottom(0)), 100)
    expected = to_indices(whnf(to_named(applied, []), 100), [])
    assert trace.final == Process(expected, Bottom(0))


def test_callcc_example():
    assert reaches(parse_process(r"cc * (\k. k #a0) . #a1 . e0"), parse_process("#a0 * #a1 . e0"), 20)


# Properties


@settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(terms(size=30, pure=True))
def test_pure_terms_agree_with_the_oracle(term):
    try:
        expected = whnf(to_named(term, []), 50)
    except OutOfFuel:
        assume(False)
        return
    trace = run(Process(term, Bottom(0)), 100_000)
    assert trace.stuck is not None
    assert trace.final.head == to_indices(expected, [])


@settings(max_examples=10_000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(processes(size=14))
def test_step_is_a_function(process):
    assert step(process) == step(process)


@given(processes(size=14))
def test_trace_steps_chain(process):
    trace = run(process, 100)
    current = process
    for outcome in trace.steps:
        assert outcome.source == current
        if isinstance(outcome, Stepped):
            current = outcome.next
    assert current == trace.final


def test_trace_records_every_process():
    trace = run(parse_process(r"(\x.x) #a0 * e0"), 10)
    assert trace.processes() == [
        parse_process(r"(\x.x) #a0 * e0"),
        parse_process(r"\x.x * #a0 . e0"),
        parse_process("#a0 * e0"),
    ]


def test_negative_fuel_is_an_error():
    with pytest.raises(ValueError):
        run(parse_process("#a0 * e0"), -1)


def test_machine_suite_checks_step_at_scale():
    reports = {r.check: r for r in machine_suite(seed=0, samples=3)}
    single = reports["step-single-valued"]
    assert single.bounds == {"processes": 300}
    assert len(single.instances) == 300
    assert single.failures == []
