import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.krivine.adequacy import church
from src.krivine.errors import ParseError, UnboundVariable
from src.krivine.nondet import TORL, TORR
from src.krivine.syntax import (
    CC,
    App,
    Bottom,
    Cont,
    Lam,
    Process,
    Push,
    Var,
    is_closed,
    is_proof_like,
    nonrestricted,
    parse_process,
    parse_stack,
    parse_term,
    print_process,
    print_stack,
    print_term,
    restricted,
    substitute,
)
from tests.strategies import processes, terms


def test_parse_examples():
    assert parse_term(r"\x. x") == Lam(Var(0))
    assert parse_term("cc") == CC()
    assert parse_term("#a0 #b1") == App(nonrestricted(0), restricted(1))


def test_lambda_extends_right_and_application_is_left_associative():
    assert parse_term(r"\x. x x") == Lam(App(Var(0), Var(0)))
    assert parse_term("#a0 #a1 #a2") == App(App(nonrestricted(0), nonrestricted(1)), nonrestricted(2))


def test_parse_stack_and_process():
    assert parse_stack("#a0 . #a1 . e0") == Push(nonrestricted(0), Push(nonrestricted(1), Bottom(0)))
    assert parse_stack("e3") == Bottom(3)
    assert parse_process(r"\x.x * #a0 . e0") == Process(Lam(Var(0)), Push(nonrestricted(0), Bottom(0)))


def test_print_examples():
    assert print_term(Lam(Var(0))) == r"\x0. x0"
    assert print_term(church(0)) == r"\f. \x. x"
    assert print_stack(Push(CC(), Bottom(0))) == "cc . e0"
    assert print_process(Process(restricted(1), Bottom(0))) == "#b1 * e0"


def test_continuations_print_as_diagnostics():
    assert print_term(Cont(Push(nonrestricted(0), Bottom(0)))) == "k[#a0 . e0]"


def test_or_terms_print_back():
    for term in (TORL, TORR):
        assert parse_term(print_term(term)) == term
    assert print_term(TORL).startswith(r"\x. \y. x y")


def test_syntax_errors_carry_a_position():
    with pytest.raises(ParseError) as info:
        parse_term("#a0 )")
    assert info.value.line == 1


def test_unbound_variables_are_rejected():
    with pytest.raises(UnboundVariable):
        parse_term("x")
    assert parse_term("x", free=["x"]) == Var(0)


def test_substitute_examples():
    u = nonrestricted(3)
    assert substitute(Var(0), [(0, u)]) == u
    assert substitute(Lam(Var(1)), [(0, CC())]) == Lam(CC())
    delta = parse_term(r"\d. y (d d)", free=["y"])
    assert substitute(App(Var(0), Var(0)), [(0, delta)]) == App(delta, delta)


def test_substitute_rejects_a_variable_bound_twice():
    with pytest.raises(ValueError):
        substitute(Var(0), [(0, CC()), (0, CC())])


def test_proof_like_examples():
    assert is_proof_like(CC())
    assert not is_proof_like(restricted(1))
    assert is_proof_like(Lam(App(Var(0), nonrestricted(0))))
    assert not is_proof_like(Cont(Bottom(0)))


@given(terms(size=12))
def test_print_then_parse_is_identity(term):
    assert parse_term(print_term(term)) == term


@given(processes())
def test_process_print_then_parse_is_identity(process):
    assert parse_process(print_process(process)) == process


@given(terms(size=6), terms(size=6))
def test_proof_like_composes(first, second):
    if is_proof_like(first) and is_proof_like(second):
        assert is_proof_like(App(first, second))
        assert is_proof_like(Lam(first))


@given(terms(depth=2, size=10), terms(size=4), terms(size=4))
def test_disjoint_substitution_is_order_independent(term, u, v):
    # Closed replacements: substituting 0 then 1 (which became 0) equals the simultaneous version.
    simultaneous = substitute(term, [(0, u), (1, v)])
    sequential = substitute(substitute(term, [(0, u)]), [(1, v)])
    assert is_closed(simultaneous)
    assert simultaneous == sequential


@given(st.integers(0, 5))
def test_church_numerals_are_proof_like(n):
    assert is_proof_like(church(n))
