import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.krivine.adequacy import (
    CHURCH_SUCC,
    Accepted,
    Equation,
    Fails,
    Holds,
    HornClause,
    Rejected,
    RuleTag,
    build_nat,
    check_derivation,
    church,
    describe,
    extract_realizer,
    fixpoint_of,
    golden_corpus,
    horn_realizer,
    horn_target,
    horn_truth,
    mutate,
    parse_derivation,
    validate_clause,
)
from src.krivine.errors import MalformedClause, MissingHypothesis, ParseError
from src.krivine.logic import (
    ZERO,
    FOVar,
    default_registry,
    falsity,
    fo,
    implies,
    nat,
    numeral,
    probe_model,
    realizes,
    sem_eq,
    sem_le,
    succ,
)
from src.krivine.machine import reaches, run
from src.krivine.nondet import push_all
from src.krivine.suites import NAT_ONE_SHAPE, NAT_ZERO_SHAPE, church_nat_model, lemma_model, succ_nat_model
from src.krivine.syntax import App, Bottom, Process, apply, nonrestricted, parse_stack, parse_term

CORPUS = golden_corpus()


@pytest.mark.parametrize("golden", CORPUS, ids=[g.name for g in CORPUS])
def test_golden_derivations_are_accepted_and_realized(golden):
    derivation = golden.derivation
    assert check_derivation(derivation) == Accepted()
    realizer = extract_realizer(derivation)
    assert realizes(realizer, derivation.formula, probe_model([realizer], golden.probes))


def test_corpus_uses_every_rule():
    used = frozenset().union(*(golden.derivation.rules() for golden in CORPUS))
    assert used == frozenset(RuleTag)


@given(st.sampled_from(CORPUS), st.integers(0, 2**16))
def test_mutations_are_rejected(golden, seed):
    mutant = mutate(golden.derivation, random.Random(seed))
    if mutant is not None:
        assert isinstance(check_derivation(mutant), Rejected)


def test_free_eigenvariable_is_rejected():
    derivation = parse_derivation(
        r"""
        (All1Intro [x : "X(y)"] |- "x" : "forall y X(y)" {"y"}
          (Axiom [x : "X(y)"] |- "x" : "X(y)"))
        """
    )
    verdict = check_derivation(derivation)
    assert verdict == Rejected((), RuleTag.ALL1_INTRO, "y is free in the context")
    assert verdict.describe() == "All1Intro at root: y is free in the context"


def test_rejection_points_at_the_offending_premise():
    derivation = parse_derivation(
        r"""
        (ImpIntro [] |- "\x.x" : "X -> Y"
          (Axiom [x : "X"] |- "x" : "Y"))
        """
    )
    verdict = check_derivation(derivation)
    assert isinstance(verdict, Rejected)
    assert verdict.path == (0,)
    assert verdict.rule is RuleTag.AXIOM


def test_peirce_needs_an_instance():
    derivation = parse_derivation(r"""(Peirce [] |- "cc" : "((A -> B) -> B) -> A")""")
    assert isinstance(check_derivation(derivation), Rejected)


def test_unknown_rules_do_not_parse():
    with pytest.raises(ParseError):
        parse_derivation(r"""(Cut [] |- "cc" : "Top")""")


def test_realizer_extraction_substitutes_hypotheses():
    derivation = parse_derivation(r"""(Axiom [x : "X"] |- "x" : "X")""")
    with pytest.raises(MissingHypothesis):
        extract_realizer(derivation)
    assert extract_realizer(derivation, {"x": nonrestricted(0)}) == nonrestricted(0)


def test_describe_prints_one_line_per_node():
    golden = next(g for g in CORPUS if g.name == "modus-ponens")
    lines = describe(golden.derivation)
    assert len(lines) == len(golden.derivation.nodes())
    assert lines[0].startswith("All2Intro")
    assert lines[-1].strip().startswith("Axiom")


# Horn clauses

ADD_ZERO = HornClause(("x",), (), Equation(fo("add", FOVar("x"), numeral(0)), FOVar("x")))
SYMMETRY = HornClause(("x", "y"), (Equation(FOVar("x"), FOVar("y")),), Equation(FOVar("y"), FOVar("x")))
ZERO_ONE = HornClause((), (), Equation(numeral(0), numeral(1)))


@pytest.mark.parametrize(
    "clause,truth,probe",
    [
        (ADD_ZERO, Holds(), "#a0 . #a1 . e0"),
        (SYMMETRY, Holds(), "#a0 . #a1 . #a0 . e0"),
        (ZERO_ONE, Fails(()), "#a0 . #a1 . e0"),
    ],
)
def test_horn_realizers(clause, truth, probe):
    realizer = horn_realizer(clause, truth)
    model = probe_model([realizer], [parse_stack(probe)])
    assert realizes(realizer, horn_target(clause, truth), model)


def test_horn_realizer_shapes():
    assert horn_realizer(SYMMETRY, Holds()) == parse_term(r"\t.\y. t y")
    assert horn_realizer(ZERO_ONE, Fails(())) == parse_term(r"\f. f")
    goal = HornClause(("x",), (Equation(FOVar("x"), succ(FOVar("x"))),))
    assert horn_realizer(goal, Holds()) == parse_term(r"\t. t (\y. y)")


def test_horn_truth_by_search():
    assert horn_truth(ADD_ZERO, 5) == Holds(5)
    assert horn_truth(ZERO_ONE, 3) == Fails(())
    assert horn_truth(HornClause(("x",), (), Equation(FOVar("x"), succ(FOVar("x")))), 3) == Fails((0,))
    # s(s(x)) = x is false in ℕ but true modulo 2.
    wraps = HornClause(("x",), (), Equation(succ(succ(FOVar("x"))), FOVar("x")))
    assert horn_truth(wraps, 2) == Fails((0,))
    assert horn_truth(wraps, 2, modulus=2) == Holds(2)


def test_malformed_clauses():
    with pytest.raises(MalformedClause):
        validate_clause(HornClause((), (), Equation(FOVar("x"), numeral(0))))
    with pytest.raises(MalformedClause):
        validate_clause(HornClause(("x",), (), Equation(fo("nope", FOVar("x")), numeral(0))))
    with pytest.raises(MalformedClause):
        horn_realizer(ADD_ZERO, Fails((0, 1)))


# nat


def test_church_numerals_realize_nat():
    for n in (0, 1):
        model = probe_model([church(n)], [parse_stack("#a0 . #a1 . e0")])
        assert realizes(church(n), nat(numeral(n)), model)


@pytest.mark.parametrize("n", range(4))
def test_church_numerals_realize_nat_over_their_iterates(n):
    model, formula = church_nat_model(n), nat(numeral(n))
    assert realizes(church(n), formula, model)
    full = len(model.poles) - 1
    assert falsity(formula, full, model) == {parse_stack("#a0 . #a1 . e0")}


@pytest.mark.parametrize("n", range(4))
def test_church_successor_realizes_the_induction_step(n):
    model = succ_nat_model()
    formula = implies(nat(numeral(n)), nat(numeral(n + 1)))
    assert realizes(CHURCH_SUCC, formula, model)
    full = len(model.poles) - 1
    assert falsity(formula, full, model) == {parse_stack("#a2 . #a0 . #a1 . e0")}


def test_nat_zero_shape():
    stacks = ["#a0 . #a1 . e0", "#a1 . #a1 . e0"]
    assert sem_eq(nat(ZERO), NAT_ZERO_SHAPE, lemma_model(stacks, 2, default_registry(1)))
    assert sem_le(NAT_ZERO_SHAPE, nat(ZERO), lemma_model(stacks, 2))


def test_nat_one_shape():
    model = lemma_model(["#a0 . #a1 . e0"], 3, default_registry(2))
    assert sem_eq(nat(numeral(1)), NAT_ONE_SHAPE, model)


@pytest.mark.parametrize("n", range(4))
def test_church_successor_behaves_like_the_next_numeral(n):
    def applied(term):
        return Process(term, push_all((nonrestricted(0), nonrestricted(1)), Bottom(0)))

    left = run(applied(apply(CHURCH_SUCC, church(n))), 200).final
    right = run(applied(church(n + 1)), 200).final
    assert left == right


@pytest.mark.parametrize("text", ["#a0", r"\x.\y.x"])
def test_recursor_unrolls(text):
    psi = parse_term(text)
    y_psi = fixpoint_of(psi)
    expected = Process(psi, push_all((church(0), App(CHURCH_SUCC, y_psi)), Bottom(0)))
    assert reaches(Process(y_psi, Bottom(0)), expected, 10)


def test_build_nat():
    assert build_nat("church", 2) == church(2)
    assert build_nat("church-succ") == CHURCH_SUCC
    with pytest.raises(ValueError):
        build_nat("church", -1)
    with pytest.raises(ValueError):
        build_nat("ackermann", 1)
