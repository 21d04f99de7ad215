"""
Verification suites run by `lambdac verify`. Each suite returns one report per
check; all randomness comes from the seed.
"""
import random
from typing import Callable, Dict, List, Sequence, Tuple

import structlog

from src.krivine.adequacy import (
    CHURCH_SUCC,
    Accepted,
    Equation,
    Fails,
    Holds,
    HornClause,
    HornTruth,
    check_derivation,
    church,
    extract_realizer,
    fixpoint_of,
    golden_corpus,
    horn_realizer,
    horn_target,
    mutate,
)
from src.krivine.gimel import (
    CoverPass,
    GimelConfig,
    check_gimel_realizers,
    config_for,
    content_r,
    cover_check,
    fork_rules,
    gimel_rules,
    random_processes,
    random_proof_like,
    replace_K,
)
from src.krivine.logic import (
    DEFAULT_REGISTRY,
    ZERO,
    Atom,
    Bot,
    FiniteModel,
    FOVar,
    ForallPred,
    Formula,
    FunctionRegistry,
    Top,
    boolean,
    caps,
    default_registry,
    eq,
    equation_closed_form,
    falsity_mask,
    fo,
    implies,
    nat,
    neq,
    numeral,
    probe_model,
    realizes,
    sem_eq,
    sem_le,
    suffix_closure,
)
from src.krivine.machine import reaches, run, step
from src.krivine.multieval import (
    DETERMINISTIC,
    FiniteRelation,
    FiniteWorld,
    In,
    Pole,
    PoleSearch,
    build_world,
    check_axioms,
    closure,
    poles_of,
    relation_of,
    validate_world,
)
from src.krivine.nondet import (
    BOTTOM,
    TOP,
    TORL,
    TORR,
    BehaviorKind,
    VotingSample,
    check_behavior,
    check_voting,
    check_voting_exhaustive,
    failed_families,
    gimel_pairwise_disjoint,
    gustave,
    gustave_right,
    gustave_sections,
    por_left,
    por_right,
    predicted_gimel_A_falsity,
    predicted_vote_falsity,
    push_all,
    vote,
)
from src.krivine.reports import CheckReport, Outcome, SuiteResult
from src.krivine.syntax import (
    App,
    Bottom,
    Process,
    Push,
    Stack,
    Term,
    apply,
    parse_process,
    parse_stack,
    parse_term,
)
from src.utils import powerset

log = structlog.get_logger(__name__)

Suite = Callable[[int, int], List[CheckReport]]


def _report(check: str, seed: int, **bounds: int) -> CheckReport:
    return CheckReport(check=check, seed=seed, bounds=bounds)


def _expect(report: CheckReport, instance: str, ok: bool, detail: str = "") -> None:
    report.add(instance, Outcome.PASS if ok else Outcome.FAIL, detail="" if ok else detail)


# Machine


def machine_suite(seed: int, samples: int) -> List[CheckReport]:
    cfg = GimelConfig(n=2)
    determinism = _report("machine-determinism", seed, samples=samples)
    for i, process in enumerate(random_processes(cfg, samples, max_size=16, seed=seed, sound=False)):
        trace = run(process, 200)
        again = run(process, 200)
        ok = step(process) == step(process) and trace.processes() == again.processes()
        _expect(determinism, f"process {i}", ok, "two runs of the same process diverged")

    count = samples * 100
    single = _report("step-single-valued", seed, processes=count)
    for i, process in enumerate(random_processes(cfg, count, max_size=14, seed=seed + 1, sound=False)):
        _expect(single, f"process {i}", step(process) == step(process), "step gave two results")

    examples = _report("machine-examples", seed)
    stuck = run(parse_process(r"(\x.x) cc * e0"), 100)
    _expect(examples, r"(\x.x) cc * e0 gets stuck", stuck.stuck is not None, "trace did not get stuck")
    restored = reaches(parse_process(r"cc * (\k. k #a0) . #a1 . e0"), parse_process("#a0 * #a1 . e0"), 20)
    _expect(examples, "cc restores the captured stack", restored, "continuation did not restore the stack")
    return [determinism, single, examples]


# Falsity lemmas


def lemma_model(stacks: Sequence[str], size: int, registry: FunctionRegistry = DEFAULT_REGISTRY) -> FiniteModel:
    """Π₀ from `stacks`; the world is every head of Π₀ against every stack of Π₀."""
    universe = suffix_closure(parse_stack(s) for s in stacks)
    heads = list(dict.fromkeys(s.head for s in universe if isinstance(s, Push)))
    world = build_world([Process(h, s) for h in heads for s in universe], DETERMINISTIC)
    return FiniteModel(size, world, stacks=universe, registry=registry)


VOTE_STACKS = ["#a0 . #a1 . #a0 . e0", "#a1 . #a1 . #a0 . e0", "#a2 . #a1 . #a0 . e0", "#a0 . #a0 . #a0 . e0"]
VOTE_SHAPES = [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)]


def vote_model() -> FiniteModel:
    """Four argument triples over three heads; the world only has the heads against e0 and #a0 . e0."""
    universe = suffix_closure(parse_stack(s) for s in VOTE_STACKS)
    heads = list(dict.fromkeys(s.head for s in universe if isinstance(s, Push)))
    rests = [parse_stack("e0"), parse_stack("#a0 . e0")]
    return FiniteModel(1, build_world([Process(h, s) for h in heads for s in rests], DETERMINISTIC), stacks=universe)


def falsity_lemmas_suite(seed: int, samples: int) -> List[CheckReport]:
    equations = _report("equation-closed-forms", seed, size=2)
    small = lemma_model(["#a0 . e0"], 2)
    for a in range(3):
        for b in range(2):
            left, right = numeral(a), numeral(b)
            same = sem_eq(eq(left, right), equation_closed_form(left, right, small), small)
            _expect(equations, f"{a} = {b}", same, "falsity differs from the closed form")
            same = sem_eq(neq(left, right), equation_closed_form(left, right, small, negated=True), small)
            _expect(equations, f"{a} != {b}", same, "falsity differs from the closed form")

    model = lemma_model(["#a0 . #a1 . #a0 . e0", "#a1 . #a1 . #a0 . e0"], 2)
    voting = _report("vote-falsity", seed, poles=len(model.poles))
    disjoint = _report("gimel-A-falsity", seed, poles=len(model.poles))
    for n in (1, 2, 3):
        for index in range(len(model.poles)):
            got = falsity_mask(vote(n), index, model)
            _expect(voting, f"n={n} pole {index}", got == predicted_vote_falsity(model, index, n), f"mask {got:b}")
            got = falsity_mask(gimel_pairwise_disjoint(n), index, model)
            ok = got == predicted_gimel_A_falsity(model, index, n)
            _expect(disjoint, f"n={n} pole {index}", ok, f"mask {got:b}")

    wide = vote_model()
    for n, k in VOTE_SHAPES:
        for index in range(len(wide.poles)):
            got = falsity_mask(vote(n, k), index, wide)
            ok = got == predicted_vote_falsity(wide, index, n, k)
            _expect(voting, f"n={n} k={k} pole {index} of {len(wide.stacks)} stacks", ok, f"mask {got:b}")

    booleans = _report("bool-falsity", seed, size=3)
    model = lemma_model(["#a0 . #a1 . e0"], 3)
    shapes = [
        (0, ForallPred("X", 0, implies(Atom("X"), Top(), Atom("X")))),
        (1, ForallPred("X", 0, implies(Top(), Atom("X"), Atom("X")))),
        (2, implies(Top(), Top(), Bot())),
    ]
    for value, shape in shapes:
        same = sem_eq(boolean(numeral(value)), shape, model)
        _expect(booleans, f"bool({value})", same, "falsity differs from the expected shape")
    return [equations, voting, disjoint, booleans]


# Duality


_STUCK_PROCESSES = ["#a0 * e0", "#a1 * e0", "#a0 * #a1 . e0", r"\x.x * e0"]


def duality_suite(seed: int, samples: int) -> List[CheckReport]:
    rng = random.Random(seed)
    roundtrip = _report("duality-roundtrip", seed, samples=samples)
    axioms = _report("closure-axioms", seed, samples=samples)
    for _ in range(samples):
        size = rng.randint(1, len(_STUCK_PROCESSES))
        world = validate_world(
            FiniteWorld(tuple(parse_process(p) for p in _STUCK_PROCESSES[:size])), DETERMINISTIC
        )
        chosen = sorted(mask for mask in range(1 << size) if rng.random() < 0.5)
        structure = [Pole(world.members(mask), mask) for mask in chosen]
        recovered = sorted(p.mask for p in poles_of(relation_of(structure, world), world))
        _expect(roundtrip, f"world {size} poles {chosen}", recovered == chosen, f"recovered {recovered}")

        pairs = frozenset((rng.randrange(1 << size), rng.randrange(1 << size)) for _ in range(2))
        report = check_axioms(closure(FiniteRelation(world, pairs), world), world)
        _expect(axioms, f"world {size} seed {sorted(pairs)}", report.passed, f"{len(report.violations)} violations")
    return [roundtrip, axioms]


# Voting


_VOTING_WORLDS = [
    ("phi", ["#b0 . #b1 . #b1 . e0", "#b1 . #b0 . #b0 . e0"]),
    ("phi", ["#b1 . #b1 . #b1 . e0"]),
    ("phi", ["#b0 . #b0 . #b1 . e0"]),
    (r"\x.\y.\z.x", ["#b1 . #b0 . #b1 . e0"]),
]
FORK3 = parse_term(r"\f.\x.\y.\z. f x (f y z)")


def voting_suite(seed: int, samples: int) -> List[CheckReport]:
    cfg = GimelConfig(n=2)
    rules = gimel_rules(cfg)
    reports = [check_voting(cfg.phi_instr, cfg.n + 1, rules, seed=seed, count=samples)]
    for text, stacks in _VOTING_WORLDS:
        candidate = cfg.phi_instr if text == "phi" else parse_term(text)
        model = probe_model([candidate], [parse_stack(s) for s in stacks], 2, rules)
        reports.append(check_voting_exhaustive(candidate, cfg.n + 1, model))

    fork = GimelConfig(n=1)
    fork3 = App(FORK3, fork.fork_instr)
    reports.append(
        check_behavior(BehaviorKind.VOTING, fork3, fork_rules(fork), depth_cap=40, seed=seed, count=samples, n=3, k=2)
    )
    lone = _report("voting-needs-n-minus-k", seed)
    sample = VotingSample((BOTTOM, TOP, TOP), Bottom(0), (1, 2))
    got = check_behavior(BehaviorKind.VOTING, cfg.phi_instr, rules, samples=[sample], n=3, k=2)
    _expect(lone, "phi with one premise", got.verdict is Outcome.FAIL, f"verdict {got.verdict.value}")
    reports.append(lone)
    return reports


def gimel_realizers_suite(seed: int, samples: int) -> List[CheckReport]:
    return [check_gimel_realizers(GimelConfig(n=n), seed=seed, count=samples) for n in (1, 2)]


# Consistency


def consistency_suite(seed: int, samples: int, radius: int = 8) -> List[CheckReport]:
    count = max(samples, 200)
    reports = []
    for n in (1, 2):
        base = GimelConfig(n=n, indices=[0, 1])
        search = PoleSearch(gimel_rules(base))
        cover = _report(f"cover-{n}", seed, radius=radius, processes=count)
        antitone = _report(f"content-antitone-{n}", seed, radius=radius, processes=count)
        for i, process in enumerate(random_processes(base, count, max_size=12, seed=seed + n)):
            cfg = config_for(process, base)
            result = cover_check(process, radius, cfg, search)
            _expect(cover, f"process {i}", isinstance(result, CoverPass), f"covered by {result}")
            content = content_r(process, radius, cfg, search)
            ok = content.downward_closed() and frozenset(cfg.indices) not in content
            _expect(antitone, f"process {i}", ok, "content is not downward closed or contains all of I")

        proof_like = _report(f"proof-like-outside-{n}", seed, radius=10, terms=count)
        for i, term in enumerate(random_proof_like(base, count, max_size=10, seed=seed + n)):
            process = Process(term, Bottom(0))
            outside = not isinstance(search.membership(process, 10), In)
            unchanged = all(replace_K(process, k, base) == process for k in powerset(base.indices))
            _expect(proof_like, f"term {i}", outside and unchanged, "proof-like process found in the pole")
        reports.extend([cover, antitone, proof_like])
    return reports


# Parallel or


_MISSED_FAMILY = {"torl": "(⊤, bool(1)) -> bool(1)", "torr": "(bool(1), ⊤) -> bool(1)"}
GUSTAVE_PROJECTION = parse_term(r"\x.\y.\z.x")
_GUSTAVE_TOP_FIRST = "(⊤, bool(0), bool(1)) -> bool(1)"


def parallel_or_suite(seed: int, samples: int) -> List[CheckReport]:
    cfg = GimelConfig(n=2)
    rules = gimel_rules(cfg)
    r_phi = App(por_right(), cfg.phi_instr)
    reports = [check_behavior(BehaviorKind.PARALLEL_OR, r_phi, rules, seed=seed, count=samples)]

    sequential = _report("sequential-or-misses-one-family", seed)
    for name, term, side in (("torl", TORL, BehaviorKind.LEFT_OR), ("torr", TORR, BehaviorKind.RIGHT_OR)):
        report = check_behavior(BehaviorKind.PARALLEL_OR, term, rules, seed=seed, count=samples)
        missed = failed_families(report)
        _expect(sequential, f"{name} parallel-or", missed == [_MISSED_FAMILY[name]], f"failed families {missed}")
        own = check_behavior(side, term, rules, seed=seed, count=samples)
        _expect(sequential, f"{name} {side.value}", own.verdict is Outcome.PASS, "fails its own branch families")
    reports.append(sequential)

    reports.append(check_voting(App(por_left(), r_phi), 3, rules, depth_cap=40, seed=seed, count=samples))

    r_phi = App(gustave_right(), cfg.phi_instr)
    reports.append(check_behavior(BehaviorKind.GUSTAVE, r_phi, rules, depth_cap=40, seed=seed, count=samples))
    projected = _report("projection-misses-gustave", seed)
    missed = failed_families(check_behavior(BehaviorKind.GUSTAVE, GUSTAVE_PROJECTION, rules, seed=seed, count=samples))
    _expect(projected, "x-projection", _GUSTAVE_TOP_FIRST in missed, f"failed families {missed}")
    reports.append(projected)

    model = gustave_model()
    sections = _report("gustave-sections", seed, size=model.size, poles=len(model.poles))
    parts = gustave_sections()
    for first, section in parts:
        _expect(sections, f"first argument {first}", sem_le(gustave(), section, model), "not a consequence")
    _expect(sections, "all sections", sem_eq(gustave(), caps(*(s for _, s in parts)), model), "sections differ")
    return reports


def gustave_model() -> FiniteModel:
    """Size 2, Π₀ long enough for three arguments and a boolean, a few stuck processes for the world."""
    universe = suffix_closure([parse_stack("#a0 . #a1 . #a0 . #a1 . #a0 . e0")])
    world = build_world(
        [parse_process(p) for p in ("#a0 * #a1 . #a0 . #a1 . #a0 . e0", "#a1 * #a0 . e0", "#a0 * e0")],
        DETERMINISTIC,
    )
    return FiniteModel(2, world, stacks=universe)


# Adequacy


_HORN: List[Tuple[str, HornClause, HornTruth, str]] = [
    (
        "x + 0 = x",
        HornClause(("x",), (), Equation(fo("add", FOVar("x"), numeral(0)), FOVar("x"))),
        Holds(),
        "#a0 . #a1 . e0",
    ),
    (
        "x = y -> y = x",
        HornClause(("x", "y"), (Equation(FOVar("x"), FOVar("y")),), Equation(FOVar("y"), FOVar("x"))),
        Holds(),
        "#a0 . #a1 . #a0 . e0",
    ),
    ("0 = 1", HornClause((), (), Equation(numeral(0), numeral(1))), Fails(()), "#a0 . #a1 . e0"),
]


def adequacy_suite(seed: int, samples: int) -> List[CheckReport]:
    rng = random.Random(seed)
    corpus = _report("golden-derivations", seed)
    mutations = _report("mutations-rejected", seed)
    for golden in golden_corpus():
        derivation = golden.derivation
        accepted = isinstance(check_derivation(derivation), Accepted)
        realizer = extract_realizer(derivation)
        model = probe_model([realizer], golden.probes)
        _expect(corpus, golden.name, accepted and realizes(realizer, derivation.formula, model), "not realized")
        mutant = mutate(derivation, rng)
        if mutant is not None:
            _expect(mutations, golden.name, not isinstance(check_derivation(mutant), Accepted), "mutant accepted")

    horn = _report("horn-realizers", seed)
    for name, clause, truth, probe in _HORN:
        realizer = horn_realizer(clause, truth)
        model = probe_model([realizer], [parse_stack(probe)])
        _expect(horn, name, realizes(realizer, horn_target(clause, truth), model), "not realized")
    return [corpus, mutations, horn]


# nat


def _church_applied(term: Term) -> Process:
    return Process(term, push_all((parse_term("#a0"), parse_term("#a1")), Bottom(0)))


def iterate(k: int) -> str:
    """#a0 (#a0 (... #a1)) with k copies of #a0."""
    text = "#a1"
    for _ in range(k):
        text = f"#a0 ({text})"
    return text


def nat_model(realizers: Sequence[Term], stacks: Sequence[str], extra: Sequence[Process]) -> FiniteModel:
    """
    One-element domain over Π₀ from `stacks`; the world is every realizer
    against Π₀ plus `extra`. When #a1 ⋆ e0 is the only process headed by #a1,
    a stack #a0 · #a1 · e0 in ‖nat(n)‖ forces Z = {e0}.
    """
    universe: Tuple[Stack, ...] = suffix_closure(parse_stack(s) for s in stacks)
    seeds = [Process(t, s) for t in realizers for s in universe] + list(extra)
    return FiniteModel(1, build_world(seeds, DETERMINISTIC), stacks=universe)


def church_nat_model(n: int) -> FiniteModel:
    """church(n) against #a0 · #a1 · e0, with the iterates #a0ᵏ #a1 ⋆ e0 that its run goes through."""
    stacks = ["#a0 . #a1 . e0"] + [f"({iterate(k)}) . e0" for k in range(1, n)]
    extra = [parse_process(f"{iterate(k)} * e0") for k in range(max(n, 1) + 1)]
    return nat_model([church(n)], stacks, extra)


def succ_nat_model() -> FiniteModel:
    """CHURCH_SUCC against #a2 · #a0 · #a1 · e0, where #a2 stands for an arbitrary number."""
    extra = [
        Process(CHURCH_SUCC, parse_stack("#a2 . #a0 . #a1 . e0")),
        parse_process("#a1 * e0"),
        parse_process("#a0 #a1 * e0"),
        parse_process("#a0 * (#a0 #a1) . e0"),
    ]
    return nat_model([parse_term("#a2")], ["#a2 . #a0 . #a1 . e0", "#a0 . (#a0 #a1) . e0"], extra)


# ∀Z. ⊤ → Z → Z and ∀Z₀ Z₁. (Z₀ → Z₁) → Z₀ → Z₁
NAT_ZERO_SHAPE = ForallPred("Z", 0, implies(Top(), Atom("Z"), Atom("Z")))
NAT_ONE_SHAPE = ForallPred(
    "Z0", 0, ForallPred("Z1", 0, implies(implies(Atom("Z0"), Atom("Z1")), Atom("Z0"), Atom("Z1")))
)


def _exercised(formula: Formula, model: FiniteModel) -> bool:
    return any(falsity_mask(formula, index, model) for index in range(len(model.poles)))


def nat_suite(seed: int, samples: int) -> List[CheckReport]:
    unrolling = _report("fixpoint-unrolling", seed)
    for text in ("#a0", r"\x.\y.x"):
        psi = parse_term(text)
        y_psi = fixpoint_of(psi)
        expected = Process(psi, push_all((church(0), App(CHURCH_SUCC, y_psi)), Bottom(0)))
        _expect(unrolling, text, reaches(Process(y_psi, Bottom(0)), expected, 10), "did not unroll")

    numerals = _report("church-realizes-nat", seed, size=2)
    for n in (0, 1):
        model = probe_model([church(n)], [parse_stack("#a0 . #a1 . e0")])
        _expect(numerals, f"church({n})", realizes(church(n), nat(numeral(n)), model), "not realized")

    iterated = _report("church-realizes-nat-iterates", seed, size=1)
    for n in range(4):
        model, formula = church_nat_model(n), nat(numeral(n))
        ok = realizes(church(n), formula, model) and _exercised(formula, model)
        _expect(iterated, f"church({n})", ok, "not realized, or ‖nat‖ is empty in every pole")

    stepping = _report("church-succ-realizes-nat-step", seed, size=1)
    model = succ_nat_model()
    for n in range(4):
        formula = implies(nat(numeral(n)), nat(numeral(n + 1)))
        ok = realizes(CHURCH_SUCC, formula, model) and _exercised(formula, model)
        _expect(stepping, f"nat({n}) -> nat({n + 1})", ok, "not realized, or the falsity is empty in every pole")

    shapes = _report("nat-shapes", seed)
    stacks = ["#a0 . #a1 . e0", "#a1 . #a1 . e0"]
    saturating = lemma_model(stacks, 2, default_registry(1))
    ok = sem_eq(nat(ZERO), NAT_ZERO_SHAPE, saturating)
    _expect(shapes, "nat(0) = forall2 Z Top -> Z -> Z", ok, "falsity differs")
    wrapping = lemma_model(stacks, 2)
    _expect(shapes, "Top -> Z -> Z <= nat(0) mod 2", sem_le(NAT_ZERO_SHAPE, nat(ZERO), wrapping), "falsity escapes")
    saturating = lemma_model(["#a0 . #a1 . e0"], 3, default_registry(2))
    ok = sem_eq(nat(numeral(1)), NAT_ONE_SHAPE, saturating)
    _expect(shapes, "nat(1) = forall2 Z0 Z1 (Z0 -> Z1) -> Z0 -> Z1", ok, "falsity differs")

    successor = _report("church-succ-behaviour", seed)
    for n in range(4):
        left = run(_church_applied(apply(CHURCH_SUCC, church(n))), 200).final
        right = run(_church_applied(church(n + 1)), 200).final
        _expect(successor, f"succ church({n})", left == right, "head normal forms differ")
    return [unrolling, numerals, iterated, stepping, shapes, successor]


SUITES: Dict[str, Suite] = {
    "machine": machine_suite,
    "falsity-lemmas": falsity_lemmas_suite,
    "duality": duality_suite,
    "voting": voting_suite,
    "gimel-realizers": gimel_realizers_suite,
    "consistency": consistency_suite,
    "parallel-or": parallel_or_suite,
    "adequacy": adequacy_suite,
    "nat": nat_suite,
}


def run_suite(name: str, seed: int, samples: int) -> Tuple[SuiteResult, List[CheckReport]]:
    if name != "all" and name not in SUITES:
        raise ValueError(f"Unknown suite: {name}, expected one of {', '.join(SUITES)} or all")
    reports: List[CheckReport] = []
    for suite in list(SUITES) if name == "all" else [name]:
        log.info("suite started", suite=suite, seed=seed)
        reports.extend(SUITES[suite](seed, samples))
    result = SuiteResult(suite=name, seed=seed, checks=[r.summary() for r in reports])
    log.info("suite finished", suite=name, passed=result.passed)
    return result, reports
