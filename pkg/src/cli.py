"""
The `lambdac` command line. Reports go to stdout, as text or as one JSON record
per line with `--json`; logs go to stderr.

Exit status: 0 on success, 1 when a check fails, 2 on usage, parse or
configuration errors.
"""
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple

import click
import structlog

from src import settings
from src.krivine.adequacy import Accepted, check_derivation, describe, extract_realizer, parse_derivation
from src.krivine.errors import KrivineError, ParseError
from src.krivine.files import ModelFile, RulesFile, SamplesFile, WorldFile, load_model, read_model
from src.krivine.gimel import GimelConfig, check_gimel_realizers, config_for, content_r, cover_check, gimel_rules
from src.krivine.logic import parse_formula, print_formula, realizes
from src.krivine.machine import Stepped, Stuck, format_outcome, iter_steps
from src.krivine.multieval import DETERMINISTIC, RuleSet, pole_membership, poles_of
from src.krivine.nondet import BehaviorKind, check_behavior, default_samples, sample_of_instance
from src.krivine.reports import (
    CheckReport,
    ContentRecord,
    CoverRecord,
    DerivationRecord,
    Outcome,
    ParsedRecord,
    PoleRecord,
    Record,
    step_record,
    verdict_record,
)
from src.krivine.suites import SUITES, run_suite
from src.krivine.syntax import (
    Bottom,
    Process,
    parse_process,
    parse_stack,
    parse_term,
    print_process,
    print_stack,
    print_term,
)
from src.log import configure_logging

log = structlog.get_logger(__name__)

CHECK_KINDS = [kind.value for kind in BehaviorKind] + ["gimel-realizers"]

GRAMMAR = """\
Terms, stacks and processes:
  term    := \\x. term | term atom | atom
  atom    := x | cc | #a N | #b N | ( term )
  stack   := e N | term . stack
  process := term * stack
A bare term runs against e0. See docs/formats.md for formulas."""


class LambdacGroup(click.Group):
    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.message = f"{e.message}\n\n{GRAMMAR}"
            raise
        except (KrivineError, ValueError) as e:
            click.echo(f"Error: {e}", err=True)
            raise click.exceptions.Exit(2)


def _text(value: str) -> str:
    """`@path` reads the argument from a file."""
    if value.startswith("@"):
        return Path(value[1:]).read_text().strip()
    return value


def _process(value: str) -> Process:
    """A process literal, or a bare term run against e0."""
    text = _text(value)
    try:
        return parse_process(text)
    except ParseError:
        if "*" in text:
            raise
    return Process(parse_term(text), Bottom(0))


def _rules(gimel: Optional[int], rules_file: Optional[str]) -> Tuple[Optional[GimelConfig], RuleSet]:
    if rules_file is not None:
        return read_model(rules_file, RulesFile).resolve()
    if gimel is not None:
        cfg = GimelConfig(n=gimel)
        return cfg, gimel_rules(cfg)
    return None, DETERMINISTIC


def _gimel_config(n: int, config_file: Optional[str]) -> GimelConfig:
    if config_file is not None:
        return read_model(config_file, GimelConfig)
    return GimelConfig(n=n)


def _emit(ctx: click.Context, record: Record, text: str) -> None:
    click.echo(record.model_dump_json() if ctx.obj["json"] else text)


def _emit_report(ctx: click.Context, report: CheckReport) -> None:
    if ctx.obj["json"]:
        for instance in report.instances:
            click.echo(instance.model_dump_json())
        click.echo(report.summary().model_dump_json())
        return
    for instance in report.instances:
        line = f"{instance.index:>4} {instance.outcome.value:<7} {instance.instance}"
        if instance.depth is not None:
            line += f"  depth={instance.depth}"
        if instance.detail:
            line += f"  ({instance.detail})"
        if instance.replay:
            line += f"\n     replay: {instance.replay}"
        click.echo(line)
    summary = report.summary()
    click.echo(
        f"{summary.check}: {summary.verdict.value.upper()} "
        f"pass={summary.passed} fail={summary.failed} unknown={summary.unknown} seed={summary.seed}"
    )


@click.group(cls=LambdacGroup, invoke_without_command=False)
@click.option("-v", "--verbose", count=True, help="Log to stderr: -v for info, -vv for debug.")
@click.option("--seed", type=int, default=settings.DEFAULT_SEED, show_default=True, help="Seed for every sampler.")
@click.option("--json", "as_json", is_flag=True, help="Emit one JSON record per line.")
@click.pass_context
def app(ctx: click.Context, verbose: int, seed: int, as_json: bool) -> None:
    """λc machine, classical realizability and nondeterminism toolkit."""
    configure_logging(verbose)
    ctx.ensure_object(dict)
    ctx.obj.update(seed=seed, json=as_json)
    log.info("seeded", seed=seed)


@app.command(name="parse")
@click.argument("kind", type=click.Choice(["term", "stack", "process", "formula"]))
@click.argument("text")
@click.pass_context
def parse(ctx: click.Context, kind: str, text: str) -> None:
    """Parse TEXT and print it back in canonical form."""
    source = _text(text)
    match kind:
        case "term":
            printed = print_term(parse_term(source))
        case "stack":
            printed = print_stack(parse_stack(source))
        case "process":
            printed = print_process(parse_process(source))
        case _:
            printed = print_formula(parse_formula(source))
    _emit(ctx, ParsedRecord(kind=kind, text=printed), printed)


@app.command(name="run")
@click.argument("process")
@click.option("--fuel", type=int, default=settings.DEFAULT_FUEL, show_default=True)
@click.pass_context
def run(ctx: click.Context, process: str, fuel: int) -> None:
    """Run PROCESS (or a term against e0) until it is stuck or out of fuel."""
    initial = _process(process)
    if not ctx.obj["json"]:
        click.echo(f"start | {print_process(initial).replace(' * ', ' | ')}")
    used = 0
    stuck = False
    # Steps are written as they happen; long traces never accumulate in memory.
    for index, outcome in enumerate(iter_steps(initial, fuel)):
        _emit(ctx, step_record(index, outcome), format_outcome(outcome))
        used += isinstance(outcome, Stepped)
        stuck = isinstance(outcome, Stuck)
    if not ctx.obj["json"]:
        click.echo(f"{'stuck' if stuck else 'exhausted'} after {used} steps")


@app.command(name="step")
@click.argument("process")
@click.option("--fuel", type=click.IntRange(min=1), default=1, show_default=True, help="Steps taken between prompts.")
@click.pass_context
def step_command(ctx: click.Context, process: str, fuel: int) -> None:
    """Step PROCESS interactively, FUEL steps at a time."""
    current = _process(process)
    index = 0
    click.echo(print_process(current))
    while True:
        last = None
        for last in iter_steps(current, fuel):
            if isinstance(last, Stuck):
                break
            _emit(ctx, step_record(index, last), format_outcome(last))
            index += 1
            current = last.next
        if isinstance(last, Stuck):
            click.echo(f"stuck: {last.reason.value}")
            return
        if not click.confirm("continue", default=True):
            return


@app.command(name="pole-member")
@click.argument("process")
@click.option("--gimel", type=int, default=None, help="Use the gimel rules for this n.")
@click.option("--rules", "rules_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--depth", type=int, default=settings.DEPTH_CAP, show_default=True)
@click.option("--tree", is_flag=True, help="Print the justification tree.")
@click.pass_context
def pole_member(
    ctx: click.Context, process: str, gimel: Optional[int], rules_file: Optional[str], depth: int, tree: bool
) -> None:
    """Search for PROCESS in the least pole of the rules."""
    _, rules = _rules(gimel, rules_file)
    _verdict(ctx, process, rules, depth, tree)


def _verdict(ctx: click.Context, process: str, rules: RuleSet, depth: int, tree: bool) -> None:
    target = _process(process)
    verdict = pole_membership(rules, target, depth)
    record = verdict_record(print_process(target), verdict, depth, tree)
    if ctx.obj["json"]:
        click.echo(record.model_dump_json())
        return
    click.echo(f"IN {record.depth}" if record.verdict is Outcome.PASS else f"UNKNOWN {depth}")
    if tree and record.justification is not None:
        _echo_tree(record.justification, 1)


def _echo_tree(node: dict, indent: int) -> None:
    click.echo(f"{'  ' * indent}{node['process']}  [{node['rule']}]")
    for child in node["children"]:
        _echo_tree(child, indent + 1)


@app.command(name="enumerate-poles")
@click.argument("world_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def enumerate_poles(ctx: click.Context, world_file: str) -> None:
    """Every pole of the world file's rules over its world."""
    world, rules = read_model(world_file, WorldFile).load()
    for index, pole in enumerate(poles_of(rules, world)):
        members = [print_process(p) for p in world.ordered(pole.mask)]
        _emit(ctx, PoleRecord(index=index, members=members), f"{index}: {{{', '.join(members)}}}")


@app.command(name="check")
@click.argument("kind", type=click.Choice(CHECK_KINDS))
@click.argument("candidate", required=False)
@click.option("--gimel", type=int, default=None, help="Use the gimel rules for this n.")
@click.option("--rules", "rules_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--samples", "samples_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--count", type=int, default=settings.DEFAULT_SAMPLES, show_default=True)
@click.option("--depth-cap", type=int, default=settings.DEPTH_CAP, show_default=True)
@click.option("--slack", type=int, default=settings.VOTING_SLACK, show_default=True)
@click.option("-n", "arity", type=int, default=3, show_default=True, help="Arguments of a voting instruction.")
@click.option("-k", "dropped", type=int, default=1, show_default=True, help="Arguments a voting instruction may drop.")
@click.option("--instance", type=int, default=None, help="Re-run one instance of a previous report.")
@click.pass_context
def check(
    ctx: click.Context,
    kind: str,
    candidate: Optional[str],
    gimel: Optional[int],
    rules_file: Optional[str],
    samples_file: Optional[str],
    count: int,
    depth_cap: int,
    slack: int,
    arity: int,
    dropped: int,
    instance: Optional[int],
) -> None:
    """Check CANDIDATE against a behavioral specification."""
    seed = ctx.obj["seed"]
    if kind == "gimel-realizers":
        report = check_gimel_realizers(GimelConfig(n=gimel or 2), depth_cap, slack, seed, count)
        command = f"lambdac --seed {seed} check gimel-realizers --gimel {gimel or 2} --count {count}"
        _finish_check(ctx, report.with_replay(command))
        return
    if candidate is None:
        raise click.UsageError(f"check {kind} needs a candidate term")

    behavior = BehaviorKind(kind)
    term = parse_term(_text(candidate))
    _, rules = _rules(gimel, rules_file)
    if samples_file is not None:
        samples: List[object] = read_model(samples_file, SamplesFile).samples()
    else:
        samples = default_samples(behavior, count, seed, arity, dropped)
    if instance is not None:
        position = sample_of_instance(behavior, instance)
        if not 0 <= position < len(samples):
            raise click.BadParameter(f"no instance {instance} in {len(samples)} samples", param_hint="--instance")
        samples = [samples[position]]

    report = check_behavior(behavior, term, rules, samples, depth_cap, slack, seed, count, arity, dropped)
    options = [f"--depth-cap {depth_cap}", f"--slack {slack}", f"--count {count}", f"-n {arity}", f"-k {dropped}"]
    if gimel is not None:
        options.append(f"--gimel {gimel}")
    if rules_file is not None:
        options.append(f"--rules {rules_file}")
    if samples_file is not None:
        options.append(f"--samples {samples_file}")
    command = f"lambdac --seed {seed} check {kind} '{candidate}' {' '.join(options)}"
    _finish_check(ctx, report if instance is not None else report.with_replay(command))


def _finish_check(ctx: click.Context, report: CheckReport) -> None:
    _emit_report(ctx, report)
    if report.verdict is Outcome.FAIL:
        ctx.exit(1)


@app.command(name="check-derivation")
@click.argument("derivation_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--model", "model_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--show", is_flag=True, help="Print the derivation tree.")
@click.pass_context
def check_derivation_command(ctx: click.Context, derivation_file: str, model_file: Optional[str], show: bool) -> None:
    """Check a derivation; with --model, also check that its realizer realizes the conclusion."""
    derivation = parse_derivation(Path(derivation_file).read_text())
    if show and not ctx.obj["json"]:
        for line in describe(derivation):
            click.echo(line)
    verdict = check_derivation(derivation)
    if not isinstance(verdict, Accepted):
        _emit(ctx, DerivationRecord(verdict=Outcome.FAIL, reason=verdict.describe()), f"REJECTED {verdict.describe()}")
        ctx.exit(1)

    realizer = extract_realizer(derivation)
    realized = None
    if model_file is not None:
        model = load_model(read_model(model_file, ModelFile), [realizer])
        realized = realizes(realizer, derivation.formula, model)
    record = DerivationRecord(
        verdict=Outcome.PASS if realized is not False else Outcome.FAIL, realizer=print_term(realizer), realized=realized
    )
    text = f"ACCEPTED realizer={record.realizer}"
    if realized is not None:
        text += f" realized={'yes' if realized else 'no'}"
    _emit(ctx, record, text)
    if realized is False:
        ctx.exit(1)


@app.command(name="verify")
@click.argument("suite", type=click.Choice(list(SUITES) + ["all"]))
@click.option("--samples", type=int, default=settings.DEFAULT_SAMPLES, show_default=True)
@click.pass_context
def verify(ctx: click.Context, suite: str, samples: int) -> None:
    """Run a verification suite."""
    seed = ctx.obj["seed"]
    result, reports = run_suite(suite, seed, samples)
    for report in reports:
        for failure in report.failures:
            failure.replay = f"lambdac --seed {seed} verify {suite} --samples {samples}"
        if ctx.obj["json"]:
            _emit_report(ctx, report)
        else:
            summary = report.summary()
            click.echo(
                f"{summary.check:<36} {summary.verdict.value.upper():<8} "
                f"pass={summary.passed} fail={summary.failed} unknown={summary.unknown}"
            )
            for failure in report.failures:
                click.echo(f"    {failure.instance}: {failure.detail}\n    replay: {failure.replay}")
    _emit(ctx, result, f"{suite}: {'PASS' if result.passed else 'FAIL'} seed={seed}")
    if not result.passed:
        ctx.exit(1)


@app.group(name="gimel")
@click.option("-n", "n", type=int, default=2, show_default=True)
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.pass_context
def gimel(ctx: click.Context, n: int, config_file: Optional[str]) -> None:
    """The φ/χ/⊤̄/⊥̄/γ construction."""
    ctx.obj["gimel"] = _gimel_config(n, config_file)


def _indices(cfg: GimelConfig, process: Process, indices: Sequence[int]) -> GimelConfig:
    return cfg.with_indices(indices) if indices else config_for(process, cfg)


@gimel.command(name="member")
@click.argument("process")
@click.option("--depth", type=int, default=settings.DEPTH_CAP, show_default=True)
@click.option("--tree", is_flag=True)
@click.pass_context
def gimel_member(ctx: click.Context, process: str, depth: int, tree: bool) -> None:
    """Search for PROCESS in the least pole of the gimel rules."""
    _verdict(ctx, process, gimel_rules(ctx.obj["gimel"]), depth, tree)


@gimel.command(name="content")
@click.argument("process")
@click.option("--radius", type=int, default=8, show_default=True)
@click.option("--index", "indices", type=int, multiple=True, help="Members of I; default: occurring plus n fresh.")
@click.pass_context
def gimel_content(ctx: click.Context, process: str, radius: int, indices: Tuple[int, ...]) -> None:
    """The sets K for which PROCESS[K] is in the least pole within RADIUS."""
    target = _process(process)
    cfg = _indices(ctx.obj["gimel"], target, indices)
    content = content_r(target, radius, cfg)
    members = sorted((sorted(k) for k in content.members), key=lambda k: (len(k), k))
    record = ContentRecord(
        process=print_process(target),
        radius=radius,
        indices=sorted(cfg.indices),
        members=members,
        maximal=[sorted(k) for k in content.maximal()],
    )
    lines = [f"I = {record.indices}"] + [str(k) for k in members]
    _emit(ctx, record, "\n".join(lines))


@gimel.command(name="cover-check")
@click.argument("process")
@click.option("--radius", type=int, default=8, show_default=True)
@click.option("--index", "indices", type=int, multiple=True, help="Members of I; default: occurring plus n fresh.")
@click.pass_context
def gimel_cover_check(ctx: click.Context, process: str, radius: int, indices: Tuple[int, ...]) -> None:
    """Whether n members of the content of PROCESS can cover I."""
    target = _process(process)
    cfg = _indices(ctx.obj["gimel"], target, indices)
    result = cover_check(target, radius, cfg)
    cover = getattr(result, "cover", None)
    record = CoverRecord(
        process=print_process(target),
        radius=radius,
        verdict=Outcome.FAIL if cover is not None else Outcome.PASS,
        cover=[sorted(k) for k in cover] if cover is not None else None,
    )
    _emit(ctx, record, f"PASS radius={radius}" if cover is None else f"FAIL radius={radius} cover={record.cover}")
    if cover is not None:
        ctx.exit(1)
